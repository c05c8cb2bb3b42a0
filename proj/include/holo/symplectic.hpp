#pragma once

// Signed Pauli operators in symplectic GF(2) form and phased check matrices:
// exact sign-tracked products, commutation tests, single-qubit Clifford
// conjugation, row reduction, signed group membership, and serialization.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "holo/bitvec.hpp"
#include "json.hpp"

namespace holo {

// One signed Pauli operator on size() qubits. Letter at qubit q is encoded
// by the (x, z) bit pair: I=(0,0), X=(1,0), Z=(0,1), Y=(1,1).
// sign=false means prefactor +1, sign=true means -1. Imaginary prefactors
// never arise for the operators held here (products that would produce one
// are rejected).
struct PauliRow {
  BitVec x, z;
  bool sign = false;

  PauliRow() = default;
  explicit PauliRow(std::size_t qubits) : x(qubits), z(qubits) {}
  PauliRow(BitVec x_part, BitVec z_part, bool s) : x(std::move(x_part)), z(std::move(z_part)), sign(s) {
    if (x.size() != z.size()) throw error("PauliRow: x/z length mismatch");
  }

  std::size_t size() const { return x.size(); }
  std::size_t weight() const { return (x | z).popcount(); }
  bool is_identity() const { return !x.any() && !z.any(); }

  char letter(std::size_t q) const {
    const bool a = x.get(q), b = z.get(q);
    return a ? (b ? 'Y' : 'X') : (b ? 'Z' : 'I');
  }

  bool operator==(const PauliRow& other) const = default;
};

inline std::string to_string(const PauliRow& row) {
  std::string out;
  out.reserve(row.size() + 1);
  out.push_back(row.sign ? '-' : '+');
  for (std::size_t q = 0; q < row.size(); ++q) out.push_back(row.letter(q));
  return out;
}

inline PauliRow parse_pauli(std::string_view text) {
  if (text.empty()) throw error("parse_pauli: empty string");
  bool sign = false;
  if (text.front() == '+' || text.front() == '-') {
    sign = text.front() == '-';
    text.remove_prefix(1);
  }
  PauliRow row(text.size());
  row.sign = sign;
  for (std::size_t q = 0; q < text.size(); ++q) {
    switch (text[q]) {
      case 'I': break;
      case 'X': row.x.set(q, true); break;
      case 'Z': row.z.set(q, true); break;
      case 'Y': row.x.set(q, true); row.z.set(q, true); break;
      default: throw error(std::string("parse_pauli: invalid letter '") + text[q] + "'");
    }
  }
  return row;
}

inline bool commutes(const PauliRow& a, const PauliRow& b) {
  return !(a.x.parity_and(b.z) ^ a.z.parity_and(b.x));
}

// Exact product a*b with sign tracking. Per qubit, the product of two Pauli
// letters carries a factor i^e with e = +1 for the cyclic pairs XY, YZ, ZX,
// e = -1 for the anticyclic pairs YX, ZY, XZ, and e = 0 otherwise. The
// total i-power must be even (else the product is not a +/-1 signed Pauli),
// and contributes a -1 prefactor exactly when it is 2 mod 4.
inline PauliRow multiply(const PauliRow& a, const PauliRow& b) {
  if (a.size() != b.size()) throw error("multiply: size mismatch");
  const auto& x1 = a.x.words();
  const auto& z1 = a.z.words();
  const auto& x2 = b.x.words();
  const auto& z2 = b.z.words();
  long long e = 0;
  for (std::size_t k = 0; k < x1.size(); ++k) {
    const std::uint64_t cyc = (x1[k] & ~z1[k] & x2[k] & z2[k])   // XY
                            | (x1[k] & z1[k] & ~x2[k] & z2[k])   // YZ
                            | (~x1[k] & z1[k] & x2[k] & ~z2[k]); // ZX
    const std::uint64_t anti = (x1[k] & z1[k] & x2[k] & ~z2[k])  // YX
                             | (~x1[k] & z1[k] & x2[k] & z2[k])  // ZY
                             | (x1[k] & ~z1[k] & ~x2[k] & z2[k]);// XZ
    e += std::popcount(cyc);
    e -= std::popcount(anti);
  }
  if (e & 1) throw error("multiply: anticommuting rows (imaginary prefactor)");
  const bool extra = ((e % 4) + 4) % 4 == 2;
  return PauliRow(a.x ^ b.x, a.z ^ b.z, a.sign ^ b.sign ^ extra);
}

// A list of signed Pauli rows on a common qubit count. When interpreted as a
// stabilizer description the rows are expected to commute pairwise and be
// GF(2)-independent; membership/verification helpers below check what they
// need and throw on violations.
struct CheckMatrix {
  std::size_t qubits = 0;
  std::vector<PauliRow> rows;

  CheckMatrix() = default;
  explicit CheckMatrix(std::size_t m) : qubits(m) {}

  std::size_t row_count() const { return rows.size(); }

  void append(PauliRow row) {
    if (row.size() != qubits) throw error("CheckMatrix::append: size mismatch");
    rows.push_back(std::move(row));
  }

  // rows[target] *= rows[source], sign-exact.
  void mul_into(std::size_t target, std::size_t source) {
    rows[target] = multiply(rows[target], rows[source]);
  }

  bool operator==(const CheckMatrix& other) const = default;
};

// Combined (x|z) GF(2) vector of one row, used for rank/span questions that
// ignore signs.
inline BitVec symplectic_bits(const PauliRow& row) { return row.x.concat(row.z); }

inline std::vector<BitVec> symplectic_bits(const CheckMatrix& mat) {
  std::vector<BitVec> out;
  out.reserve(mat.rows.size());
  for (const auto& row : mat.rows) out.push_back(symplectic_bits(row));
  return out;
}

// Single-qubit Clifford alphabet used for conjugation and witness circuits.
// SqrtX denotes the square root of X with convention SqrtX: Z -> -Y, Y -> Z;
// S is the phase gate diag(1, i) with S: X -> Y, Y -> -X.
enum class SingleGate { H, S, Sdag, X, Y, Z, SqrtX, SqrtXdag };

inline const char* single_gate_name(SingleGate g) {
  switch (g) {
    case SingleGate::H: return "H";
    case SingleGate::S: return "S";
    case SingleGate::Sdag: return "Sdg";
    case SingleGate::X: return "X";
    case SingleGate::Y: return "Y";
    case SingleGate::Z: return "Z";
    case SingleGate::SqrtX: return "SX";
    case SingleGate::SqrtXdag: return "SXdg";
  }
  throw error("single_gate_name: bad gate");
}

// Conjugate row by the gate on one qubit: row -> U row U^dagger.
inline void conjugate_single_clifford(PauliRow& row, SingleGate g, std::size_t qubit) {
  const bool xb = row.x.get(qubit);
  const bool zb = row.z.get(qubit);
  switch (g) {
    case SingleGate::H:
      if (xb && zb) row.sign = !row.sign;  // Y -> -Y
      row.x.set(qubit, zb);
      row.z.set(qubit, xb);
      break;
    case SingleGate::S:
      if (xb && zb) row.sign = !row.sign;  // Y -> -X
      row.z.set(qubit, zb ^ xb);           // X -> Y
      break;
    case SingleGate::Sdag:
      if (xb && !zb) row.sign = !row.sign;  // X -> -Y
      row.z.set(qubit, zb ^ xb);            // Y -> X
      break;
    case SingleGate::X:
      if (zb) row.sign = !row.sign;  // Z -> -Z, Y -> -Y
      break;
    case SingleGate::Y:
      if (xb != zb) row.sign = !row.sign;  // X -> -X, Z -> -Z
      break;
    case SingleGate::Z:
      if (xb) row.sign = !row.sign;  // X -> -X, Y -> -Y
      break;
    case SingleGate::SqrtX:
      if (zb && !xb) row.sign = !row.sign;  // Z -> -Y
      row.x.set(qubit, xb ^ zb);            // Y -> Z
      break;
    case SingleGate::SqrtXdag:
      if (zb && xb) row.sign = !row.sign;  // Y -> -Z
      row.x.set(qubit, xb ^ zb);           // Z -> Y
      break;
  }
}

inline void conjugate_single_clifford(CheckMatrix& mat, SingleGate g, std::size_t qubit) {
  for (auto& row : mat.rows) conjugate_single_clifford(row, g, qubit);
}

// Reduced row echelon form of the X block under the given column order
// (default natural order). Row operations are sign-exact Pauli products, so
// the returned rows generate the same signed group.
inline CheckMatrix row_reduce(CheckMatrix mat, const std::vector<std::size_t>& column_order = {}) {
  std::vector<std::size_t> cols = column_order;
  if (cols.empty()) {
    cols.resize(mat.qubits);
    for (std::size_t c = 0; c < mat.qubits; ++c) cols[c] = c;
  }
  std::size_t r0 = 0;
  for (std::size_t col : cols) {
    if (r0 == mat.rows.size()) break;
    std::size_t pivot = mat.rows.size();
    for (std::size_t r = r0; r < mat.rows.size(); ++r) {
      if (mat.rows[r].x.get(col)) {
        pivot = r;
        break;
      }
    }
    if (pivot == mat.rows.size()) continue;
    std::swap(mat.rows[r0], mat.rows[pivot]);
    for (std::size_t r = 0; r < mat.rows.size(); ++r)
      if (r != r0 && mat.rows[r].x.get(col)) mat.mul_into(r, r0);
    ++r0;
  }
  return mat;
}

// If target's Pauli pattern (x|z, signs ignored) lies in the GF(2) span of
// the generators, returns the sign of the exact product of the combination
// relative to target's sign: false means target itself (sign included) is
// generated, true means its negation is. Returns nullopt when the pattern is
// not in the span.
inline std::optional<bool> sign_in_group(const CheckMatrix& generators, const PauliRow& target) {
  if (target.size() != generators.qubits) throw error("sign_in_group: size mismatch");
  auto combo = gf2_solve(symplectic_bits(generators), symplectic_bits(target));
  if (!combo) return std::nullopt;
  PauliRow prod(generators.qubits);
  for (std::size_t r = 0; r < generators.rows.size(); ++r)
    if (combo->get(r)) prod = multiply(prod, generators.rows[r]);
  if (prod.x != target.x || prod.z != target.z)
    throw error("sign_in_group: internal combination mismatch");
  return prod.sign != target.sign;
}

// True when both matrices generate the same signed stabilizer group.
inline bool same_group(const CheckMatrix& a, const CheckMatrix& b) {
  if (a.qubits != b.qubits || a.rows.size() != b.rows.size()) return false;
  const auto bits_a = symplectic_bits(a);
  if (gf2_rank(bits_a) != a.rows.size()) return false;
  if (gf2_rank(symplectic_bits(b)) != b.rows.size()) return false;
  for (const auto& row : b.rows) {
    auto s = sign_in_group(a, row);
    if (!s || *s) return false;
  }
  return true;
}

// ---- serialization ----

inline std::string to_text(const CheckMatrix& mat) {
  std::string out;
  for (const auto& row : mat.rows) {
    out += to_string(row);
    out.push_back('\n');
  }
  return out;
}

inline CheckMatrix check_from_text(std::string_view text, std::size_t qubits_if_empty = 0) {
  CheckMatrix mat(qubits_if_empty);
  bool first = true;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.empty()) {
      if (start > text.size()) break;
      continue;
    }
    PauliRow row = parse_pauli(line);
    if (first) {
      mat.qubits = row.size();
      first = false;
    }
    mat.append(std::move(row));
    if (start > text.size()) break;
  }
  return mat;
}

inline nlohmann::json check_to_json(const CheckMatrix& mat) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : mat.rows) rows.push_back(to_string(row));
  return nlohmann::json{{"version", 1}, {"qubits", mat.qubits}, {"rows", rows}};
}

inline CheckMatrix check_from_json(const nlohmann::json& j) {
  CheckMatrix mat(j.at("qubits").get<std::size_t>());
  for (const auto& item : j.at("rows")) {
    PauliRow row = parse_pauli(item.get<std::string>());
    if (row.size() != mat.qubits) throw error("check_from_json: row width mismatch");
    mat.append(std::move(row));
  }
  return mat;
}

}  // namespace holo
