#pragma once

// Packed GF(2) bit vectors and small dense GF(2) linear algebra
// (rank, span membership, solving, inversion with row tracking).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace holo {

// Domain error for invariant violations (malformed inputs, impossible
// requests such as inverting a singular matrix or contracting with zero
// overlap).
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Fixed-length bit vector over GF(2), packed into 64-bit words.
// Bits beyond size() are kept zero so wordwise operations stay exact.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static BitVec unit(std::size_t size, std::size_t index) {
    BitVec v(size);
    v.set(index, true);
    return v;
  }

  static BitVec from_indices(std::size_t size, const std::vector<std::size_t>& ones) {
    BitVec v(size);
    for (std::size_t i : ones) v.set(i, true);
    return v;
  }

  std::size_t size() const { return size_; }

  bool get(std::size_t i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i, bool value) {
    check_index(i);
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }

  void flip(std::size_t i) {
    check_index(i);
    words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
  }

  bool any() const {
    for (std::uint64_t w : words_)
      if (w) return true;
    return false;
  }

  std::size_t popcount() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  BitVec& operator^=(const BitVec& other) {
    check_size(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }

  friend BitVec operator&(BitVec a, const BitVec& b) {
    a.check_size(b);
    for (std::size_t k = 0; k < a.words_.size(); ++k) a.words_[k] &= b.words_[k];
    return a;
  }

  friend BitVec operator|(BitVec a, const BitVec& b) {
    a.check_size(b);
    for (std::size_t k = 0; k < a.words_.size(); ++k) a.words_[k] |= b.words_[k];
    return a;
  }

  // Parity of popcount(*this & other).
  bool parity_and(const BitVec& other) const {
    check_size(other);
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & other.words_[k];
    return std::popcount(acc) & 1;
  }

  bool operator==(const BitVec& other) const = default;

  // Copy with positions i and j removed (subsequent bits shift down).
  BitVec erased(std::size_t i, std::size_t j) const {
    check_index(i);
    check_index(j);
    if (i == j) throw error("BitVec::erased: positions must differ");
    BitVec out(size_ - 2);
    std::size_t at = 0;
    for (std::size_t p = 0; p < size_; ++p) {
      if (p == i || p == j) continue;
      out.set(at++, get(p));
    }
    return out;
  }

  BitVec concat(const BitVec& tail) const {
    BitVec out(size_ + tail.size_);
    for (std::size_t p = 0; p < size_; ++p) out.set(p, get(p));
    for (std::size_t p = 0; p < tail.size_; ++p) out.set(size_ + p, tail.get(p));
    return out;
  }

  // result[i] = get(source[i]); source must list valid positions.
  BitVec permuted(const std::vector<std::size_t>& source) const {
    BitVec out(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) out.set(i, get(source[i]));
    return out;
  }

  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < size_; ++p)
      if (get(p)) out.push_back(p);
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  void check_index(std::size_t i) const {
    if (i >= size_) throw error("BitVec index out of range");
  }
  void check_size(const BitVec& other) const {
    if (size_ != other.size_) throw error("BitVec size mismatch");
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

inline std::size_t gf2_rank(std::vector<BitVec> rows) {
  if (rows.empty()) return 0;
  const std::size_t width = rows[0].size();
  std::size_t r0 = 0;
  for (std::size_t col = 0; col < width && r0 < rows.size(); ++col) {
    std::size_t pivot = rows.size();
    for (std::size_t r = r0; r < rows.size(); ++r) {
      if (rows[r].get(col)) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[r0], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != r0 && rows[r].get(col)) rows[r] ^= rows[r0];
    ++r0;
  }
  return r0;
}

inline bool gf2_in_span(const std::vector<BitVec>& rows, const BitVec& v) {
  std::vector<BitVec> aug = rows;
  aug.push_back(v);
  return gf2_rank(rows) == gf2_rank(std::move(aug));
}

// Express target as a sum of the given rows. Returns the combination as a
// bit vector over row indices, or nullopt when target is outside the span.
inline std::optional<BitVec> gf2_solve(std::vector<BitVec> rows, BitVec target) {
  const std::size_t count = rows.size();
  std::vector<BitVec> track;
  track.reserve(count);
  for (std::size_t r = 0; r < count; ++r) track.push_back(BitVec::unit(count, r));
  const std::size_t width = target.size();
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t r0 = 0;
  for (std::size_t col = 0; col < width && r0 < count; ++col) {
    std::size_t pivot = count;
    for (std::size_t r = r0; r < count; ++r) {
      if (rows[r].get(col)) {
        pivot = r;
        break;
      }
    }
    if (pivot == count) continue;
    std::swap(rows[r0], rows[pivot]);
    std::swap(track[r0], track[pivot]);
    for (std::size_t r = 0; r < count; ++r) {
      if (r != r0 && rows[r].get(col)) {
        rows[r] ^= rows[r0];
        track[r] ^= track[r0];
      }
    }
    pivots.emplace_back(r0, col);
    ++r0;
  }
  BitVec combo(count);
  for (const auto& [row, col] : pivots) {
    if (target.get(col)) {
      target ^= rows[row];
      combo ^= track[row];
    }
  }
  if (target.any()) return std::nullopt;
  return combo;
}

// Inverse of a square GF(2) matrix given as rows; throws when singular.
inline std::vector<BitVec> gf2_invert(const std::vector<BitVec>& rows) {
  const std::size_t n = rows.size();
  std::vector<BitVec> work = rows;
  std::vector<BitVec> inv;
  inv.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (work[r].size() != n) throw error("gf2_invert: matrix must be square");
    inv.push_back(BitVec::unit(n, r));
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = col; r < n; ++r) {
      if (work[r].get(col)) {
        pivot = r;
        break;
      }
    }
    if (pivot == n) throw error("gf2_invert: matrix is singular");
    std::swap(work[col], work[pivot]);
    std::swap(inv[col], inv[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != col && work[r].get(col)) {
        work[r] ^= work[col];
        inv[r] ^= inv[col];
      }
    }
  }
  return inv;
}

}  // namespace holo
