#pragma once

// Command-line driver. Subcommands cover the whole pipeline:
//   build           contract a block-network layout into a stabilizer state
//   graphify        convert the state to a graph state + conversion record
//   optimize        search the local-complementation orbit for a small graph
//   extract         logical operators of a bulk/boundary partitioned graph
//   encode          synthesize the encoding circuit
//   decode-partial  synthesize the partial decoder for a bulk region
//   verify          seeded self-check suites against the dense oracle
//   fidelity        multiplicative fidelity estimate with error propagation
// All outputs are deterministic; every command exits 0 only on success.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "holo/circuit_synth.hpp"
#include "holo/contraction.hpp"
#include "holo/graph_code.hpp"
#include "holo/graphification.hpp"
#include "holo/happy_network.hpp"
#include "holo/lc_search.hpp"
#include "holo/oracle.hpp"
#include "holo/random_states.hpp"
#include "holo/symplectic.hpp"

namespace holo::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw error("failed writing '" + path + "'");
}

inline nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw error("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
  write_file(path, j.dump(2) + "\n");
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// "value:delta" -> value with symmetric error.
inline ValueWithError parse_value_error(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw error("expected value:delta, got '" + text + "'");
  std::size_t used = 0;
  ValueWithError v;
  v.value = std::stod(text.substr(0, colon), &used);
  if (used != colon) throw error("bad value in '" + text + "'");
  const std::string delta = text.substr(colon + 1);
  v.error = std::stod(delta, &used);
  if (used != delta.size()) throw error("bad delta in '" + text + "'");
  return v;
}

// Comma-separated vertex list; each token is a vertex name or an index.
inline std::vector<std::size_t> parse_vertex_list(const std::string& text, const GraphState& g) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    bool numeric = !token.empty();
    for (char ch : token)
      if (!std::isdigit(static_cast<unsigned char>(ch))) numeric = false;
    if (numeric) {
      const std::size_t v = std::stoull(token);
      if (v >= g.n) throw error("vertex index " + token + " out of range");
      out.push_back(v);
      continue;
    }
    const auto it = std::find(g.names.begin(), g.names.end(), token);
    if (it == g.names.end()) throw error("unknown vertex name '" + token + "'");
    out.push_back(static_cast<std::size_t>(it - g.names.begin()));
  }
  if (out.empty()) throw error("empty vertex list");
  return out;
}

inline GraphState graph_from_bundle(const nlohmann::json& j) {
  GraphState g = graph_from_json(j);
  return g;
}

inline std::vector<std::size_t> bulk_from_roles(const GraphState& g) {
  std::vector<std::size_t> bulk;
  for (std::size_t v = 0; v < g.n; ++v)
    if (g.roles[v] != VertexRole::Boundary) bulk.push_back(v);
  return bulk;
}

}  // namespace detail

// ---- subcommand implementations ----

struct BuildArgs {
  std::string layout;
  std::string out;
};

inline int cmd_build(const BuildArgs& a, std::ostream& out) {
  NetworkLayout layout;
  if (a.layout == "ame6" || a.layout == "happy12" || a.layout == "happy36")
    layout = preset_layout(a.layout);
  else
    layout = layout_from_json(detail::read_json(a.layout));
  const CheckMatrix check = build_network(layout);
  nlohmann::json j;
  j["version"] = 1;
  j["kind"] = "network_state";
  j["check"] = check_to_json(check);
  j["names"] = layout.names;
  nlohmann::json roles = nlohmann::json::array();
  for (VertexRole role : layout.roles) roles.push_back(role_name(role));
  j["roles"] = roles;
  j["embedding"] = layout.embedding;
  j["layout"] = layout_to_json(layout);
  detail::write_json(a.out, j);
  out << "built " << check.qubits << "-qubit state (" << check.rows.size() << " generators) -> " << a.out
      << "\n";
  return 0;
}

struct GraphifyArgs {
  std::string in;
  std::string out;
  std::string record;
};

inline int cmd_graphify(const GraphifyArgs& a, std::ostream& out) {
  const nlohmann::json bundle = detail::read_json(a.in);
  if (bundle.value("kind", "") != "network_state") throw error("input is not a build output");
  const CheckMatrix check = check_from_json(bundle.at("check"));
  auto [graph, record] = to_graph_state(check);
  graph.names = bundle.at("names").get<std::vector<std::string>>();
  graph.roles.clear();
  for (const auto& role : bundle.at("roles")) graph.roles.push_back(role_from_name(role.get<std::string>()));
  graph.embedding = bundle.value("embedding", std::vector<std::size_t>{});
  if (graph.names.size() != graph.n || graph.roles.size() != graph.n)
    throw error("bundle names/roles do not match the state size");
  if (!verify_conversion(check, graph, record)) throw error("internal: conversion failed verification");
  if (detail::ends_with(a.out, ".dot")) {
    detail::write_file(a.out, to_dot(graph));
  } else {
    nlohmann::json j = graph_to_json(graph);
    j["record"] = record_to_json(record);
    if (bundle.contains("layout")) j["layout"] = bundle.at("layout");
    detail::write_json(a.out, j);
  }
  if (!a.record.empty()) detail::write_json(a.record, record_to_json(record));
  out << "graph with " << graph.edge_count() << " edges (H on " << record.hadamard_set.size() << ", Z on "
      << record.z_set.size() << " qubits) -> " << a.out << "\n";
  return 0;
}

struct OptimizeArgs {
  std::string in;
  std::string out;
  std::string witness;
  std::string embedding = "circular";
  std::size_t budget = 20000;
};

inline int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  if (a.embedding != "circular") throw error("unsupported embedding '" + a.embedding + "'");
  const nlohmann::json bundle = detail::read_json(a.in);
  const GraphState start = detail::graph_from_bundle(bundle);
  const MinimizeResult best = minimize_edges(start, a.budget);
  nlohmann::json j = graph_to_json(best.graph);
  if (bundle.contains("record")) j["record"] = bundle.at("record");
  if (bundle.contains("layout")) j["layout"] = bundle.at("layout");
  j["optimize"] = {{"budget", a.budget},
                   {"visited", best.visited},
                   {"truncated", best.truncated},
                   {"moves", best.moves},
                   {"edges", best.graph.edge_count()},
                   {"max_chord", max_chord(best.graph)},
                   {"center_crossings", center_crossing_count(best.graph)}};
  detail::write_json(a.out, j);
  if (!a.witness.empty()) detail::write_file(a.witness, to_text(witness_from_moves(start, best.moves)));
  out << "minimized to " << best.graph.edge_count() << " edges (max chord " << max_chord(best.graph)
      << ", " << center_crossing_count(best.graph) << " center crossings, " << best.visited
      << " graphs visited" << (best.truncated ? ", budget exhausted" : "") << ") -> " << a.out << "\n";
  return 0;
}

struct ExtractArgs {
  std::string graph;
  std::string bulk;
  std::string out;
  bool reduce = false;
};

inline int cmd_extract(const ExtractArgs& a, std::ostream& out) {
  const nlohmann::json bundle = detail::read_json(a.graph);
  const GraphState g = detail::graph_from_bundle(bundle);
  const std::vector<std::size_t> bulk =
      a.bulk.empty() ? detail::bulk_from_roles(g) : detail::parse_vertex_list(a.bulk, g);
  const GraphCode code = partition(g, bulk);
  LogicalSet set = extract_logicals(code);
  bool exhaustive = true;
  if (a.reduce) {
    ReducedLogicalSet reduced = reduce_weight(set);
    set = std::move(reduced.set);
    exhaustive = reduced.exhaustive;
  }
  const std::string problem = logical_set_problem(set);
  if (!problem.empty()) throw error("extracted logicals fail validation: " + problem);
  detail::write_file(a.out, to_text(set));
  out << "extracted " << set.k << " logical qubit(s) on " << set.n << " physical qubits";
  if (a.reduce) out << (exhaustive ? " (weights reduced exhaustively)" : " (weights reduced greedily)");
  out << " -> " << a.out << "\n";
  return 0;
}

struct EncodeArgs {
  std::string code;
  std::string out;
};

inline int cmd_encode(const EncodeArgs& a, std::ostream& out) {
  const nlohmann::json bundle = detail::read_json(a.code);
  const GraphState g = detail::graph_from_bundle(bundle);
  const GraphCode code = partition(g, detail::bulk_from_roles(g));
  const LogicalSet set = extract_logicals(code);
  const CliffordCircuit enc = synthesize_encoder(code, set);
  detail::write_file(a.out, to_text(enc));
  out << "encoder with " << enc.gates.size() << " gates on " << enc.n << " qubits -> " << a.out << "\n";
  return 0;
}

struct DecodePartialArgs {
  std::string full;
  std::string region;
  std::string out;
};

inline int cmd_decode_partial(const DecodePartialArgs& a, std::ostream& out) {
  const nlohmann::json bundle = detail::read_json(a.full);
  if (!bundle.contains("layout") || !bundle.contains("record"))
    throw error("input must carry 'layout' and 'record' (produce it with build + graphify)");
  const NetworkLayout layout = layout_from_json(bundle.at("layout"));
  const ConversionRecord full_rec = record_from_json(bundle.at("record"));
  const RegionSpec region = region_from_json(detail::read_json(a.region));
  const SubNetwork sub = region_sub_network(layout, region);
  const CheckMatrix sub_check = build_network(sub.layout);
  auto [sub_graph, sub_rec] = to_graph_state(sub_check);
  sub_graph.names = sub.layout.names;
  sub_graph.roles = sub.layout.roles;
  sub_graph.embedding = sub.layout.embedding;
  std::vector<std::size_t> bulk(sub.bulk_count);
  for (std::size_t i = 0; i < sub.bulk_count; ++i) bulk[i] = i;
  const GraphCode sub_code = partition(sub_graph, bulk);
  const LogicalSet sub_set = extract_logicals(sub_code);
  const CliffordCircuit dec =
      synthesize_partial_decoder(sub_code, sub_set, full_rec, sub_rec, sub.full_vertex_of);
  detail::write_file(a.out, to_text(dec));
  out << "partial decoder with " << dec.gates.size() << " gates on " << dec.n << " qubits ("
      << sub.bulk_count << " recovered, " << sub_code.n() << " boundary) -> " << a.out << "\n";
  return 0;
}

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 1;
  std::size_t trials = 50;
};

inline bool suite_roundtrip(const VerifyArgs& a, std::ostream& out) {
  std::mt19937_64 rng(a.seed);
  for (std::size_t trial = 0; trial < a.trials; ++trial) {
    const std::size_t n = 2 + uniform_below(rng, 7);  // 2..8 qubits
    const CheckMatrix c = random_stabilizer_check(rng, n, /*real_only=*/true);
    const auto [graph, record] = to_graph_state(c);
    if (!verify_conversion(c, graph, record)) {
      out << "suite roundtrip: FAIL (conversion record rejected at trial " << trial << ")\n";
      return false;
    }
    // Dense cross-check: applying the recorded H and Z layers to the state
    // must give exactly the graph state.
    Statevector psi = from_stabilizer(c);
    for (std::size_t q : record.hadamard_set) apply_single(psi, gate_matrix(GateKind::H), q);
    for (std::size_t q : record.z_set) apply_single(psi, gate_matrix(GateKind::Z), q);
    if (!states_equal(psi, graph_vector(graph))) {
      out << "suite roundtrip: FAIL (dense mismatch at trial " << trial << ")\n";
      return false;
    }
  }
  out << "suite roundtrip: PASS (" << a.trials << " trials)\n";
  return true;
}

inline bool suite_recovery(const VerifyArgs& a, std::ostream& out) {
  const NetworkLayout layout = happy12_layout();
  const CheckMatrix check = build_network(layout);
  auto [graph, record] = to_graph_state(check);
  graph.names = layout.names;
  graph.roles = layout.roles;
  graph.embedding = layout.embedding;
  const GraphCode code = partition(graph, {0, 1, 2, 3});
  const LogicalSet set = extract_logicals(code);
  const CliffordCircuit enc = synthesize_encoder(code, set);
  const CliffordCircuit dec = dagger(enc);
  std::mt19937_64 rng(a.seed);
  double worst_forward = 0.0, worst_back = 0.0;
  for (std::size_t trial = 0; trial < a.trials; ++trial) {
    Statevector input(code.k());
    for (auto& v : input.amp)
      v = {2.0 * uniform_double(rng) - 1.0, 2.0 * uniform_double(rng) - 1.0};
    normalize(input);
    Statevector full(code.graph.n);
    full.amp.assign(full.dim(), {0.0, 0.0});
    for (std::size_t b = 0; b < input.dim(); ++b) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < code.k(); ++i)
        if (b & (std::size_t{1} << (code.k() - 1 - i))) idx |= full.bit_of(code.bulk[i]);
      full.amp[idx] = input.amp[b];
    }
    Statevector encoded_full = full;
    run(enc, encoded_full);
    // Factorization: bulk ends in |+>^k, boundary in the reference encoding.
    Statevector expected = kron(plus_state(code.k()), encode_reference(code, input));
    std::vector<std::size_t> order;  // expected qubit i lives at vertex order[i]
    for (std::size_t i = 0; i < code.k(); ++i) order.push_back(code.bulk[i]);
    for (std::size_t t = 0; t < code.n(); ++t) order.push_back(code.boundary[t]);
    Statevector expected_full(code.graph.n);
    expected_full.amp.assign(expected_full.dim(), {0.0, 0.0});
    for (std::size_t idx = 0; idx < expected.dim(); ++idx) {
      std::size_t target = 0;
      for (std::size_t i = 0; i < code.graph.n; ++i)
        if (idx & expected.bit_of(i)) target |= expected_full.bit_of(order[i]);
      expected_full.amp[target] = expected.amp[idx];
    }
    worst_forward = std::max(worst_forward, frobenius_distance(encoded_full, expected_full));
    // Inverse recovery: the daggered encoder maps the reference encoding
    // back to the input with cleared boundary.
    Statevector back = expected_full;
    run(dec, back);
    worst_back = std::max(worst_back, frobenius_distance(back, full));
  }
  const bool ok = worst_forward < 1e-10 && worst_back < 1e-10;
  out << "suite recovery: " << (ok ? "PASS" : "FAIL") << " (" << a.trials << " trials, max deviation "
      << std::scientific << std::setprecision(2) << std::max(worst_forward, worst_back) << std::defaultfloat
      << ")\n";
  return ok;
}

inline bool suite_rt_entropy(const VerifyArgs&, std::ostream& out) {
  const NetworkLayout layout = happy12_layout();
  const CheckMatrix check = build_network(layout);
  auto [graph, record] = to_graph_state(check);
  graph.names = layout.names;
  graph.roles = layout.roles;
  graph.embedding = layout.embedding;
  const GraphCode code = partition(graph, {0, 1, 2, 3});
  // Encode a product bulk input; the entropy of a contiguous boundary region
  // then equals the number of legs on its minimal cut (three for q1..q5).
  const Statevector psi = encode_reference(code, plus_state(4));
  const double s = reduced_entropy(psi, {0, 1, 2, 3, 4});  // boundary qubits 1..5
  const bool ok = std::abs(s - 3.0) < 1e-10;
  out << "suite rt-entropy: " << (ok ? "PASS" : "FAIL") << " (entropy of boundary 1-5 = " << std::fixed
      << std::setprecision(6) << s << std::defaultfloat << ", expected 3.0)\n";
  return ok;
}

inline bool suite_ame(const VerifyArgs&, std::ostream& out) {
  const Statevector psi = graph_vector(ame6_graph());
  std::size_t checked = 0;
  double worst = 0.0;
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = a + 1; b < 6; ++b)
      for (std::size_t c = b + 1; c < 6; ++c) {
        worst = std::max(worst, std::abs(reduced_entropy(psi, {a, b, c}) - 3.0));
        ++checked;
      }
  const bool ok = checked == 20 && worst < 1e-10;
  out << "suite ame: " << (ok ? "PASS" : "FAIL") << " (" << checked
      << " three-qubit subsets, max |S - 3| = " << std::scientific << std::setprecision(2) << worst
      << std::defaultfloat << ")\n";
  return ok;
}

inline int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  bool ok = false;
  if (a.suite == "roundtrip") ok = suite_roundtrip(a, out);
  else if (a.suite == "recovery") ok = suite_recovery(a, out);
  else if (a.suite == "rt-entropy") ok = suite_rt_entropy(a, out);
  else if (a.suite == "ame") ok = suite_ame(a, out);
  else throw error("unknown suite '" + a.suite + "'");
  return ok ? 0 : 1;
}

struct FidelityArgs {
  std::size_t n1 = 0, n2 = 0, nm = 0;
  std::string f1, f2, fm;
};

inline int cmd_fidelity(const FidelityArgs& a, std::ostream& out) {
  std::vector<std::pair<std::size_t, ValueWithError>> factors;
  auto push = [&](std::size_t count, const std::string& text, const char* flag) {
    if (count == 0) return;
    if (text.empty()) throw error(std::string("missing ") + flag + " for a non-zero count");
    factors.push_back({count, detail::parse_value_error(text)});
  };
  push(a.n1, a.f1, "--f1");
  push(a.n2, a.f2, "--f2");
  push(a.nm, a.fm, "--fm");
  if (factors.empty()) throw error("no factors given");
  const ValueWithError f = estimate_fidelity(factors);
  out << std::fixed << std::setprecision(3) << f.value << " ± " << f.error << std::defaultfloat
      << "\n";
  return 0;
}

// ---- dispatch ----

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"holographic stabilizer graph codes: build, analyze, synthesize, verify"};
  app.name("holo");
  app.require_subcommand(1);

  BuildArgs build_args;
  auto* build = app.add_subcommand("build", "contract a block network into a stabilizer state");
  build->add_option("--layout", build_args.layout, "layout JSON file or preset (ame6, happy12, happy36)")
      ->required();
  build->add_option("--out", build_args.out, "output state JSON")->required();

  GraphifyArgs graphify_args;
  auto* graphify = app.add_subcommand("graphify", "convert a state to a graph state + record");
  graphify->add_option("--in", graphify_args.in, "state JSON from build")->required();
  graphify->add_option("--out", graphify_args.out, "output graph (.json or .dot)")->required();
  graphify->add_option("--record", graphify_args.record, "also write the conversion record JSON");

  OptimizeArgs optimize_args;
  auto* optimize = app.add_subcommand("optimize", "minimize edges over the local-complementation orbit");
  optimize->add_option("--in", optimize_args.in, "graph JSON")->required();
  optimize->add_option("--budget", optimize_args.budget, "max best-first expansions");
  optimize->add_option("--embedding", optimize_args.embedding, "chord metric layout (circular)");
  optimize->add_option("--out", optimize_args.out, "optimized graph JSON")->required();
  optimize->add_option("--witness", optimize_args.witness, "also write the witness circuit");

  ExtractArgs extract_args;
  auto* extract = app.add_subcommand("extract", "extract logical operators");
  extract->add_option("--graph", extract_args.graph, "graph JSON")->required();
  extract->add_option("--bulk", extract_args.bulk, "comma-separated bulk vertices (names or indices)");
  extract->add_flag("--reduce-weight", extract_args.reduce, "minimize representative weights");
  extract->add_option("--out", extract_args.out, "output logical set text")->required();

  EncodeArgs encode_args;
  auto* encode = app.add_subcommand("encode", "synthesize the encoding circuit");
  encode->add_option("--code", encode_args.code, "graph JSON with bulk/boundary roles")->required();
  encode->add_option("--out", encode_args.out, "output circuit text")->required();

  DecodePartialArgs decode_args;
  auto* decode = app.add_subcommand("decode-partial", "synthesize a partial decoder for a bulk region");
  decode->add_option("--full", decode_args.full, "graph JSON carrying layout and record")->required();
  decode->add_option("--region", decode_args.region, "region JSON (e_tensors, de_positions)")->required();
  decode->add_option("--out", decode_args.out, "output circuit text")->required();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "run a seeded self-check suite");
  verify->add_option("--suite", verify_args.suite, "roundtrip | recovery | rt-entropy | ame")->required();
  verify->add_option("--seed", verify_args.seed, "random seed");
  verify->add_option("--trials", verify_args.trials, "number of trials");

  FidelityArgs fidelity_args;
  auto* fidelity = app.add_subcommand("fidelity", "multiplicative fidelity estimate");
  fidelity->add_option("--n1", fidelity_args.n1, "count of the first factor");
  fidelity->add_option("--n2", fidelity_args.n2, "count of the second factor");
  fidelity->add_option("--nm", fidelity_args.nm, "count of the third factor");
  fidelity->add_option("--f1", fidelity_args.f1, "first factor as value:delta");
  fidelity->add_option("--f2", fidelity_args.f2, "second factor as value:delta");
  fidelity->add_option("--fm", fidelity_args.fm, "third factor as value:delta");

  std::vector<const char*> argv;
  argv.push_back("holo");
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*build) return cmd_build(build_args, out);
    if (*graphify) return cmd_graphify(graphify_args, out);
    if (*optimize) return cmd_optimize(optimize_args, out);
    if (*extract) return cmd_extract(extract_args, out);
    if (*encode) return cmd_encode(encode_args, out);
    if (*decode) return cmd_decode_partial(decode_args, out);
    if (*verify) return cmd_verify(verify_args, out);
    if (*fidelity) return cmd_fidelity(fidelity_args, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

inline int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace holo::cli
