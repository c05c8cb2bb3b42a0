// End-to-end CLI tests, run in process against temporary directories.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "holo/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = holo::cli::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("holo_cli_test_" + std::to_string(++counter));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  REQUIRE(out.good());
}

}  // namespace

TEST_CASE("full pipeline on the four-block ring preset") {
  TempDir dir;
  const std::string state = dir.file("state.json");
  const std::string graph = dir.file("graph.json");
  const std::string record = dir.file("record.json");

  const CliResult built = run({"build", "--layout", "happy12", "--out", state});
  REQUIRE(built.code == 0);
  REQUIRE_THAT(built.out, Catch::Matchers::ContainsSubstring("built 16-qubit state (16 generators)"));

  const CliResult graphed = run({"graphify", "--in", state, "--out", graph, "--record", record});
  REQUIRE(graphed.code == 0);
  REQUIRE_THAT(graphed.out, Catch::Matchers::ContainsSubstring("graph with 54 edges"));
  const auto rec = nlohmann::json::parse(slurp(record));
  REQUIRE(rec.at("hadamard_set") == nlohmann::json::array({8, 14}));
  REQUIRE(rec.at("z_set") == nlohmann::json::array({7, 12}));
  const auto gj = nlohmann::json::parse(slurp(graph));
  REQUIRE(gj.at("vertices") == 16);
  REQUIRE(gj.contains("record"));
  REQUIRE(gj.contains("layout"));

  SECTION("optimize is deterministic and reports metrics") {
    const std::string opt1 = dir.file("opt1.json");
    const std::string opt2 = dir.file("opt2.json");
    const CliResult first = run({"optimize", "--in", graph, "--budget", "200", "--out", opt1});
    REQUIRE(first.code == 0);
    REQUIRE_THAT(first.out, Catch::Matchers::ContainsSubstring("minimized to"));
    const CliResult second = run({"optimize", "--in", graph, "--budget", "200", "--out", opt2});
    REQUIRE(second.code == 0);
    REQUIRE(slurp(opt1) == slurp(opt2));  // byte-identical outputs
    const auto oj = nlohmann::json::parse(slurp(opt1));
    REQUIRE(oj.at("optimize").at("budget") == 200);
    REQUIRE(oj.at("optimize").at("edges").get<std::size_t>() <= 54);
    REQUIRE(oj.at("optimize").at("truncated").is_boolean());
    REQUIRE(oj.contains("record"));  // carried through for later stages
    REQUIRE(oj.contains("layout"));
  }

  SECTION("extract by names equals extract by roles") {
    const std::string by_names = dir.file("by_names.txt");
    const std::string by_roles = dir.file("by_roles.txt");
    const CliResult named = run({"extract", "--graph", graph, "--bulk", "bA,bB,bC,bD", "--out", by_names});
    REQUIRE(named.code == 0);
    REQUIRE_THAT(named.out, Catch::Matchers::ContainsSubstring("extracted 4 logical qubit(s) on 12"));
    REQUIRE(run({"extract", "--graph", graph, "--out", by_roles}).code == 0);
    REQUIRE(slurp(by_names) == slurp(by_roles));
    const holo::LogicalSet set = holo::logical_set_from_text(slurp(by_names));
    REQUIRE(set.n == 12);
    REQUIRE(set.k == 4);
    REQUIRE(holo::logical_set_problem(set).empty());
  }

  SECTION("weight reduction is deterministic and shrinks representatives") {
    const std::string plain = dir.file("plain.txt");
    const std::string red1 = dir.file("red1.txt");
    const std::string red2 = dir.file("red2.txt");
    REQUIRE(run({"extract", "--graph", graph, "--out", plain}).code == 0);
    const CliResult reduced = run({"extract", "--graph", graph, "--reduce-weight", "--out", red1});
    REQUIRE(reduced.code == 0);
    REQUIRE_THAT(reduced.out, Catch::Matchers::ContainsSubstring("reduced exhaustively"));
    REQUIRE(run({"extract", "--graph", graph, "--reduce-weight", "--out", red2}).code == 0);
    REQUIRE(slurp(red1) == slurp(red2));
    const holo::LogicalSet before = holo::logical_set_from_text(slurp(plain));
    const holo::LogicalSet after = holo::logical_set_from_text(slurp(red1));
    for (std::size_t i = 0; i < 4; ++i) {
      REQUIRE(after.logical_z[i].weight() <= before.logical_z[i].weight());
      REQUIRE(after.logical_z[i].weight() == 3);
    }
  }

  SECTION("encode and decode-partial synthesize valid circuits") {
    const std::string enc = dir.file("enc.txt");
    const CliResult encoded = run({"encode", "--code", graph, "--out", enc});
    REQUIRE(encoded.code == 0);
    const holo::CliffordCircuit enc_circuit = holo::circuit_from_text(slurp(enc));
    REQUIRE(enc_circuit.n == 16);
    REQUIRE(enc_circuit.names[0] == "bA");

    const std::string region = dir.file("region.json");
    spit(region, R"({"version":1,"e_tensors":[0,1],"de_positions":[0,1,2,3,4]})");
    const std::string dec = dir.file("dec.txt");
    const CliResult decoded = run({"decode-partial", "--full", graph, "--region", region, "--out", dec});
    REQUIRE(decoded.code == 0);
    REQUIRE_THAT(decoded.out, Catch::Matchers::ContainsSubstring("(5 recovered, 5 boundary)"));
    const holo::CliffordCircuit dec_circuit = holo::circuit_from_text(slurp(dec));
    REQUIRE(dec_circuit.n == 10);
    REQUIRE(dec_circuit.names[5] == "q1");
    // Determinism of the decoder bytes.
    const std::string dec2 = dir.file("dec2.txt");
    REQUIRE(run({"decode-partial", "--full", graph, "--region", region, "--out", dec2}).code == 0);
    REQUIRE(slurp(dec) == slurp(dec2));
  }
}

TEST_CASE("single-block pipeline and dot output") {
  TempDir dir;
  const std::string state = dir.file("state.json");
  const std::string graph = dir.file("graph.json");
  const std::string dot = dir.file("graph.dot");
  REQUIRE(run({"build", "--layout", "ame6", "--out", state}).code == 0);
  const CliResult graphed = run({"graphify", "--in", state, "--out", graph});
  REQUIRE(graphed.code == 0);
  REQUIRE_THAT(graphed.out, Catch::Matchers::ContainsSubstring("graph with 9 edges (H on 0, Z on 0 qubits)"));
  REQUIRE(run({"graphify", "--in", state, "--out", dot}).code == 0);
  REQUIRE_THAT(slurp(dot), Catch::Matchers::StartsWith("graph state {"));
  REQUIRE_THAT(slurp(dot), Catch::Matchers::ContainsSubstring("label=\"q1\""));
}

TEST_CASE("build accepts a layout file") {
  TempDir dir;
  const std::string layout = dir.file("layout.json");
  const std::string state1 = dir.file("state1.json");
  const std::string state2 = dir.file("state2.json");
  spit(layout, holo::layout_to_json(holo::happy12_layout()).dump(2) + "\n");
  REQUIRE(run({"build", "--layout", layout, "--out", state1}).code == 0);
  REQUIRE(run({"build", "--layout", "happy12", "--out", state2}).code == 0);
  REQUIRE(nlohmann::json::parse(slurp(state1)) == nlohmann::json::parse(slurp(state2)));
}

TEST_CASE("verify suites pass") {
  const CliResult roundtrip = run({"verify", "--suite", "roundtrip", "--seed", "7", "--trials", "10"});
  REQUIRE(roundtrip.code == 0);
  REQUIRE_THAT(roundtrip.out, Catch::Matchers::ContainsSubstring("suite roundtrip: PASS"));
  const CliResult recovery = run({"verify", "--suite", "recovery", "--seed", "7", "--trials", "5"});
  REQUIRE(recovery.code == 0);
  REQUIRE_THAT(recovery.out, Catch::Matchers::ContainsSubstring("suite recovery: PASS"));
  const CliResult rt = run({"verify", "--suite", "rt-entropy"});
  REQUIRE(rt.code == 0);
  REQUIRE_THAT(rt.out, Catch::Matchers::ContainsSubstring("suite rt-entropy: PASS"));
  const CliResult ame = run({"verify", "--suite", "ame"});
  REQUIRE(ame.code == 0);
  REQUIRE_THAT(ame.out, Catch::Matchers::ContainsSubstring("suite ame: PASS (20 three-qubit subsets"));
}

TEST_CASE("fidelity prints rounded values with symmetric errors") {
  const CliResult one =
      run({"fidelity", "--n1", "12", "--f1", "0.99994:0.00003", "--n2", "28", "--f2", "0.9981:0.0003"});
  REQUIRE(one.code == 0);
  REQUIRE(one.out == "0.947 ± 0.008\n");
  const CliResult two = run({"fidelity", "--n1", "24", "--f1", "0.99994:0.00003", "--n2", "44", "--f2",
                             "0.9981:0.0003", "--nm", "12", "--fm", "0.9972:0.0005"});
  REQUIRE(two.code == 0);
  REQUIRE(two.out == "0.888 ± 0.013\n");
}

TEST_CASE("cli error paths") {
  TempDir dir;
  // Non-preset layout names are treated as files.
  const CliResult missing = run({"build", "--layout", "happy13", "--out", dir.file("x.json")});
  REQUIRE(missing.code == 1);
  REQUIRE_THAT(missing.err, Catch::Matchers::ContainsSubstring("cannot open"));

  const CliResult nofile = run({"graphify", "--in", dir.file("absent.json"), "--out", dir.file("g.json")});
  REQUIRE(nofile.code == 1);
  REQUIRE_THAT(nofile.err, Catch::Matchers::ContainsSubstring("cannot open"));

  const std::string bogus = dir.file("bogus.json");
  spit(bogus, "{\"foo\": 1}\n");
  const CliResult notbundle = run({"graphify", "--in", bogus, "--out", dir.file("g.json")});
  REQUIRE(notbundle.code == 1);
  REQUIRE_THAT(notbundle.err, Catch::Matchers::ContainsSubstring("not a build output"));

  const CliResult badsuite = run({"verify", "--suite", "everything"});
  REQUIRE(badsuite.code == 1);
  REQUIRE_THAT(badsuite.err, Catch::Matchers::ContainsSubstring("unknown suite"));

  const CliResult badpair = run({"fidelity", "--n1", "2", "--f1", "0.99"});
  REQUIRE(badpair.code == 1);
  REQUIRE_THAT(badpair.err, Catch::Matchers::ContainsSubstring("value:delta"));

  const CliResult nofactors = run({"fidelity"});
  REQUIRE(nofactors.code == 1);
  REQUIRE_THAT(nofactors.err, Catch::Matchers::ContainsSubstring("no factors"));

  REQUIRE(run({}).code != 0);

  // Build a real graph to exercise extract/optimize validation.
  const std::string state = dir.file("state.json");
  const std::string graph = dir.file("graph.json");
  REQUIRE(run({"build", "--layout", "happy12", "--out", state}).code == 0);
  REQUIRE(run({"graphify", "--in", state, "--out", graph}).code == 0);

  const CliResult badname = run({"extract", "--graph", graph, "--bulk", "bogus", "--out", dir.file("l.txt")});
  REQUIRE(badname.code == 1);
  REQUIRE_THAT(badname.err, Catch::Matchers::ContainsSubstring("unknown vertex name"));

  const CliResult badembed =
      run({"optimize", "--in", graph, "--embedding", "square", "--out", dir.file("o.json")});
  REQUIRE(badembed.code == 1);
  REQUIRE_THAT(badembed.err, Catch::Matchers::ContainsSubstring("unsupported embedding"));

  const CliResult badindex = run({"extract", "--graph", graph, "--bulk", "99", "--out", dir.file("l.txt")});
  REQUIRE(badindex.code == 1);
  REQUIRE_THAT(badindex.err, Catch::Matchers::ContainsSubstring("out of range"));
}
