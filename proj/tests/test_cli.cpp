#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "momap/cli.hpp"
#include "momap/io.hpp"

namespace fs = std::filesystem;
using momap::io::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

// Runs inside the data directory so that echoed input paths stay relative.
Run run(const std::vector<std::string>& args) {
  struct Cwd {
    fs::path saved = fs::current_path();
    Cwd() { fs::current_path(MOMAP_TEST_DATA_DIR); }
    ~Cwd() { fs::current_path(saved); }
  } cwd;
  std::ostringstream out, err;
  const int code = momap::cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_golden(const std::string& name, const std::string& actual) {
  const fs::path path = fs::path(MOMAP_TEST_GOLDEN_DIR) / (name + ".out");
  if (std::getenv("MOMAP_UPDATE_GOLDEN")) {
    std::ofstream(path) << actual;
    return;
  }
  REQUIRE_MESSAGE(fs::exists(path), "missing golden file " << path);
  CHECK(slurp(path) == actual);
}

void golden(const std::string& name, const std::vector<std::string>& args, int code = 0) {
  CAPTURE(name);
  const Run r = run(args);
  CHECK(r.code == code);
  CHECK(r.err.empty());
  check_golden(name, r.out);
}

Json json_of(const Run& r) { return momap::io::parse_json_text(r.out); }

}  // namespace

TEST_CASE("golden outputs") {
  golden("momentum_ghz3", {"momentum", "ghz3.json"});
  golden("momentum_bosons", {"momentum", "bosons.json"});
  golden("psi_w3", {"psi", "w3.json"});
  golden("polytope_w3", {"polytope", "w3.json"});
  golden("polytope_lambda", {"polytope", "--lambda", "0.5,0.5,0"});
  golden("dim_lambda", {"dim", "--lambda", "0.3,0.4,0.45,0.45"});
  golden("dim_case", {"dim", "--case", "iii", "--qubits", "5", "-k", "2"});
  golden("critical_2", {"critical", "--qubits", "2", "--all"});
  golden("critical_3", {"critical", "--qubits", "3"});
  golden("flow_w3", {"flow", "w3.json"});
  golden("nullcone_ghz3", {"nullcone", "ghz3.json"});
  golden("nullcone_product", {"nullcone", "product3.json"});
  golden("classify3_bisep", {"classify3", "bisep3.json"});
  golden("sample_product", {"polytope-sample", "product3.json", "-n", "3"});
  golden("luequiv_bell", {"luequiv", "bell.json", "bell_singlet.json"});
  golden("luequiv_counterexample", {"luequiv", "--counterexample"});
  golden("ccq_generic", {"ccq", "cc_generic.json"});
  golden("ccq_a_only", {"ccq", "maximally_mixed.json", "--group", "a-only"});
  golden("ccq_scan_4", {"ccq-scan", "--grid", "4"});
  golden("table2", {"table2"});
}

TEST_CASE("results carry the configuration") {
  const Run r = run({"--seed", "7", "--flow-tol", "1e-9", "classify3", "ghz3.json"});
  REQUIRE(r.code == 0);
  const Json j = json_of(r);
  CHECK(j["config"]["seed"] == 7);
  CHECK(j["config"]["tolerances"]["flow_tol"] == 1e-9);
  CHECK(j["config"]["inputs"]["state"] == "ghz3.json");
  CHECK(j["class"] == "GHZ");
}

TEST_CASE("classification through the command line") {
  CHECK(json_of(run({"classify3", "w3.json"}))["class"] == "W");
  CHECK(json_of(run({"classify3", "product3.json"}))["class"] == "Sep");
}

TEST_CASE("file outputs") {
  const fs::path dir = fs::temp_directory_path() / "momap_cli_test";
  fs::create_directories(dir);
  const std::string csv = (dir / "samples.csv").string();
  const Run r = run({"polytope-sample", "w3.json", "-n", "25", "-o", csv});
  REQUIRE(r.code == 0);
  std::ifstream in(csv);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 26);
  CHECK(json_of(r)["samples"] == 25);

  const std::string atlas = (dir / "atlas.json").string();
  REQUIRE(run({"critical", "--qubits", "3", "--json", atlas}).code == 0);
  CHECK(momap::io::read_json_file(atlas)["values"].size() == 4);

  const std::string scan = (dir / "scan.csv").string();
  REQUIRE(run({"ccq-scan", "--grid", "2", "-o", scan}).code == 0);
  CHECK(slurp(scan).rfind("p00,p01,p10,p11,orbit_dim,omega_rank,D,chi\n", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("usage and input errors") {
  CHECK(run({}).code == momap::cli::kUsageError);
  CHECK(run({"frobnicate"}).code == momap::cli::kUsageError);
  CHECK(run({"psi"}).code == momap::cli::kUsageError);
  CHECK(run({"psi", "missing.json"}).code == momap::cli::kUsageError);
  CHECK(run({"critical", "--qubits", "9"}).code == momap::cli::kUsageError);
  CHECK(run({"polytope-sample", "w3.json", "-n", "0"}).code == momap::cli::kUsageError);
  CHECK(run({"luequiv", "bell.json"}).code == momap::cli::kUsageError);
  CHECK(run({"classify3", "bell.json"}).code == momap::cli::kUsageError);
  CHECK(run({"ccq", "not_psd.json"}).code == momap::cli::kUsageError);

  const Run bad = run({"psi", "bad_amplitudes.json"});
  CHECK(bad.code == momap::cli::kUsageError);
  CHECK(bad.err.find("amplitudes[2]") != std::string::npos);
  CHECK(bad.out.empty());

  const Run malformed = run({"--json-errors", "psi", "malformed.json"});
  CHECK(malformed.code == momap::cli::kUsageError);
  const Json e = momap::io::parse_json_text(malformed.err);
  CHECK(e["error"]["kind"] == "input");
  CHECK(e["error"]["message"].get<std::string>().find("line 3") != std::string::npos);
}

TEST_CASE("help") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("polytope-sample") != std::string::npos);
}
