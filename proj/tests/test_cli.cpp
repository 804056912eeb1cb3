#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "qboson/report.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "qboson-cli-tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  fs::path out = work_dir() / ("out" + std::to_string(counter) + ".txt");
  fs::path err = work_dir() / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  std::string cmd = env + (env.empty() ? "" : " ") + QBOSON_CLI_PATH + " " + args + " > " +
                    out.string() + " 2> " + err.string();
  int ret = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(ret) ? WEXITSTATUS(ret) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string data(const std::string& name) {
  return (fs::path(QBOSON_DATA_DIR) / name).string();
}

nlohmann::json without_timings(nlohmann::json j) {
  j.erase("timings_ms");
  return j;
}

}  // namespace

TEST_CASE("dims reports the hilbert table") {
  RunResult r = run_cli("dims " + data("sl2.json") + " --max-degree 4");
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["command"] == "dims");
  CHECK(j["engine_version"] == "1.0.0");
  CHECK(j["parameters"]["max_degree"] == 4);
  auto rows = j["results"]["dims"];
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) CHECK(row["dim"] == 1);

  RunResult a2 = run_cli("dims " + data("a2.json") + " --max-degree 3");
  REQUIRE(a2.code == 0);
  for (const auto& row : a2.json()["results"]["dims"]) {
    auto alpha = row["alpha"].get<std::vector<int>>();
    CHECK(row["dim"].get<int>() == std::min(alpha[0], alpha[1]) + 1);
  }
}

TEST_CASE("degree cap violations exit with code 2") {
  CHECK(run_cli("dims " + data("sl2.json") + " --max-degree 30").code == 2);
  CHECK(run_cli("dims " + data("sl2.json") + " --max-degree 30 --cap 40").code == 0);
  CHECK(run_cli("projector " + data("sl2.json") + " --degree 15").code == 2);
}

TEST_CASE("gram prints the block with rank and kernel") {
  RunResult r = run_cli("gram " + data("a2.json") + " --alpha 2,1");
  REQUIRE(r.code == 0);
  auto g = r.json()["results"]["gram"];
  CHECK(g["rank"] == 2);
  CHECK(g["kernel"].size() == 1);
  CHECK(r.json()["parameters"]["alpha"] == nlohmann::json({2, 1}));
}

TEST_CASE("malformed alpha or wrong arity exit with code 1") {
  CHECK(run_cli("gram " + data("a2.json") + " --alpha x,y").code == 1);
  CHECK(run_cli("gram " + data("a2.json") + " --alpha 2").code == 1);
  CHECK(run_cli("gram " + data("a2.json") + " --alpha -1,2").code == 1);
}

TEST_CASE("projector certifies and reports the element") {
  RunResult r = run_cli("projector " + data("sl2.json") + " --degree 2");
  REQUIRE(r.code == 0);
  auto p = r.json()["results"]["projector"];
  CHECK(p["certificates"]["all_hold"] == true);
  CHECK(p["certificates"]["properties"].size() == 4);
  CHECK(p["element"].size() == 3);
  CHECK(p["truncation"]["level"] == 2);
  CHECK(p["truncation"]["support"] == nlohmann::json({"1"}));
}

TEST_CASE("degenerate projector exits with code 3") {
  RunResult r = run_cli("projector " + data("sl2.json") + " --degree 0");
  CHECK(r.code == 3);
  // the report is still printed for inspection
  CHECK(r.json()["results"]["projector"]["certificates"]["all_hold"] == false);
}

TEST_CASE("projector respects an explicit support list") {
  RunResult r = run_cli("projector " + data("a2.json") + " --degree 1 --support 2");
  REQUIRE(r.code == 0);
  auto p = r.json()["results"]["projector"];
  CHECK(p["truncation"]["support"] == nlohmann::json({"2"}));
  CHECK(p["element"].size() == 2);  // 1 - f2 # e2
  CHECK(run_cli("projector " + data("a2.json") + " --degree 1 --support 9").code == 1);
}

TEST_CASE("output file matches stdout") {
  fs::path out = work_dir() / "report-dims.json";
  RunResult r = run_cli("dims " + data("sl2.json") + " --max-degree 3 --output " + out.string());
  REQUIRE(r.code == 0);
  CHECK(slurp(out) == r.out);
}

TEST_CASE("verify reproduces a stored report") {
  fs::path stored = work_dir() / "proj2.json";
  RunResult first =
      run_cli("projector " + data("sl2.json") + " --degree 2 --output " + stored.string());
  REQUIRE(first.code == 0);

  RunResult again =
      run_cli("projector " + data("sl2.json") + " --degree 2 --verify " + stored.string());
  CHECK(again.code == 0);
  CHECK(again.err.find("reproduced") != std::string::npos);

  // different parameters cannot reproduce the stored run
  RunResult mismatch =
      run_cli("projector " + data("sl2.json") + " --degree 3 --verify " + stored.string());
  CHECK(mismatch.code == 3);

  // a tampered certificate is caught
  auto doc = nlohmann::json::parse(slurp(stored));
  doc["results"]["projector"]["certificates"]["properties"][0]["holds"] = false;
  doc["results"]["projector"]["certificates"]["all_hold"] = false;
  fs::path tampered = work_dir() / "proj2-tampered.json";
  std::ofstream(tampered) << doc.dump(2);
  RunResult caught =
      run_cli("projector " + data("sl2.json") + " --degree 2 --verify " + tampered.string());
  CHECK(caught.code == 3);

  // verifying against a report of a different datum fails
  fs::path other = work_dir() / "proj2-a2.json";
  RunResult a2 =
      run_cli("projector " + data("a2.json") + " --degree 2 --output " + other.string());
  REQUIRE(a2.code == 0);
  RunResult wrong =
      run_cli("projector " + data("sl2.json") + " --degree 2 --verify " + other.string());
  CHECK(wrong.code == 3);
}

TEST_CASE("decompose certifies the reconstruction") {
  RunResult r = run_cli("decompose " + data("sl2.json") + " --module " +
                        data("sl2_verma4.json") + " --truncation 5");
  REQUIRE(r.code == 0);
  auto d = r.json()["results"]["decomposition"];
  CHECK(d["reconstruction_ok"] == true);
  CHECK(d["isomorphism"] == true);
  CHECK(d["gamma_idempotent"] == true);
  CHECK(d["m0_basis"].size() == 1);
  CHECK(d["kappa"]["injective"] == true);
  CHECK(d["kappa"]["surjective"] == true);

  RunResult pair = run_cli("decompose " + data("sl2.json") + " --module " +
                           data("sl2_verma4_pair.json") + " --truncation 5");
  REQUIRE(pair.code == 0);
  CHECK(pair.json()["results"]["decomposition"]["m0_basis"].size() == 2);
}

TEST_CASE("non-integrable truncation exits with code 3") {
  RunResult r = run_cli("decompose " + data("sl2.json") + " --module " +
                        data("sl2_verma4.json") + " --truncation 3");
  CHECK(r.code == 3);
}

TEST_CASE("mismatched module and datum exit with code 1") {
  RunResult r = run_cli("decompose " + data("a2.json") + " --module " +
                        data("sl2_verma4.json") + " --truncation 5");
  CHECK(r.code == 1);
  CHECK(run_cli("decompose " + data("sl2.json") + " --module " + data("a2.json") +
                " --truncation 5")
            .code == 1);
}

TEST_CASE("flk certificate for the small quantum groups") {
  RunResult r5 = run_cli("flk " + data("sl2_flk5.json"));
  REQUIRE(r5.code == 0);
  auto f5 = r5.json()["results"]["flk"];
  CHECK(f5["dim_r"] == 5);
  CHECK(f5["dim_b"] == 25);
  CHECK(f5["bijective"] == true);
  CHECK(f5["structure_digest"] == "0dc99acb7728ca09");

  RunResult r3 = run_cli("flk " + data("sl2_flk3.json"));
  REQUIRE(r3.code == 0);
  CHECK(r3.json()["results"]["flk"]["dim_r"] == 3);

  CHECK(run_cli("flk " + data("sl2.json")).code == 1);
}

TEST_CASE("missing files and bad usage exit with code 1") {
  CHECK(run_cli("dims " + data("no-such-datum.json")).code == 1);
  CHECK(run_cli("").code == 1);
  CHECK(run_cli("bogus " + data("sl2.json")).code == 1);
  CHECK(run_cli("projector " + data("sl2.json")).code == 1);  // --degree missing
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("gram cache keeps reports identical across runs") {
  fs::path cache = work_dir() / "gram-cache";
  fs::create_directories(cache);
  std::string env = "QBOSON_CACHE_DIR=" + cache.string();
  RunResult cold = run_cli("gram " + data("a2.json") + " --alpha 2,2", env);
  REQUIRE(cold.code == 0);
  size_t files = std::distance(fs::directory_iterator(cache), fs::directory_iterator{});
  CHECK(files > 0);
  RunResult warm = run_cli("gram " + data("a2.json") + " --alpha 2,2", env);
  REQUIRE(warm.code == 0);
  CHECK(without_timings(cold.json()) == without_timings(warm.json()));
  RunResult plain = run_cli("gram " + data("a2.json") + " --alpha 2,2");
  CHECK(without_timings(plain.json()) == without_timings(cold.json()));
}

TEST_CASE("run reports round trip through json") {
  qb::RunReport rep;
  rep.engine_version = "1.0.0";
  rep.command = "dims";
  rep.datum_digest = "abc";
  rep.parameters["max_degree"] = 3;
  rep.results["dims"] = nlohmann::json::array();
  rep.timings_ms["total"] = 12;
  qb::RunReport back = qb::RunReport::from_json(rep.to_json());
  CHECK(back.to_json() == rep.to_json());
  auto det = nlohmann::json::parse(rep.deterministic_dump());
  CHECK(!det.contains("timings_ms"));
  CHECK_THROWS(qb::RunReport::from_json(nlohmann::json{{"command", 7}}));
}
