#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(LMP_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const std::string& name) {
  return std::string(LMP_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "lmp-cli-test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("verify /nonexistent/map.json").exit_code == 1);
  CHECK(run_cli("gen").exit_code == 1);  // missing -o
}

TEST_CASE("gen writes canonical pam-v1 and certifies") {
  fs::path out = scratch_dir() / "gen-tent.json";
  auto r = run_cli("gen --seed-level 0 -o " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("certificate: pass") != std::string::npos);
  CHECK(slurp(out.string()) == slurp(fixture("tent.json")));

  auto r2 = run_cli("gen --seed-level 2 -o " + (scratch_dir() / "s2.json").string());
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("certificate: pass") != std::string::npos);

  // schedule violations are usage errors
  CHECK(run_cli("gen --seed-level 1 --multiplicity 4 -o /tmp/never.json").exit_code == 1);
  CHECK(run_cli("gen --seed-level 9 --max-level 3 -o /tmp/never.json").exit_code == 1);
}

TEST_CASE("rationals on the command line reject decimals") {
  fs::path out = scratch_dir() / "dense-bad.json";
  auto r = run_cli("gen --densify " + fixture("tent.json") + " --eps 0.25 -o " + out.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("p/q") != std::string::npos);
}

TEST_CASE("gen densify reports the sup-distance bound") {
  fs::path out = scratch_dir() / "dense.json";
  auto r = run_cli("gen --densify " + fixture("tent.json") + " --eps 1/4 --seed-level 1 -o " +
                   out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("sup distance to input") != std::string::npos);
  CHECK(r.output.find(" < 1/8") != std::string::npos);
  CHECK(r.output.find("certificate: pass") != std::string::npos);

  auto v = run_cli("verify " + out.string());
  CHECK(v.exit_code == 0);
}

TEST_CASE("gen conjugate checks the weighted certificate") {
  fs::path out = scratch_dir() / "conj.json";
  auto r = run_cli("gen --conjugate " + fixture("tent.json") + " --homeo " + fixture("homeo.json") +
                   " -o " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("weighted certificate: pass") != std::string::npos);
  // the conjugate itself does not preserve Lebesgue measure
  CHECK(r.output.find("certificate: fail") != std::string::npos);
  CHECK(run_cli("verify " + out.string()).exit_code == 2);
}

TEST_CASE("gen besicovitch produces an uncertified map without failing") {
  fs::path out = scratch_dir() / "besi.json";
  auto r = run_cli("gen --besicovitch --g-slope 1/2 --g-intercept 1/4 --alpha 1/4 --beta 1/4 "
                   "--seed-level 2 -o " +
                   out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("certificate: fail") != std::string::npos);
}

TEST_CASE("gen config round trip reproduces the output byte for byte") {
  fs::path dir = scratch_dir();
  fs::path out1 = dir / "cfg-a.json", out2 = dir / "cfg-b.json", cfg = dir / "run-config.json";
  auto r1 = run_cli("gen --densify " + fixture("tent.json") +
                    " --eps 1/4 --seed-level 1 --save-config " + cfg.string() + " -o " +
                    out1.string());
  CHECK(r1.exit_code == 0);
  std::string text = slurp(cfg.string());
  auto j = nlohmann::json::parse(text);
  j["out"] = out2.string();
  std::ofstream(cfg) << j.dump(2) << "\n";
  auto r2 = run_cli("gen --config " + cfg.string());
  CHECK(r2.exit_code == 0);
  CHECK(slurp(out1.string()) == slurp(out2.string()));
}

TEST_CASE("verify exit codes and montecarlo cross-check") {
  auto pass = run_cli("verify " + fixture("tent.json"));
  CHECK(pass.exit_code == 0);
  CHECK(pass.output.find("certificate: pass") != std::string::npos);

  auto fail = run_cli("verify " + fixture("unbalanced.json"));
  CHECK(fail.exit_code == 2);
  CHECK(fail.output.find("certificate: fail on cell [0/1, 1/2], deficiency -1/2") !=
        std::string::npos);

  auto bad = run_cli("verify " + fixture("malformed.json"));
  CHECK(bad.exit_code == 1);

  auto mc1 = run_cli("verify " + fixture("tent.json") + " --montecarlo 200000 50 --rng 7");
  CHECK(mc1.exit_code == 0);
  CHECK(mc1.output.find("montecarlo sup-deviation") != std::string::npos);
  auto mc2 = run_cli("verify " + fixture("tent.json") + " --montecarlo 200000 50 --rng 7");
  CHECK(mc1.output == mc2.output);
}

TEST_CASE("analyze writes a report and CSV tables; export reproduces them") {
  fs::path dir = scratch_dir() / "analyze";
  fs::path csv1 = dir / "csv1", csv2 = dir / "csv2";
  fs::create_directories(csv1);
  fs::create_directories(csv2);
  fs::path report = dir / "report.json";

  auto r = run_cli("analyze " + fixture("tent.json") + " -o " + report.string() + " --csv-dir " +
                   csv1.string() +
                   " --entropy --witness --laps 6 --dini --dini-grid 9 --dini-scales 2 3 "
                   "--dini-increments 3 --boxdim --boxdim-scales 2 3 4 --crooked 1/8 3 "
                   "--lemma2 0/1:1/2");
  CHECK(r.exit_code == 0);

  auto j = nlohmann::json::parse(slurp(report.string()));
  CHECK(j["schema"] == "lmp-report-v1");
  CHECK(j["certificatePass"] == true);
  CHECK(j["entropy"]["terms"][0]["weight"] == "1/1");
  CHECK(j["entropy"]["terms"][0]["logOf"] == "2/1");
  CHECK(j["witness"]["setMeasure"] == "1/2");
  CHECK(j["witness"]["imageMeasure"] == "1/1");
  CHECK(j["laps"]["rows"].size() == 6);
  CHECK(j["laps"]["rows"][5]["laps"] == 64);
  CHECK(j["boxDimension"]["rows"].size() == 3);
  CHECK(j["lemma2"]["pass"] == true);

  for (const char* name : {"laps.csv", "boxdim.csv", "dini.csv", "crooked.csv"}) {
    CAPTURE(name);
    CHECK(fs::exists(csv1 / name));
  }
  CHECK(slurp((csv1 / "laps.csv").string()).rfind("n,laps,estimate\n", 0) == 0);

  auto e = run_cli("export " + report.string() + " --csv-dir " + csv2.string());
  CHECK(e.exit_code == 0);
  for (const char* name : {"laps.csv", "boxdim.csv", "dini.csv", "crooked.csv"}) {
    CAPTURE(name);
    CHECK(slurp((csv1 / name).string()) == slurp((csv2 / name).string()));
  }

  // deterministic rerun: report byte-identical
  fs::path report2 = dir / "report2.json";
  auto r2 = run_cli("analyze " + fixture("tent.json") + " -o " + report2.string() +
                    " --entropy --witness --laps 6 --dini --dini-grid 9 --dini-scales 2 3 "
                    "--dini-increments 3 --boxdim --boxdim-scales 2 3 4 --crooked 1/8 3 "
                    "--lemma2 0/1:1/2");
  CHECK(r2.exit_code == 0);
  auto j1 = nlohmann::json::parse(slurp(report.string()));
  auto j2 = nlohmann::json::parse(slurp(report2.string()));
  j1.erase("mapPath");
  j2.erase("mapPath");
  CHECK(j1 == j2);
}

TEST_CASE("analyze refuses entropy and witness on uncertified maps") {
  fs::path report = scratch_dir() / "refused.json";
  auto r = run_cli("analyze " + fixture("unbalanced.json") + " -o " + report.string() +
                   " --entropy");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("require a certified map") != std::string::npos);

  // non-certifying analyses still run
  auto ok = run_cli("analyze " + fixture("unbalanced.json") + " -o " + report.string() +
                    " --laps 4 --boxdim --boxdim-scales 2 3");
  CHECK(ok.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(report.string()));
  CHECK(j["certificatePass"] == false);
}

TEST_CASE("denominator guard environment variable") {
  fs::path report = scratch_dir() / "guarded.json";
  std::string cmd = "env LMP_DENOM_GUARD=64 " + std::string(LMP_CLI_PATH) + " analyze " +
                    fixture("tent.json") + " -o " + report.string() + " --laps 10 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (fread(buf, 1, sizeof buf, pipe) > 0) {
  }
  int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 0);
  auto j = nlohmann::json::parse(slurp(report.string()));
  // tent iterates have dyadic breakpoints; a tiny guard truncates the table
  CHECK(j["laps"]["truncated"] == true);
  CHECK(j["laps"]["rows"].size() < 10);

  auto bad = run_cli("analyze " + fixture("tent.json") + " -o " + report.string() + " --laps 2");
  CHECK(bad.exit_code == 0);

  std::string badEnv = "env LMP_DENOM_GUARD=x " + std::string(LMP_CLI_PATH) + " analyze " +
                       fixture("tent.json") + " -o " + report.string() + " --laps 2 2>&1";
  FILE* p2 = popen(badEnv.c_str(), "r");
  REQUIRE(p2 != nullptr);
  while (fread(buf, 1, sizeof buf, p2) > 0) {
  }
  CHECK(WEXITSTATUS(pclose(p2)) == 1);
}
