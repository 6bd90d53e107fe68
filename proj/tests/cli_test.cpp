#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "dsmdp/experiment/csv.hpp"

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DSMDP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "dsmdp_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("cli end to end on cliff walking") {
  const fs::path dir = scratch();
  const fs::path spec = dir / "spec.json";
  {
    std::ofstream out(spec);
    out << R"({"name": "cli", "env": "cliff_walking", "seeds": [0, 1],
              "algorithms": ["q_learning", "planner_state"],
              "bounds": {"separable_bases": 10, "skill_augmentations": 10, "uniform_gap_macro_sets": 5}})";
  }
  const std::string out = (dir / "out").string();
  const std::string common = "--spec " + spec.string() + " --out " + out;

  CHECK(run_cli("build-env " + common) == 0);
  CHECK(fs::exists(dir / "out" / "env.bin"));
  CHECK(run_cli("gen-macros " + common) == 0);
  CHECK(read_json(dir / "out" / "macros.json").size() > 0);
  CHECK(run_cli("metrics " + common) == 0);
  const auto metrics = dsmdp::experiment::parse_csv(dsmdp::experiment::read_text(out + "/metrics.csv"));
  CHECK(metrics.rows.size() == 32);
  CHECK(metrics.number(0, "j_learn") == doctest::Approx(52.0));
  CHECK(run_cli("run-rl --jobs 2 " + common) == 0);
  CHECK(fs::exists(dir / "out" / "runs.csv"));
  CHECK(fs::exists(dir / "out" / "planner.csv"));
  CHECK(fs::exists(dir / "out" / "manifest.json"));
  CHECK(run_cli("correlate " + common) == 0);
  CHECK(read_json(dir / "out" / "correlation.json").is_object());
  CHECK(run_cli("scatter --out " + (dir / "sc").string() + " --in " + out) == 0);
  CHECK(fs::exists(dir / "sc" / "scatter.csv"));
  CHECK(fs::exists(dir / "sc" / "scatter.gp"));
  CHECK(run_cli("bounds " + common) == 0);
  CHECK(read_json(dir / "out" / "bounds.json").at("totals").at("violated") == 0);
  CHECK(run_cli("discover --corpus-size 20 --max-skills 2 " + common) == 0);
  CHECK(read_json(dir / "out" / "discovered.json").at("macros").is_array());
}

TEST_CASE("cli exit codes") {
  const fs::path dir = scratch();
  // Unknown keys in the spec are configuration errors.
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << R"({"bogus": 1})";
  CHECK(run_cli("metrics --spec " + bad.string() + " --out " + (dir / "o").string()) == 1);
  // The q solver cannot converge on cliff walking at delta 0.
  CHECK(run_cli("metrics --delta 0 --out " + (dir / "o").string()) == 3);
  CHECK(run_cli("no-such-command") != 0);
  CHECK(run_cli("build-env --preset chain:4 --out " + (dir / "c").string()) == 0);
  CHECK(run_cli("build-env --preset nope --out " + (dir / "c").string()) == 1);
}
