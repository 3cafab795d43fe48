#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace lumenloop::cli;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "lumenloop");
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("lumenloop-cli-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

const std::string kFixtures = LUMENLOOP_FIXTURES_DIR;
const std::string kData = LUMENLOOP_DATA_DIR;

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({}).code == kUsage);
  CHECK(run({"bogus"}).code == kUsage);
  CHECK(run({"simulate"}).code == kUsage);
  CHECK(run({"--help"}).code == kSuccess);
  const Run v = run({"--version"});
  CHECK(v.code == kSuccess);
  CHECK(v.out.find(LUMENLOOP_VERSION) != std::string::npos);
}

TEST_CASE("simulate prints one metrics row and a manifest") {
  TempDir dir;
  const Run r = run({"simulate", "--scenario", "scenario1", "--controller", "iteration1", "--out-dir", dir / "o"});
  REQUIRE(r.code == kSuccess);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "scenario,solution,energy,people,trip,fitness");
  const auto f = fields(lines[1]);
  REQUIRE(f.size() == 6);
  CHECK(f[0] == "scenario1");
  CHECK(f[1] == "iteration1");
  const json manifest = json::parse(read_file(dir.path / "o" / "manifest.json"));
  CHECK(manifest["command"] == "simulate");
  CHECK(manifest["argv"][0] == "simulate");
  CHECK(manifest["config"]["controller"] == "iteration1");
}

TEST_CASE("simulate with a trace and a rule file") {
  TempDir dir;
  {
    std::ofstream rules(dir / "on.rules");
    rules << "light = 1.0\n";
  }
  const Run r = run({"simulate", "--scenario", kData + "/scenarios/line2.json", "--controller", dir / "on.rules",
                     "--trace", dir / "trace.jsonl", "--out-dir", dir / "o"});
  REQUIRE(r.code == kSuccess);
  const auto trace = lines_of(read_file(dir.path / "trace.jsonl"));
  CHECK(trace.size() == 10);
  CHECK(json::parse(trace[0]).contains("poles"));
  CHECK(fields(lines_of(r.out)[1])[3] == "100");
}

TEST_CASE("simulate rejects invalid programs with positions") {
  TempDir dir;
  const Run r = run({"simulate", "--controller", kFixtures + "/bad.rules", "--out-dir", dir / "o"});
  CHECK(r.code == kUsage);
  CHECK(r.err.find("line 2, column 11") != std::string::npos);

  CHECK(run({"simulate", "--controller", "iteration9", "--out-dir", dir / "o"}).code == kUsage);
  CHECK(run({"simulate", "--controller", "iteration1", "--scenario", "scenario7", "--out-dir", dir / "o"}).code ==
        kUsage);
  CHECK(run({"simulate", "--controller", "iteration1", "--weights", "1,2", "--out-dir", dir / "o"}).code == kUsage);
}

TEST_CASE("evolve writes its log and best genome") {
  TempDir dir;
  const Run r = run({"evolve", "--generations", "2", "--population", "4", "--seed", "1", "--out-dir", dir / "o"});
  REQUIRE(r.code == kSuccess);
  const auto log = lines_of(read_file(dir.path / "o" / "evolution.csv"));
  REQUIRE(log.size() == 3);
  CHECK(log[0] == "generation,best_fitness,mean_fitness");
  CHECK(fields(log[1])[0] == "0");
  CHECK(fields(log[2])[0] == "1");
  CHECK(fs::exists(dir.path / "o" / "best_genome.json"));
  CHECK(r.out.find("scenario1,neuroevolution,") != std::string::npos);

  // The evolved genome can be simulated directly.
  const Run sim = run({"simulate", "--controller", dir / "o/best_genome.json", "--out-dir", dir / "s"});
  CHECK(sim.code == kSuccess);
  CHECK(fields(lines_of(sim.out)[1])[5] == fields(lines_of(r.out).back())[5]);
}

TEST_CASE("evolve defaults to 200 generations of 50") {
  TempDir dir;
  CHECK(run({"evolve", "--population", "1", "--out-dir", dir / "bad"}).code == kUsage);

  const Run ok = run({"evolve", "--out-dir", dir / "d"});
  REQUIRE(ok.code == kSuccess);
  const json manifest = json::parse(read_file(dir.path / "d" / "manifest.json"));
  CHECK(manifest["config"]["generations"] == 200);
  CHECK(manifest["config"]["population"] == 50);
  CHECK(lines_of(read_file(dir.path / "d" / "evolution.csv")).size() == 201);
}

TEST_CASE("evolve is reproducible from its manifest") {
  TempDir dir;
  const Run first = run({"evolve", "--generations", "3", "--population", "6", "--seed", "9", "--threads", "2",
                         "--out-dir", dir / "o"});
  REQUIRE(first.code == kSuccess);
  const std::string log = read_file(dir.path / "o" / "evolution.csv");
  const std::string genome = read_file(dir.path / "o" / "best_genome.json");
  fs::copy_file(dir.path / "o" / "manifest.json", dir.path / "manifest.json");
  const Run again = run({"rerun", dir / "manifest.json"});
  REQUIRE(again.code == kSuccess);
  CHECK(again.out == first.out);
  CHECK(read_file(dir.path / "o" / "evolution.csv") == log);
  CHECK(read_file(dir.path / "o" / "best_genome.json") == genome);

  CHECK(run({"rerun", kFixtures + "/bad.rules"}).code == kUsage);
}

TEST_CASE("gpt-loop replays a script") {
  TempDir dir;
  const Run r = run({"gpt-loop", "--replay", kFixtures + "/three_iter.jsonl", "--calibration-stub", "--out-dir",
                     dir / "o"});
  REQUIRE(r.code == kSuccess);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "iteration,outcome,repair_attempts,energy,people,trip,fitness");
  CHECK(fields(lines[1])[6] == "29.49");
  CHECK(fields(lines[2])[6] == "61.2");
  CHECK(fields(lines[3])[6] == "62.44");
  CHECK(fields(lines[3])[1] == "accepted");
  CHECK(lines_of(read_file(dir.path / "o" / "transcript.jsonl")).size() == 5);
  CHECK(fs::exists(dir.path / "o" / "controller.rules"));
}

TEST_CASE("gpt-loop exit codes") {
  TempDir dir;
  SUBCASE("budget exhausted") {
    const Run r = run({"gpt-loop", "--replay", kFixtures + "/low_score.jsonl", "--max-iterations", "1",
                       "--out-dir", dir / "o"});
    CHECK(r.code == kBudgetExhausted);
  }
  SUBCASE("script runs dry") {
    const Run r = run({"gpt-loop", "--replay", kFixtures + "/low_score.jsonl", "--max-iterations", "3",
                       "--out-dir", dir / "o"});
    CHECK(r.code == kProviderFailure);
  }
  SUBCASE("repairs") {
    const Run r = run({"gpt-loop", "--replay", kFixtures + "/malformed_then_valid.jsonl", "--threshold", "0",
                       "--out-dir", dir / "o"});
    CHECK(r.code == kSuccess);
    CHECK(fields(lines_of(r.out)[1])[2] == "1");
  }
  SUBCASE("missing credential") {
    const Run r = run({"gpt-loop", "--out-dir", dir / "o"});
    CHECK(r.code == kUsage);
    CHECK(r.err.find("LUMENLOOP_API_KEY") != std::string::npos);
  }
  SUBCASE("invalid configuration") {
    CHECK(run({"gpt-loop", "--replay", kFixtures + "/low_score.jsonl", "--max-iterations", "0", "--out-dir",
               dir / "o"})
              .code == kUsage);
  }
}

TEST_CASE("compare evaluates every controller on every scenario") {
  TempDir dir;
  const Run r = run({"compare", "--controller", "iteration1", "--controller", "dark=always_off", "--scenario",
                     "scenario1", "--scenario", "scenario2", "--out-dir", dir / "o"});
  REQUIRE(r.code == kSuccess);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 5);
  CHECK(fields(lines[2])[1] == "dark");
  CHECK(fields(lines[2])[3] == "0");
  CHECK(read_file(dir.path / "o" / "comparison.csv") == r.out);
}

TEST_CASE("fitness-check on the published table") {
  const Run ok = run({"fitness-check", kData + "/published_results.csv"});
  CHECK(ok.code == kSuccess);
  CHECK(ok.err.find("max residual 0.0200") != std::string::npos);

  TempDir dir;
  {
    std::ofstream t(dir / "perturbed.csv");
    t << "label,energy,people,trip,fitness\nok,11.92,100,54.62,62.44\nbad,11.92,100,54.62,63.44\n";
  }
  const Run bad = run({"fitness-check", dir / "perturbed.csv"});
  CHECK(bad.code == kCheckFailed);
  CHECK(bad.err.find("row 2 (bad)") != std::string::npos);
  CHECK(run({"fitness-check", dir / "perturbed.csv", "--tolerance", "1.5"}).code == kSuccess);

  {
    std::ofstream t(dir / "empty.csv");
    t << "energy,people,trip,fitness\n";
  }
  CHECK(run({"fitness-check", dir / "empty.csv"}).code == kUsage);
  {
    std::ofstream t(dir / "broken.csv");
    t << "energy,people,fitness\n1,2,3\n";
  }
  CHECK(run({"fitness-check", dir / "broken.csv"}).code == kUsage);
  CHECK(run({"fitness-check", dir / "missing.csv"}).code == kUsage);
}
