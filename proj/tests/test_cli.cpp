#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

using json = nlohmann::json;

namespace {

const std::string cli = STORYLINE_CLI_PATH;

int run_cli(const std::string& args) {
  const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct WorkDir {
  std::string root;

  explicit WorkDir(const std::string& name)
      : root((std::filesystem::temp_directory_path() / ("storyline_cli_" + name))
                 .string()) {
    std::filesystem::remove_all(root);
    std::filesystem::create_directories(root);
  }
  ~WorkDir() { std::filesystem::remove_all(root); }

  std::string operator/(const std::string& leaf) const {
    return root + "/" + leaf;
  }
};

const std::string small_synth =
    "--set topics=3 --set stories=18 --set noise=0.1";
const std::string small_detect =
    "--set topics=3 --set stories=18 --set noise=0.1 "
    "--set sweeps=60 --set t0=4 --set t_min=0.5 --set tau_prune=1e18 "
    "--set alpha=1.0";

}  // namespace

TEST_CASE("synth, detect, eval, oracle, track run end to end") {
  WorkDir dir("pipeline");
  const std::string corpus = dir / "corpus.jsonl";
  const std::string detect = dir / "detect.json";
  const std::string evalout = dir / "eval.json";

  REQUIRE(run_cli(small_synth + " synth --seed 5 --out " + corpus) == 0);
  CHECK(std::filesystem::exists(corpus));
  CHECK(std::filesystem::exists(corpus + ".truth.json"));

  REQUIRE(run_cli(small_detect + " detect --corpus " + corpus +
                  " --seed 5 --out " + detect) == 0);
  const auto dj = json::parse(std::ifstream(detect));
  CHECK(dj["partition"].size() == 18);
  CHECK(dj["trace"].size() == 60);
  CHECK(dj["topics"].size() >= 1);

  REQUIRE(run_cli("eval --partition " + detect + " --truth " + corpus +
                  ".truth.json --out " + evalout) == 0);
  const auto ej = json::parse(std::ifstream(evalout));
  CHECK(ej.contains("precision"));
  CHECK(ej.contains("recall"));
  CHECK(ej.contains("f1"));
  CHECK(ej.contains("accuracy"));
  CHECK(ej.contains("nmi"));
  CHECK(ej["precision"].get<double>() >= 0.0);
  CHECK(ej["precision"].get<double>() <= 1.0);

  // oracle needs a small corpus
  const std::string tiny = dir / "tiny.jsonl";
  const std::string oracle_out = dir / "oracle.json";
  REQUIRE(run_cli("--set topics=2 --set stories=7 synth --seed 2 --out " +
                  tiny) == 0);
  REQUIRE(run_cli("--set alpha=1.0 oracle --corpus " + tiny + " --out " +
                  oracle_out) == 0);
  const auto oj = json::parse(std::ifstream(oracle_out));
  CHECK(oj["evaluated"] == 877);
  CHECK(oj["partition"].size() == 7);

  // two windows from the same persistent topics, then track
  const std::string w0 = dir / "w0.jsonl";
  const std::string w1 = dir / "w1.jsonl";
  const std::string d0 = dir / "d0.json";
  const std::string d1 = dir / "d1.json";
  const std::string traj = dir / "traj.json";
  REQUIRE(run_cli(small_synth + " --set topic_seed=77 --set window=0 "
                  "synth --seed 6 --out " + w0) == 0);
  REQUIRE(run_cli(small_synth + " --set topic_seed=77 --set window=1 "
                  "synth --seed 7 --out " + w1) == 0);
  REQUIRE(run_cli(small_detect + " detect --corpus " + w0 +
                  " --seed 6 --out " + d0) == 0);
  REQUIRE(run_cli(small_detect + " detect --corpus " + w1 +
                  " --seed 7 --out " + d1) == 0);
  REQUIRE(run_cli("--set tau_link=0.5 track --topics " + d0 + " " + d1 +
                  " --out " + traj) == 0);
  const auto tj = json::parse(std::ifstream(traj));
  CHECK(tj["nodes"].size() >= 2);
  CHECK(tj.contains("links"));
  CHECK(tj.contains("trajectories"));
}

TEST_CASE("identical seeds give byte-identical outputs") {
  WorkDir dir("determinism");
  const std::string c1 = dir / "c1.jsonl";
  const std::string c2 = dir / "c2.jsonl";
  REQUIRE(run_cli(small_synth + " synth --seed 11 --out " + c1) == 0);
  REQUIRE(run_cli(small_synth + " synth --seed 11 --out " + c2) == 0);
  CHECK(slurp(c1) == slurp(c2));
  CHECK(slurp(c1 + ".truth.json") == slurp(c2 + ".truth.json"));

  const std::string d1 = dir / "d1.json";
  const std::string d2 = dir / "d2.json";
  REQUIRE(run_cli(small_detect + " detect --corpus " + c1 +
                  " --seed 3 --out " + d1) == 0);
  REQUIRE(run_cli(small_detect + " detect --corpus " + c1 +
                  " --seed 3 --out " + d2) == 0);
  CHECK(slurp(d1) == slurp(d2));

  // a different seed changes the sweep trajectory
  const std::string d3 = dir / "d3.json";
  REQUIRE(run_cli(small_detect + " detect --corpus " + c1 +
                  " --seed 4 --out " + d3) == 0);
  CHECK(json::parse(std::ifstream(d1))["trace"] !=
        json::parse(std::ifstream(d3))["trace"]);
}

TEST_CASE("config overrides reach the run") {
  WorkDir dir("overrides");
  const std::string corpus = dir / "c.jsonl";
  const std::string detect = dir / "d.json";
  REQUIRE(run_cli(small_synth + " synth --seed 1 --out " + corpus) == 0);
  REQUIRE(run_cli(small_detect + " --set sweeps=5 detect --corpus " + corpus +
                  " --seed 1 --out " + detect) == 0);
  CHECK(json::parse(std::ifstream(detect))["trace"].size() == 5);
}

TEST_CASE("usage and schema problems exit 2") {
  WorkDir dir("errors");
  const std::string corpus = dir / "c.jsonl";
  REQUIRE(run_cli(small_synth + " synth --seed 1 --out " + corpus) == 0);

  CHECK(run_cli("detect --corpus " + corpus) == 2);  // missing --out
  CHECK(run_cli("nonsense") == 2);
  CHECK(run_cli("detect --corpus " + (dir / "missing.jsonl") + " --out " +
                (dir / "x.json")) == 2);
  CHECK(run_cli("--set mystery=1 detect --corpus " + corpus + " --out " +
                (dir / "x.json")) == 2);
  CHECK(run_cli("--set alpha=banana detect --corpus " + corpus + " --out " +
                (dir / "x.json")) == 2);
  CHECK(run_cli("eval --partition " + (dir / "nope.json") + " --out " +
                (dir / "x.json") + " --truth " + (dir / "nope2.json")) == 2);

  const std::string broken = dir / "broken.jsonl";
  std::ofstream(broken) << "{\"id\": \"a\", \"what\": [\"x\"]}\nnot json\n";
  CHECK(run_cli("detect --corpus " + broken + " --out " + (dir / "x.json")) ==
        2);

  const std::string empty = dir / "empty.jsonl";
  std::ofstream(empty) << "\n";
  CHECK(run_cli("detect --corpus " + empty + " --out " + (dir / "x.json")) ==
        2);

  // eval needs a reference
  const std::string d = dir / "d.json";
  REQUIRE(run_cli(small_detect + " detect --corpus " + corpus +
                  " --seed 1 --out " + d) == 0);
  CHECK(run_cli("eval --partition " + d + " --out " + (dir / "x.json")) == 2);

  // oracle refuses large corpora
  const std::string big = dir / "big.jsonl";
  REQUIRE(run_cli("--set topics=2 --set stories=12 synth --seed 1 --out " +
                  big) == 0);
  CHECK(run_cli("oracle --corpus " + big + " --out " + (dir / "x.json")) == 2);

  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("detect --help") == 0);
}
