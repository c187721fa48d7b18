#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "storyline/adjacency.hpp"
#include "storyline/estimation.hpp"
#include "storyline/evaluation.hpp"
#include "storyline/io.hpp"
#include "storyline/oracle.hpp"
#include "storyline/rng.hpp"
#include "storyline/swc.hpp"
#include "storyline/synth.hpp"
#include "storyline/tracking.hpp"

namespace {

using namespace storyline;
using json = nlohmann::ordered_json;

RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& sets) {
  ConfigMap map;
  if (!path.empty()) map = read_config_file(path);
  merge_overrides(map, sets);
  return parse_run_config(map, path.empty() ? "config" : path);
}

int majority_window(const Corpus& corpus) {
  std::map<int, int> counts;
  for (const Story& s : corpus) ++counts[s.window];
  int best = 0, best_count = -1;
  for (const auto& [w, c] : counts)
    if (c > best_count) { best = w; best_count = c; }
  return best;
}

DetectOutput run_detect(const Corpus& corpus, const RunConfig& rc,
                        std::uint64_t seed) {
  const AdjacencyGraph graph = build_graph(corpus, rc.hyper);
  SwcResult best;
  bool have = false;
  for (int i = 0; i < rc.chains; ++i) {
    SwcResult r = run_swc(corpus, graph, rc.hyper, rc.schedule,
                          derive_seed(seed, "chain-" + std::to_string(i)));
    if (!have || r.best_log_post > best.best_log_post) {
      best = std::move(r);
      have = true;
    }
  }

  DetectOutput out;
  out.window = majority_window(corpus);
  out.seed = seed;
  for (const Story& s : corpus) out.ids.push_back(s.id);
  out.labels = best.best;
  out.log_post = best.best_log_post;
  out.trace = best.trace;
  const auto clusters = clusters_of(best.best);
  const auto topics = fit_all(corpus, best.best, rc.hyper);
  for (std::size_t k = 0; k < topics.size(); ++k) {
    TopicNode node;
    node.window = out.window;
    node.label = static_cast<int>(k);
    node.size = static_cast<int>(clusters[k].size());
    node.params = topics[k];
    out.topics.push_back(std::move(node));
  }
  return out;
}

struct EvalInputs {
  std::vector<std::string> ids;
  Partition predicted;
  bool has_truth = false;
  Partition truth;
  std::vector<PairAnnotation> pairs;  // annotations used for PR
};

EvalInputs align_eval(const std::string& partition_file,
                      const std::string& truth_file,
                      const std::string& pairs_file) {
  EvalInputs in;
  const auto pred = read_partition(partition_file);
  for (const auto& [id, label] : pred) {
    in.ids.push_back(id);
    in.predicted.push_back(label);
  }
  if (!truth_file.empty()) {
    const auto truth = read_partition(truth_file);
    if (truth.size() != pred.size())
      throw SchemaError(truth_file, 0,
                        "story ids do not match the partition file");
    for (const auto& [id, label] : truth) {
      if (pred.find(id) == pred.end())
        throw SchemaError(truth_file, 0, "unknown story id " + id);
      in.truth.push_back(label);
    }
    in.has_truth = true;
  }
  if (!pairs_file.empty()) {
    in.pairs = read_pairs(pairs_file);
  } else if (in.has_truth) {
    in.pairs = pairs_from_partition(in.ids, in.truth);
  }
  return in;
}

struct SweepRange {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;
};

SweepRange parse_sweep(const std::string& raw) {
  SweepRange r;
  const auto c1 = raw.find(':');
  const auto c2 = raw.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  try {
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::invalid_argument("need lo:hi:steps");
    r.lo = std::stod(raw.substr(0, c1));
    r.hi = std::stod(raw.substr(c1 + 1, c2 - c1 - 1));
    r.steps = std::stoi(raw.substr(c2 + 1));
  } catch (const std::exception&) {
    throw SchemaError("--sweep-alpha", 0,
                      "expected lo:hi:steps, got \"" + raw + "\"");
  }
  if (r.steps < 1)
    throw SchemaError("--sweep-alpha", 0, "steps must be >= 1");
  return r;
}

void write_json(const std::string& path, const json& j) {
  auto out = std::ofstream(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"multimodal news topic detection and tracking"};
  app.require_subcommand(1);
  std::vector<std::string> sets;
  app.add_option("--set", sets, "config override key=value")
      ->take_all()
      ->expected(0, -1);

  std::string corpus_file, config_file, out_file, partition_file;
  std::string truth_file, pairs_file, sweep_raw;
  std::vector<std::string> topics_files;
  std::uint64_t seed = 1;

  CLI::App* detect = app.add_subcommand("detect", "cluster a corpus into topics");
  detect->add_option("--corpus", corpus_file, "corpus JSONL")->required();
  detect->add_option("--config", config_file, "config file");
  detect->add_option("--seed", seed, "random seed");
  detect->add_option("--out", out_file, "output file")->required();

  CLI::App* track = app.add_subcommand("track", "link topics across windows");
  track->add_option("--topics", topics_files, "detection outputs, one per window")
      ->required()
      ->take_all();
  track->add_option("--config", config_file, "config file");
  track->add_option("--out", out_file, "output file")->required();

  CLI::App* eval = app.add_subcommand("eval", "score a partition");
  eval->add_option("--partition", partition_file, "predicted partition")
      ->required();
  eval->add_option("--truth", truth_file, "ground-truth partition");
  eval->add_option("--pairs", pairs_file, "annotated pairs");
  eval->add_option("--out", out_file, "output file")->required();
  eval->add_option("--sweep-alpha", sweep_raw,
                   "lo:hi:steps, rerun detection across alpha");
  eval->add_option("--corpus", corpus_file, "corpus JSONL (sweep mode)");
  eval->add_option("--config", config_file, "config file (sweep mode)");
  eval->add_option("--seed", seed, "random seed (sweep mode)");

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  synth->add_option("--config", config_file, "config file");
  synth->add_option("--seed", seed, "random seed");
  synth->add_option("--out", out_file, "corpus output file")->required();

  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive MAP search");
  oracle->add_option("--corpus", corpus_file, "corpus JSONL")->required();
  oracle->add_option("--config", config_file, "config file");
  oracle->add_option("--out", out_file, "output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (detect->parsed()) {
    const RunConfig rc = load_config(config_file, sets);
    const Corpus corpus = read_corpus_jsonl(corpus_file);
    const DetectOutput out = run_detect(corpus, rc, seed);
    write_detect_output(out_file, out, rc.top_n);
    return 0;
  }

  if (track->parsed()) {
    const RunConfig rc = load_config(config_file, sets);
    std::vector<DetectOutput> outputs;
    for (const std::string& f : topics_files)
      outputs.push_back(read_detect_output(f));
    std::map<int, int> window_of;  // window -> file index
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      if (!window_of.emplace(outputs[i].window, static_cast<int>(i)).second)
        throw SchemaError(topics_files[i], 0,
                          "duplicate window index " +
                              std::to_string(outputs[i].window));
    }
    std::vector<std::vector<TopicNode>> windows;
    for (const auto& [w, i] : window_of) {
      std::vector<TopicNode> nodes = outputs[i].topics;
      for (TopicNode& n : nodes) n.window = w;
      windows.push_back(std::move(nodes));
    }
    write_trajectories(out_file, build_trajectories(windows, rc.hyper));
    return 0;
  }

  if (eval->parsed()) {
    if (truth_file.empty() && pairs_file.empty())
      throw SchemaError("eval", 0, "need --truth or --pairs");
    EvalInputs in = align_eval(partition_file, truth_file, pairs_file);
    json j;
    if (!sweep_raw.empty()) {
      if (corpus_file.empty())
        throw SchemaError("eval", 0, "--sweep-alpha needs --corpus");
      const SweepRange range = parse_sweep(sweep_raw);
      RunConfig rc = load_config(config_file, sets);
      const Corpus corpus = read_corpus_jsonl(corpus_file);
      json points = json::array();
      for (int i = 0; i < range.steps; ++i) {
        const double alpha =
            range.steps == 1
                ? range.lo
                : range.lo + (range.hi - range.lo) * i / (range.steps - 1);
        rc.hyper.alpha = alpha;
        const DetectOutput out = run_detect(corpus, rc, seed);
        const PrResult pr = pairwise_pr(out.ids, out.labels, in.pairs);
        points.push_back({{"alpha", alpha},
                          {"precision", pr.precision},
                          {"recall", pr.recall},
                          {"f1", pr.f1()}});
      }
      j["sweep"] = points;
    } else {
      const PrResult pr = pairwise_pr(in.ids, in.predicted, in.pairs);
      j["precision"] = pr.precision;
      j["recall"] = pr.recall;
      j["f1"] = pr.f1();
      if (in.has_truth) {
        j["accuracy"] = clustering_accuracy(in.predicted, in.truth);
        j["nmi"] = nmi(in.predicted, in.truth);
      }
    }
    write_json(out_file, j);
    return 0;
  }

  if (synth->parsed()) {
    const RunConfig rc = load_config(config_file, sets);
    const SynthResult r = generate(rc.synth, seed);
    write_corpus_jsonl(out_file, r.corpus);
    std::vector<std::string> ids;
    for (const Story& s : r.corpus) ids.push_back(s.id);
    write_partition(out_file + ".truth.json", ids, r.truth);
    return 0;
  }

  if (oracle->parsed()) {
    const RunConfig rc = load_config(config_file, sets);
    const Corpus corpus = read_corpus_jsonl(corpus_file);
    const OracleResult r = exact_map(corpus, rc.hyper);
    json part = json::object();
    for (std::size_t i = 0; i < corpus.size(); ++i)
      part[corpus[i].id] = r.best[i];
    json j;
    j["partition"] = part;
    j["log_posterior"] = r.log_post;
    j["evaluated"] = r.evaluated;
    write_json(out_file, j);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
