#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "storyline/evaluation.hpp"
#include "storyline/params.hpp"
#include "storyline/story.hpp"
#include "storyline/synth.hpp"
#include "storyline/tracking.hpp"

namespace storyline {

// Input rejected by a reader. line is 1-based, 0 when the problem is not
// tied to a line.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string file, int line, const std::string& message);
  const std::string& file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

// JSON Lines corpus: one story object per line with fields id, window,
// who, where, what, face, obj, tt_pairs, ii_pairs, joint_pairs.
Corpus read_corpus_jsonl(const std::string& path);
void write_corpus_jsonl(const std::string& path, const Corpus& corpus);

// Flat "key = value" config file, '#' starts a comment.
using ConfigMap = std::map<std::string, std::string>;
ConfigMap read_config_file(const std::string& path);
// In-place "key=value" overrides, e.g. from repeated --set flags.
void merge_overrides(ConfigMap& config, const std::vector<std::string>& items);

struct RunConfig {
  HyperParams hyper;
  CoolingSchedule schedule;
  SynthConfig synth;
  int chains = 1;
  int top_n = 8;  // words listed per component in detection summaries
};

// Applies every recognized key; unknown keys and malformed values are
// schema errors.
RunConfig parse_run_config(const ConfigMap& config,
                           const std::string& source_name = "config");

struct DetectOutput {
  int window = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> ids;  // story order of the labels
  Partition labels;
  double log_post = 0.0;
  std::vector<TopicNode> topics;
  std::vector<double> trace;
};

void write_detect_output(const std::string& path, const DetectOutput& out,
                         int top_n);
DetectOutput read_detect_output(const std::string& path);

// Bare labeling file: {"partition": {story-id: label, ...}}. Detection
// outputs parse too.
void write_partition(const std::string& path,
                     const std::vector<std::string>& ids,
                     const Partition& labels);
std::map<std::string, int> read_partition(const std::string& path);

// Annotated pairs: JSON array of {"a": id, "b": id, "same": bool}.
std::vector<PairAnnotation> read_pairs(const std::string& path);

void write_trajectories(const std::string& path, const TrajectorySet& set);

}  // namespace storyline
