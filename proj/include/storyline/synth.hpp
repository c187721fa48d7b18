#pragma once

#include <array>
#include <cstdint>

#include "storyline/estimation.hpp"
#include "storyline/rng.hpp"
#include "storyline/story.hpp"

namespace storyline {

struct SynthConfig {
  int topics = 10;
  int stories = 0;  // 0: story count = sum of free Zipf size draws
  double zipf_s = 1.75;
  int max_topic_size = 120;  // Zipf support is [1, max_topic_size]

  std::array<int, 5> vocab = {40, 30, 60, 25, 35};  // who/where/what/face/obj
  double dirichlet = 0.1;  // concentration of the per-topic word distributions
  double noise = 0.0;      // chance a word comes from the flat background

  // Per-story component counts: the what-count is uniform in
  // [base_count_lo, base_count_hi], the others follow Gaussian ratio draws
  // against it (per ratio kind, shared across topics).
  int base_count_lo = 15;
  int base_count_hi = 40;
  std::array<double, 4> ratio_mu = {1.0, 0.6, 0.6, 0.8};
  std::array<double, 4> ratio_sigma = {0.1, 0.08, 0.08, 0.1};

  double pair_rate = 0.3;  // co-occurrence pairs per available cross product
  int window = 0;
  // When nonzero, topic word distributions come from this seed instead of
  // the corpus seed, so different windows can share persistent topics.
  std::uint64_t topic_seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct SynthResult {
  Corpus corpus;
  Partition truth;
  std::vector<int> topic_sizes;
};

SynthResult generate(const SynthConfig& config, std::uint64_t seed);

// Bounded Zipf draw on [1, max_value] with exponent s (inverse CDF over the
// normalized finite support).
int zipf_draw(Rng& rng, double s, int max_value);

}  // namespace storyline
