#pragma once

#include <functional>

#include "storyline/estimation.hpp"

namespace storyline {

struct OracleResult {
  Partition best;
  double log_post = 0.0;
  long long evaluated = 0;  // equals the Bell number of N
};

// Visits every set partition of {0..n-1} exactly once, in restricted-growth
// string order. The callback receives canonical labels.
void for_each_partition(int n, const std::function<void(const Partition&)>& fn);

// Brute-force MAP: scores every partition, keeps the argmax. Ties go to
// fewer clusters, then lexicographically smaller labels. Refuses n > max_n.
OracleResult exact_map(const Corpus& corpus, const HyperParams& hyper,
                       int max_n = 10);

}  // namespace storyline
