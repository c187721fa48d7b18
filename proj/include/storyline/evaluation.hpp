#pragma once

#include <string>
#include <vector>

#include "storyline/estimation.hpp"

namespace storyline {

struct PairAnnotation {
  std::string a;
  std::string b;
  bool same = false;
};

struct PrResult {
  double precision = 1.0;
  double recall = 1.0;
  long long tp = 0, fp = 0, fn = 0, tn = 0;

  double f1() const {
    const double d = precision + recall;
    return d > 0.0 ? 2.0 * precision * recall / d : 0.0;
  }
};

// Precision/recall of same-label predictions over annotated story pairs.
// ids gives the story id for each partition slot. Empty denominators follow
// the usual convention: no predicted positives -> precision 1, no true
// positives -> recall 1. Unknown ids and duplicate pairs are rejected.
PrResult pairwise_pr(const std::vector<std::string>& ids,
                     const Partition& labels,
                     const std::vector<PairAnnotation>& pairs);

// All N*(N-1)/2 annotations implied by a full ground-truth labeling.
std::vector<PairAnnotation> pairs_from_partition(
    const std::vector<std::string>& ids, const Partition& labels);

// Maximum-weight assignment over a rectangular cost matrix (Hungarian
// algorithm on the negated costs). Returns the best total weight.
long long max_assignment(const std::vector<std::vector<long long>>& weight);

// Fraction of stories labeled correctly under the best one-to-one mapping
// between predicted and true labels.
double clustering_accuracy(const Partition& predicted, const Partition& truth);

// Mutual information normalized by the geometric mean of the entropies.
// 1 when both partitions carry no information (single cluster each).
double nmi(const Partition& predicted, const Partition& truth);

}  // namespace storyline
