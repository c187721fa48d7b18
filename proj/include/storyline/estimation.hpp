#pragma once

#include <vector>

#include "storyline/params.hpp"
#include "storyline/scoring.hpp"
#include "storyline/story.hpp"

namespace storyline {

// Cluster labels, one per story, values in [0, K). Always kept canonical:
// labels form a contiguous range and first occurrences are increasing
// (story 0 has label 0, the first story not in cluster 0 has label 1, ...).
using Partition = std::vector<int>;

// Remaps labels into canonical first-occurrence order.
Partition canonicalize(const Partition& labels);

int cluster_count(const Partition& labels);

// Groups story indices by label. Result has one vector per cluster, indices
// ascending within each.
std::vector<std::vector<int>> clusters_of(const Partition& labels);

// Maximum-likelihood topic parameters for a set of stories: relative word
// frequencies per component, pair frequencies, ratio Gaussians from the
// per-story count ratios (both counts positive), branch frequency = story
// count. Empty ratio samples keep the default Gaussian; a single sample gets
// the sigma floor.
TopicParams fit_topic(const Corpus& corpus, const std::vector<int>& members,
                      const HyperParams& hyper);

// Fits every cluster of the partition.
std::vector<TopicParams> fit_all(const Corpus& corpus, const Partition& labels,
                                 const HyperParams& hyper);

// Log posterior of a partition under refit topic parameters:
//   sum_i score_topic(story_i; theta_{label_i}) - alpha * N * K
// plus, when hyper.fixed_k is set, a Gaussian log prior on K.
// Summation is in story order so the value is independent of label names.
double log_posterior(const Corpus& corpus, const Partition& labels,
                     const HyperParams& hyper);

struct PosteriorParts {
  double likelihood = 0.0;
  double complexity = 0.0;  // -alpha * N * K, plus the optional K prior
  double total = 0.0;
  std::vector<TopicParams> topics;
};

PosteriorParts log_posterior_parts(const Corpus& corpus,
                                   const Partition& labels,
                                   const HyperParams& hyper);

}  // namespace storyline
