#pragma once

#include <array>
#include <vector>

#include "storyline/params.hpp"

namespace storyline {

struct TopicNode {
  int window = 0;
  int label = 0;  // cluster label inside its window
  int size = 1;   // story count
  TopicParams params;
};

struct TrajectoryLink {
  int a = 0;  // node indices into the flat node list, window(a) < window(b)
  int b = 0;
  double similarity = 0.0;
};

struct TrajectorySet {
  std::vector<TopicNode> nodes;
  std::vector<TrajectoryLink> links;
  // Connected components of the link graph, node indices ascending, ordered
  // by smallest member. Singletons included.
  std::vector<std::vector<int>> trajectories;
};

// Weighted sum of per-component KL divergences between the word-frequency
// histograms, each smoothed over the pairwise union vocabulary. Asymmetric.
double topic_kl(const TopicParams& a, const TopicParams& b,
                const std::array<double, 5>& lambda, double eps);

// Content-plus-time similarity:
//   alpha_sim * exp(-beta_kl * (KL(a||b) + KL(b||a)))
//     + (1 - alpha_sim) * exp(-|window_a - window_b|)
// Rejects same-window pairs.
double topic_similarity(const TopicNode& a, const TopicNode& b,
                        const HyperParams& hyper);

// Links every cross-window pair with similarity >= tau_link (respecting
// max_window_gap when nonzero) and reports connected components.
TrajectorySet build_trajectories(
    const std::vector<std::vector<TopicNode>>& windows,
    const HyperParams& hyper);

}  // namespace storyline
