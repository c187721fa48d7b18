#pragma once

#include <cstdint>
#include <vector>

#include "storyline/adjacency.hpp"
#include "storyline/estimation.hpp"
#include "storyline/rng.hpp"

namespace storyline {

// Bond probability q = exp(-distance / t).
double turn_on_prob(double distance, double t);

// One Bernoulli draw per graph edge whose endpoints currently share a label;
// cross-label edges stay off. Result is parallel to graph.edges.
std::vector<char> sample_edge_states(const AdjacencyGraph& graph,
                                     const Partition& labels, double t,
                                     Rng& rng);

// Components of the on-edge subgraph over n vertices (union-find). Vertex
// sets come back sorted, ordered by smallest member.
std::vector<std::vector<int>> connected_components(int n,
                                                   const AdjacencyGraph& graph,
                                                   const std::vector<char>& on);

struct FlipCandidate {
  Partition labels;       // canonical partition after the move
  double log_post = 0.0;  // its log posterior
  double log_weight = 0.0;  // log gamma + log posterior
};

// Candidate destinations for component v0: every cluster that remains after
// v0 is removed, plus a fresh cluster. When v0 was an entire cluster the
// fresh-cluster option already covers "stay", so the emptied source is not
// listed twice. Weight per candidate is gamma * posterior with
// gamma = prod (1 - q_e) over graph edges between v0 and the destination.
std::vector<FlipCandidate> flip_candidates(const Corpus& corpus,
                                           const AdjacencyGraph& graph,
                                           const std::vector<int>& v0,
                                           const Partition& labels,
                                           const HyperParams& hyper, double t);

// One chain. Keeps per-cluster score caches so a sweep refits only the
// clusters a move touches; the cached total always matches a fresh
// log_posterior call on the same labels.
class SwcChain {
 public:
  SwcChain(const Corpus& corpus, const AdjacencyGraph& graph,
           const HyperParams& hyper, Partition init, std::uint64_t seed);

  // Edge sampling, component pick, one weighted flip.
  void sweep(double t);

  const Partition& labels() const { return labels_; }
  double log_post() const { return log_post_; }

 private:
  const Corpus& corpus_;
  const AdjacencyGraph& graph_;
  const HyperParams& hyper_;
  Partition labels_;
  double log_post_ = 0.0;
  Rng rng_;
};

struct SwcResult {
  Partition best;               // best partition ever visited
  double best_log_post = 0.0;
  Partition last;               // state after the final sweep
  std::vector<double> trace;    // log posterior after each sweep
};

SwcResult run_swc(const Corpus& corpus, const AdjacencyGraph& graph,
                  const HyperParams& hyper, const CoolingSchedule& schedule,
                  std::uint64_t seed);

// Convenience: builds the adjacency graph first.
SwcResult run_swc(const Corpus& corpus, const HyperParams& hyper,
                  const CoolingSchedule& schedule, std::uint64_t seed);

}  // namespace storyline
