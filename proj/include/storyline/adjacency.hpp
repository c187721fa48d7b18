#pragma once

#include <map>
#include <string>
#include <vector>

#include "storyline/params.hpp"
#include "storyline/story.hpp"

namespace storyline {

struct Edge {
  int a = 0;
  int b = 0;  // a < b
  double distance = 0.0;
};

struct AdjacencyGraph {
  int node_count = 0;
  std::vector<Edge> edges;  // sorted by (a, b), no duplicates, no self loops

  std::vector<std::vector<int>> neighbor_lists() const;
};

// Smoothed relative frequencies of one component over a fixed vocabulary:
// (count + eps) / (total + eps * vocab_size). Words outside the story are
// kept in the support so KL stays finite.
std::map<std::string, double> component_histogram(
    const std::vector<std::string>& words,
    const std::vector<std::string>& vocab, double eps);

// Symmetrized KL between two stories: per component, histograms over the
// union vocabulary of the pair, 0.5 * (KL(a||b) + KL(b||a)), combined with
// the component weights. Symmetric in its arguments, exactly.
double edge_distance(const Story& a, const Story& b, const HyperParams& hyper);

// Complete graph on the corpus pruned at distance tau_prune. Edges with
// distance > tau keep nothing; ties stay.
AdjacencyGraph build_graph(const Corpus& corpus, const HyperParams& hyper);

}  // namespace storyline
