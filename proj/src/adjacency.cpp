#include "storyline/adjacency.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace storyline {

std::vector<std::vector<int>> AdjacencyGraph::neighbor_lists() const {
  std::vector<std::vector<int>> out(node_count);
  for (const Edge& e : edges) {
    out[e.a].push_back(e.b);
    out[e.b].push_back(e.a);
  }
  return out;
}

std::map<std::string, double> component_histogram(
    const std::vector<std::string>& words,
    const std::vector<std::string>& vocab, double eps) {
  std::map<std::string, double> hist;
  for (const std::string& w : vocab) hist[w] = 0.0;
  double total = 0.0;
  for (const std::string& w : words) {
    hist.at(w) += 1.0;
    total += 1.0;
  }
  const double denom = total + eps * static_cast<double>(hist.size());
  for (auto& [w, c] : hist) c = (c + eps) / denom;
  return hist;
}

namespace {

// Both directions in one pass over the shared vocabulary, so the result is
// exactly symmetric in the two stories.
double symmetric_kl(const std::vector<std::string>& a,
                    const std::vector<std::string>& b, double eps) {
  if (a.empty() && b.empty()) return 0.0;
  std::set<std::string> vocab(a.begin(), a.end());
  vocab.insert(b.begin(), b.end());
  const std::vector<std::string> vlist(vocab.begin(), vocab.end());
  const auto ha = component_histogram(a, vlist, eps);
  const auto hb = component_histogram(b, vlist, eps);
  double kl = 0.0;
  for (const std::string& w : vlist) {
    const double lo = std::min(ha.at(w), hb.at(w));
    const double hi = std::max(ha.at(w), hb.at(w));
    if (lo == hi) continue;
    // 0.5*(p-q)*log(p/q) per word; written min/max first so the sum is
    // bit-identical under argument swap and every term is non-negative.
    kl += 0.5 * (hi - lo) * std::log(hi / lo);
  }
  return kl;
}

}  // namespace

double edge_distance(const Story& a, const Story& b,
                     const HyperParams& hyper) {
  double d = 0.0;
  for (Component c : kAllComponents) {
    const double w = hyper.lambda_edge[static_cast<int>(c)];
    if (w == 0.0) continue;
    d += w * symmetric_kl(a.component(c), b.component(c),
                          hyper.smoothing_eps);
  }
  return d;
}

AdjacencyGraph build_graph(const Corpus& corpus, const HyperParams& hyper) {
  AdjacencyGraph g;
  g.node_count = static_cast<int>(corpus.size());
  for (int i = 0; i < g.node_count; ++i) {
    for (int j = i + 1; j < g.node_count; ++j) {
      const double d = edge_distance(corpus[i], corpus[j], hyper);
      if (d <= hyper.tau_prune) g.edges.push_back({i, j, d});
    }
  }
  return g;
}

}  // namespace storyline
