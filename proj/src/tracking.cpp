#include "storyline/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace storyline {

namespace {

double component_kl(const WordFreq& a, const WordFreq& b, double eps) {
  if (a.empty() && b.empty()) return 0.0;
  std::set<std::string> vocab;
  for (const auto& [w, f] : a) vocab.insert(w);
  for (const auto& [w, f] : b) vocab.insert(w);
  const double v = static_cast<double>(vocab.size());
  double mass_a = 0.0, mass_b = 0.0;
  for (const auto& [w, f] : a) mass_a += f;
  for (const auto& [w, f] : b) mass_b += f;
  const double da = mass_a + eps * v;
  const double db = mass_b + eps * v;
  double kl = 0.0;
  for (const std::string& w : vocab) {
    const auto ia = a.find(w);
    const auto ib = b.find(w);
    const double pa = ((ia == a.end() ? 0.0 : ia->second) + eps) / da;
    const double pb = ((ib == b.end() ? 0.0 : ib->second) + eps) / db;
    kl += pa * std::log(pa / pb);
  }
  return kl;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

double topic_kl(const TopicParams& a, const TopicParams& b,
                const std::array<double, 5>& lambda, double eps) {
  double total = 0.0;
  for (int c = 0; c < 5; ++c) {
    if (lambda[c] == 0.0) continue;
    total += lambda[c] * component_kl(a.word_freq[c], b.word_freq[c], eps);
  }
  return total;
}

double topic_similarity(const TopicNode& a, const TopicNode& b,
                        const HyperParams& hyper) {
  if (a.window == b.window)
    throw std::invalid_argument("cannot score topics in the same window");
  const double kl = topic_kl(a.params, b.params, hyper.lambda_track,
                             hyper.smoothing_eps) +
                    topic_kl(b.params, a.params, hyper.lambda_track,
                             hyper.smoothing_eps);
  const double dt = std::abs(a.window - b.window);
  return hyper.alpha_sim * std::exp(-hyper.beta_kl * kl) +
         (1.0 - hyper.alpha_sim) * std::exp(-dt);
}

TrajectorySet build_trajectories(
    const std::vector<std::vector<TopicNode>>& windows,
    const HyperParams& hyper) {
  TrajectorySet set;
  for (const auto& w : windows)
    for (const TopicNode& node : w) set.nodes.push_back(node);

  const int n = static_cast<int>(set.nodes.size());
  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const TopicNode& a = set.nodes[i];
      const TopicNode& b = set.nodes[j];
      if (a.window == b.window) continue;
      const int gap = std::abs(a.window - b.window);
      if (hyper.max_window_gap > 0 && gap > hyper.max_window_gap) continue;
      const double sim = topic_similarity(a, b, hyper);
      if (sim < hyper.tau_link) continue;
      TrajectoryLink link;
      link.a = a.window < b.window ? i : j;
      link.b = a.window < b.window ? j : i;
      link.similarity = sim;
      set.links.push_back(link);
      uf.unite(i, j);
    }
  }

  std::vector<std::vector<int>> by_root(n);
  for (int i = 0; i < n; ++i) by_root[uf.find(i)].push_back(i);
  for (auto& c : by_root)
    if (!c.empty()) set.trajectories.push_back(std::move(c));
  return set;
}

}  // namespace storyline
