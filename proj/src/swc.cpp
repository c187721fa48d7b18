#include "storyline/swc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace storyline {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

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

// Scores of one cluster: members sorted ascending, fitted params, and the
// summed per-story score. Summation order is fixed by the member order, so
// a cached value is bit-identical to a fresh fit of the same members.
struct ClusterScore {
  std::vector<int> members;
  double score = 0.0;
};

ClusterScore score_cluster(const Corpus& corpus, const HyperParams& hyper,
                           std::vector<int> members) {
  ClusterScore c;
  c.members = std::move(members);
  const TopicParams t = fit_topic(corpus, c.members, hyper);
  for (int i : c.members) c.score += score_topic(corpus[i], t, hyper);
  return c;
}

// Likelihood summed over clusters ordered by smallest member, matching the
// order log_posterior_parts uses, plus the complexity term.
double total_from_clusters(const std::vector<const ClusterScore*>& clusters,
                           int n, const HyperParams& hyper) {
  std::vector<const ClusterScore*> ordered = clusters;
  std::sort(ordered.begin(), ordered.end(),
            [](const ClusterScore* a, const ClusterScore* b) {
              return a->members.front() < b->members.front();
            });
  double likelihood = 0.0;
  for (const ClusterScore* c : ordered) likelihood += c->score;
  const int k = static_cast<int>(ordered.size());
  double complexity = -hyper.alpha * static_cast<double>(n) * k;
  if (hyper.fixed_k)
    complexity += gaussian_log_term(static_cast<double>(k), hyper.fixed_k_mu,
                                    std::sqrt(hyper.fixed_k_var));
  return likelihood + complexity;
}

Partition labels_from_clusters(const std::vector<const ClusterScore*>& clusters,
                               int n) {
  std::vector<const ClusterScore*> ordered = clusters;
  std::sort(ordered.begin(), ordered.end(),
            [](const ClusterScore* a, const ClusterScore* b) {
              return a->members.front() < b->members.front();
            });
  Partition labels(n, -1);
  for (int k = 0; k < static_cast<int>(ordered.size()); ++k)
    for (int i : ordered[k]->members) labels[i] = k;
  return labels;
}

// Sum of log(1 - q_e) over graph edges joining v0 to the destination
// members; -inf when some q_e is 1.
double log_gamma_cut(const AdjacencyGraph& graph, const std::vector<char>& in_v0,
                     const std::vector<char>& in_dest, double t) {
  double lg = 0.0;
  for (const Edge& e : graph.edges) {
    const bool cut = (in_v0[e.a] && in_dest[e.b]) || (in_v0[e.b] && in_dest[e.a]);
    if (!cut) continue;
    const double q = turn_on_prob(e.distance, t);
    if (q >= 1.0) return kNegInf;
    lg += std::log1p(-q);
  }
  return lg;
}

std::vector<int> sorted_difference(const std::vector<int>& a,
                                   const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<int> sorted_union(const std::vector<int>& a,
                              const std::vector<int>& b) {
  std::vector<int> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

double turn_on_prob(double distance, double t) {
  if (t <= 0.0) throw std::invalid_argument("temperature must be positive");
  if (distance < 0.0) throw std::invalid_argument("distance must be >= 0");
  return std::exp(-distance / t);
}

std::vector<char> sample_edge_states(const AdjacencyGraph& graph,
                                     const Partition& labels, double t,
                                     Rng& rng) {
  std::vector<char> on(graph.edges.size(), 0);
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    const Edge& e = graph.edges[i];
    if (labels[e.a] != labels[e.b]) continue;  // cross-label: off, no draw
    on[i] = rng.bernoulli(turn_on_prob(e.distance, t)) ? 1 : 0;
  }
  return on;
}

std::vector<std::vector<int>> connected_components(
    int n, const AdjacencyGraph& graph, const std::vector<char>& on) {
  UnionFind uf(n);
  for (std::size_t i = 0; i < graph.edges.size(); ++i)
    if (on[i]) uf.unite(graph.edges[i].a, graph.edges[i].b);
  std::vector<std::vector<int>> by_root(n);
  for (int v = 0; v < n; ++v) by_root[uf.find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& c : by_root)
    if (!c.empty()) out.push_back(std::move(c));
  return out;
}

std::vector<FlipCandidate> flip_candidates(const Corpus& corpus,
                                           const AdjacencyGraph& graph,
                                           const std::vector<int>& v0,
                                           const Partition& labels,
                                           const HyperParams& hyper, double t) {
  if (v0.empty()) throw std::invalid_argument("empty component");
  const int n = static_cast<int>(corpus.size());
  const Partition canon = canonicalize(labels);
  const int source = canon[v0[0]];
  for (int v : v0)
    if (canon[v] != source)
      throw std::invalid_argument("component spans clusters");

  std::vector<char> in_v0(n, 0);
  for (int v : v0) in_v0[v] = 1;

  const auto clusters = clusters_of(canon);
  const std::vector<int> source_minus =
      sorted_difference(clusters[source], v0);

  std::vector<FlipCandidate> out;
  const auto add = [&](int dest) {
    // dest: an index into clusters, or -1 for a fresh cluster
    Partition next = canon;
    const int fresh = static_cast<int>(clusters.size());
    for (int v : v0) next[v] = dest < 0 ? fresh : dest;
    next = canonicalize(next);

    std::vector<char> in_dest(n, 0);
    double lg = 0.0;
    if (dest >= 0) {
      const auto& dm = dest == source ? source_minus : clusters[dest];
      for (int v : dm) in_dest[v] = 1;
      lg = log_gamma_cut(graph, in_v0, in_dest, t);
    }
    FlipCandidate c;
    c.labels = std::move(next);
    c.log_post = log_posterior(corpus, c.labels, hyper);
    const double target =
        hyper.annealed_target ? c.log_post / t : c.log_post;
    c.log_weight = lg + target;
    out.push_back(std::move(c));
  };

  for (int k = 0; k < static_cast<int>(clusters.size()); ++k) {
    if (k == source && source_minus.empty()) continue;  // vanished cluster
    add(k);
  }
  add(-1);
  return out;
}

SwcChain::SwcChain(const Corpus& corpus, const AdjacencyGraph& graph,
                   const HyperParams& hyper, Partition init, std::uint64_t seed)
    : corpus_(corpus), graph_(graph), hyper_(hyper),
      labels_(canonicalize(init)), rng_(seed) {
  if (corpus.empty()) throw std::invalid_argument("empty corpus");
  if (labels_.size() != corpus.size())
    throw std::invalid_argument("label count does not match corpus");
  log_post_ = log_posterior(corpus_, labels_, hyper_);
}

void SwcChain::sweep(double t) {
  const int n = static_cast<int>(corpus_.size());
  const auto on = sample_edge_states(graph_, labels_, t, rng_);
  const auto comps = connected_components(n, graph_, on);
  const auto& v0 = comps[rng_.uniform_int(comps.size())];

  const int source = labels_[v0[0]];
  const auto clusters = clusters_of(labels_);

  std::vector<char> in_v0(n, 0);
  for (int v : v0) in_v0[v] = 1;

  // Cluster scores shared by every candidate
  std::vector<ClusterScore> base;
  for (const auto& members : clusters)
    base.push_back(score_cluster(corpus_, hyper_, members));
  const std::vector<int> source_minus =
      sorted_difference(clusters[source], v0);
  ClusterScore source_rest;
  if (!source_minus.empty())
    source_rest = score_cluster(corpus_, hyper_, source_minus);
  const ClusterScore v0_alone = score_cluster(corpus_, hyper_, v0);
  std::deque<ClusterScore> fused;  // stable storage for merged destinations

  struct Move {
    std::vector<const ClusterScore*> clusters;
    double total = 0.0;
    double log_weight = 0.0;
  };
  std::vector<Move> moves;

  const auto finish = [&](Move&& m, double lg) {
    m.total = total_from_clusters(m.clusters, n, hyper_);
    const double target = hyper_.annealed_target ? m.total / t : m.total;
    m.log_weight = lg + target;
    moves.push_back(std::move(m));
  };

  for (int k = 0; k < static_cast<int>(clusters.size()); ++k) {
    if (k == source && source_minus.empty()) continue;
    Move m;
    if (k == source) {
      // no-op move: same clusters, gamma over the cut back to the source
      for (const auto& c : base) m.clusters.push_back(&c);
      std::vector<char> in_dest(n, 0);
      for (int v : source_minus) in_dest[v] = 1;
      finish(std::move(m), log_gamma_cut(graph_, in_v0, in_dest, t));
      continue;
    }
    Move mm;
    fused.push_back(
        score_cluster(corpus_, hyper_, sorted_union(clusters[k], v0)));
    for (int j = 0; j < static_cast<int>(base.size()); ++j) {
      if (j == k) continue;
      if (j == source) {
        if (!source_minus.empty()) mm.clusters.push_back(&source_rest);
        continue;
      }
      mm.clusters.push_back(&base[j]);
    }
    mm.clusters.push_back(&fused.back());
    std::vector<char> in_dest(n, 0);
    for (int v : clusters[k]) in_dest[v] = 1;
    finish(std::move(mm), log_gamma_cut(graph_, in_v0, in_dest, t));
  }
  {
    // fresh cluster; when v0 was its whole cluster this is the no-op
    Move m;
    for (int j = 0; j < static_cast<int>(base.size()); ++j) {
      if (j == source) {
        if (!source_minus.empty()) m.clusters.push_back(&source_rest);
        continue;
      }
      m.clusters.push_back(&base[j]);
    }
    m.clusters.push_back(&v0_alone);
    finish(std::move(m), 0.0);
  }

  double max_lw = kNegInf;
  for (const Move& m : moves) max_lw = std::max(max_lw, m.log_weight);
  double z = 0.0;
  std::vector<double> w(moves.size(), 0.0);
  for (std::size_t i = 0; i < moves.size(); ++i) {
    w[i] = std::exp(moves[i].log_weight - max_lw);
    z += w[i];
  }
  const double u = rng_.uniform() * z;
  std::size_t pick = moves.size() - 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    acc += w[i];
    if (u < acc) { pick = i; break; }
  }

  labels_ = labels_from_clusters(moves[pick].clusters, n);
  log_post_ = moves[pick].total;
}

SwcResult run_swc(const Corpus& corpus, const AdjacencyGraph& graph,
                  const HyperParams& hyper, const CoolingSchedule& schedule,
                  std::uint64_t seed) {
  if (corpus.empty()) throw std::invalid_argument("empty corpus");
  schedule.validate();
  const int n = static_cast<int>(corpus.size());

  Partition init(n, 0);
  if (hyper.random_init) {
    Rng init_rng(derive_seed(seed, "init"));
    for (int i = 0; i < n; ++i)
      init[i] = static_cast<int>(init_rng.uniform_int(n));
  }
  SwcChain chain(corpus, graph, hyper, std::move(init), seed);

  SwcResult r;
  r.best = chain.labels();
  r.best_log_post = chain.log_post();
  r.trace.reserve(schedule.sweeps);
  for (int s = 0; s < schedule.sweeps; ++s) {
    chain.sweep(schedule.temperature(s));
    r.trace.push_back(chain.log_post());
    if (chain.log_post() > r.best_log_post) {
      r.best_log_post = chain.log_post();
      r.best = chain.labels();
    }
  }
  r.last = chain.labels();
  return r;
}

SwcResult run_swc(const Corpus& corpus, const HyperParams& hyper,
                  const CoolingSchedule& schedule, std::uint64_t seed) {
  return run_swc(corpus, build_graph(corpus, hyper), hyper, schedule, seed);
}

}  // namespace storyline
