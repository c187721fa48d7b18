#include "storyline/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace storyline {

namespace {

std::unordered_map<std::string, int> index_ids(
    const std::vector<std::string>& ids) {
  std::unordered_map<std::string, int> idx;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!idx.emplace(ids[i], static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate story id " + ids[i]);
  }
  return idx;
}

std::vector<std::vector<long long>> contingency(const Partition& predicted,
                                                const Partition& truth) {
  if (predicted.size() != truth.size() || predicted.empty())
    throw std::invalid_argument("partitions must cover the same stories");
  const Partition p = canonicalize(predicted);
  const Partition t = canonicalize(truth);
  const int kp = cluster_count(p);
  const int kt = cluster_count(t);
  std::vector<std::vector<long long>> table(
      kp, std::vector<long long>(kt, 0));
  for (std::size_t i = 0; i < p.size(); ++i) ++table[p[i]][t[i]];
  return table;
}

}  // namespace

PrResult pairwise_pr(const std::vector<std::string>& ids,
                     const Partition& labels,
                     const std::vector<PairAnnotation>& pairs) {
  if (ids.size() != labels.size())
    throw std::invalid_argument("id list does not match labels");
  if (pairs.empty()) throw std::invalid_argument("no annotated pairs");
  const auto idx = index_ids(ids);
  std::set<std::pair<int, int>> seen;
  PrResult r;
  for (const PairAnnotation& p : pairs) {
    const auto ia = idx.find(p.a);
    const auto ib = idx.find(p.b);
    if (ia == idx.end()) throw std::invalid_argument("unknown story id " + p.a);
    if (ib == idx.end()) throw std::invalid_argument("unknown story id " + p.b);
    if (ia->second == ib->second)
      throw std::invalid_argument("pair of a story with itself: " + p.a);
    const auto key = std::minmax(ia->second, ib->second);
    if (!seen.insert(key).second)
      throw std::invalid_argument("duplicate pair " + p.a + ", " + p.b);
    const bool predicted = labels[ia->second] == labels[ib->second];
    if (predicted && p.same) ++r.tp;
    else if (predicted && !p.same) ++r.fp;
    else if (!predicted && p.same) ++r.fn;
    else ++r.tn;
  }
  r.precision = r.tp + r.fp > 0
                    ? static_cast<double>(r.tp) / (r.tp + r.fp) : 1.0;
  r.recall = r.tp + r.fn > 0
                 ? static_cast<double>(r.tp) / (r.tp + r.fn) : 1.0;
  return r;
}

std::vector<PairAnnotation> pairs_from_partition(
    const std::vector<std::string>& ids, const Partition& labels) {
  if (ids.size() != labels.size())
    throw std::invalid_argument("id list does not match labels");
  std::vector<PairAnnotation> out;
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      out.push_back({ids[i], ids[j], labels[i] == labels[j]});
  return out;
}

long long max_assignment(const std::vector<std::vector<long long>>& weight) {
  if (weight.empty()) return 0;
  const int rows = static_cast<int>(weight.size());
  const int cols = static_cast<int>(weight[0].size());
  for (const auto& row : weight)
    if (static_cast<int>(row.size()) != cols)
      throw std::invalid_argument("ragged weight matrix");
  const int n = std::max(rows, cols);
  const long long inf = std::numeric_limits<long long>::max() / 4;

  // Hungarian algorithm with potentials, minimizing the negated weights on
  // a zero-padded square matrix.
  auto cost = [&](int i, int j) -> long long {
    return (i < rows && j < cols) ? -weight[i][j] : 0;
  };
  std::vector<long long> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<long long> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      long long delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const long long cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) { minv[j] = cur; way[j] = j0; }
        if (minv[j] < delta) { delta = minv[j]; j1 = j; }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) { u[p[j]] += delta; v[j] -= delta; }
        else minv[j] -= delta;
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  long long total = 0;
  for (int j = 1; j <= n; ++j)
    if (p[j] != 0) total += -cost(p[j] - 1, j - 1);
  return total;
}

double clustering_accuracy(const Partition& predicted,
                           const Partition& truth) {
  const auto table = contingency(predicted, truth);
  const long long correct = max_assignment(table);
  return static_cast<double>(correct) /
         static_cast<double>(predicted.size());
}

double nmi(const Partition& predicted, const Partition& truth) {
  const auto table = contingency(predicted, truth);
  const auto n = static_cast<double>(predicted.size());
  const int kp = static_cast<int>(table.size());
  const int kt = static_cast<int>(table[0].size());
  std::vector<long long> row(kp, 0), col(kt, 0);
  for (int i = 0; i < kp; ++i)
    for (int j = 0; j < kt; ++j) {
      row[i] += table[i][j];
      col[j] += table[i][j];
    }
  // Per-term sums are accumulated in sorted order so relabeling either
  // partition cannot change the floating-point result.
  const auto entropy = [n](std::vector<long long> counts) {
    std::sort(counts.begin(), counts.end());
    double h = 0.0;
    for (long long c : counts)
      if (c > 0) h -= c / n * std::log(c / n);
    return h;
  };
  const double hp = entropy(row);
  const double ht = entropy(col);
  std::vector<double> terms;
  for (int i = 0; i < kp; ++i)
    for (int j = 0; j < kt; ++j) {
      const long long c = table[i][j];
      if (c == 0) continue;
      terms.push_back(c / n *
                      std::log(n * c / (static_cast<double>(row[i]) * col[j])));
    }
  std::sort(terms.begin(), terms.end());
  double mi = 0.0;
  for (double t : terms) mi += t;
  if (hp == 0.0 && ht == 0.0) return 1.0;
  if (mi <= 0.0 || hp == 0.0 || ht == 0.0) return 0.0;
  return std::clamp(mi / std::sqrt(hp * ht), 0.0, 1.0);
}

}  // namespace storyline
