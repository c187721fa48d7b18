#include "storyline/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace storyline {

void for_each_partition(int n,
                        const std::function<void(const Partition&)>& fn) {
  if (n < 1) throw std::invalid_argument("need at least one element");
  Partition a(n, 0);
  std::vector<int> m(n, 0);  // running prefix maxima of a
  fn(a);
  for (;;) {
    int i = n - 1;
    while (i > 0 && a[i] == m[i - 1] + 1) --i;
    if (i == 0) return;
    ++a[i];
    m[i] = std::max(m[i - 1], a[i]);
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      m[j] = m[j - 1];
    }
    fn(a);
  }
}

OracleResult exact_map(const Corpus& corpus, const HyperParams& hyper,
                       int max_n) {
  const int n = static_cast<int>(corpus.size());
  if (n < 1) throw std::invalid_argument("empty corpus");
  if (n > max_n)
    throw std::invalid_argument("corpus too large for exhaustive search");

  OracleResult result;
  bool have = false;
  for_each_partition(n, [&](const Partition& labels) {
    ++result.evaluated;
    const double lp = log_posterior(corpus, labels, hyper);
    if (!have) {
      have = true;
      result.best = labels;
      result.log_post = lp;
      return;
    }
    if (lp > result.log_post) {
      result.best = labels;
      result.log_post = lp;
      return;
    }
    if (lp == result.log_post) {
      const int k_new = cluster_count(labels);
      const int k_old = cluster_count(result.best);
      if (k_new < k_old ||
          (k_new == k_old && labels < result.best)) {
        result.best = labels;
        result.log_post = lp;
      }
    }
  });
  return result;
}

}  // namespace storyline
