#include "storyline/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace storyline {

Partition canonicalize(const Partition& labels) {
  Partition out(labels.size());
  std::vector<int> remap;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int l = labels[i];
    if (l < 0) throw std::invalid_argument("negative cluster label");
    int mapped = -1;
    for (std::size_t k = 0; k < remap.size(); ++k)
      if (remap[k] == l) { mapped = static_cast<int>(k); break; }
    if (mapped < 0) {
      mapped = static_cast<int>(remap.size());
      remap.push_back(l);
    }
    out[i] = mapped;
  }
  return out;
}

int cluster_count(const Partition& labels) {
  int k = 0;
  for (int l : canonicalize(labels)) k = std::max(k, l + 1);
  return k;
}

std::vector<std::vector<int>> clusters_of(const Partition& labels) {
  const Partition canon = canonicalize(labels);
  std::vector<std::vector<int>> out(cluster_count(canon));
  for (std::size_t i = 0; i < canon.size(); ++i)
    out[canon[i]].push_back(static_cast<int>(i));
  return out;
}

namespace {

void normalize(WordFreq& m) {
  double total = 0.0;
  for (const auto& [w, c] : m) total += c;
  if (total <= 0.0) return;
  for (auto& [w, c] : m) c /= total;
}

template <typename Map>
void normalize_pairs(Map& m) {
  double total = 0.0;
  for (const auto& [k, c] : m) total += c;
  if (total <= 0.0) return;
  for (auto& [k, c] : m) c /= total;
}

void ratio_sample(const Story& s, RatioKind r, std::vector<double>* out) {
  int num = 0, den = 0;
  switch (r) {
    case RatioKind::WhoWhere:
      num = s.count(Component::Who);
      den = s.count(Component::Where);
      break;
    case RatioKind::WhoWhat:
      num = s.count(Component::Who);
      den = s.count(Component::What);
      break;
    case RatioKind::WhereWhat:
      num = s.count(Component::Where);
      den = s.count(Component::What);
      break;
    case RatioKind::TextImage:
      num = s.text_count();
      den = s.image_count();
      break;
  }
  if (num > 0 && den > 0) out->push_back(static_cast<double>(num) / den);
}

}  // namespace

TopicParams fit_topic(const Corpus& corpus, const std::vector<int>& members,
                      const HyperParams& hyper) {
  if (members.empty()) throw std::invalid_argument("empty cluster");
  TopicParams t;
  for (int i : members) {
    const Story& s = corpus.at(i);
    for (Component c : kAllComponents)
      for (const std::string& w : s.component(c))
        t.word_freq[static_cast<int>(c)][w] += 1.0;
    for (const WordPair& p : s.tt_pairs) t.tt_freq[p] += 1.0;
    for (const WordPair& p : s.ii_pairs) t.ii_freq[p] += 1.0;
    for (const JointPair& p : s.joint_pairs)
      t.joint_freq[JointKey{p.tag, p.text_word, p.visual_word}] += 1.0;
  }
  for (WordFreq& m : t.word_freq) normalize(m);
  normalize_pairs(t.tt_freq);
  normalize_pairs(t.ii_freq);
  normalize_pairs(t.joint_freq);

  for (RatioKind r : kAllRatios) {
    std::vector<double> xs;
    for (int i : members) ratio_sample(corpus.at(i), r, &xs);
    GaussParam& g = t.ratio_gauss[static_cast<int>(r)];
    if (xs.empty()) {
      g.sigma = std::max(g.sigma, hyper.sigma_floor);
      continue;
    }
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= xs.size();
    g.mu = mean;
    g.sigma = std::max(std::sqrt(var), hyper.sigma_floor);
  }
  t.branch_freq = static_cast<long long>(members.size());
  return t;
}

std::vector<TopicParams> fit_all(const Corpus& corpus, const Partition& labels,
                                 const HyperParams& hyper) {
  std::vector<TopicParams> out;
  for (const auto& members : clusters_of(labels))
    out.push_back(fit_topic(corpus, members, hyper));
  return out;
}

PosteriorParts log_posterior_parts(const Corpus& corpus,
                                   const Partition& labels,
                                   const HyperParams& hyper) {
  if (corpus.empty()) throw std::invalid_argument("empty corpus");
  if (labels.size() != corpus.size())
    throw std::invalid_argument("label count does not match corpus");
  PosteriorParts parts;
  const auto clusters = clusters_of(labels);
  const int k = static_cast<int>(clusters.size());
  const auto n = static_cast<double>(corpus.size());
  for (const auto& members : clusters) {
    const TopicParams t = fit_topic(corpus, members, hyper);
    double cluster_score = 0.0;
    for (int i : members) cluster_score += score_topic(corpus[i], t, hyper);
    parts.likelihood += cluster_score;
    parts.topics.push_back(t);
  }
  parts.complexity = -hyper.alpha * n * k;
  if (hyper.fixed_k)
    parts.complexity += gaussian_log_term(static_cast<double>(k),
                                          hyper.fixed_k_mu,
                                          std::sqrt(hyper.fixed_k_var));
  parts.total = parts.likelihood + parts.complexity;
  return parts;
}

double log_posterior(const Corpus& corpus, const Partition& labels,
                     const HyperParams& hyper) {
  return log_posterior_parts(corpus, labels, hyper).total;
}

}  // namespace storyline
