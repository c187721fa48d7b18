#include "storyline/scoring.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace storyline {

namespace {

constexpr double kHalfLog2Pi = 0.9189385332046727;  // 0.5 * ln(2*pi)

double pair_term(double freq) { return std::log1p(freq); }

// Numerator/denominator counts entering each ratio Gaussian. A term only
// applies when both counts are positive.
void ratio_counts(const Story& s, RatioKind r, int* num, int* den) {
  switch (r) {
    case RatioKind::WhoWhere:
      *num = s.count(Component::Who);
      *den = s.count(Component::Where);
      return;
    case RatioKind::WhoWhat:
      *num = s.count(Component::Who);
      *den = s.count(Component::What);
      return;
    case RatioKind::WhereWhat:
      *num = s.count(Component::Where);
      *den = s.count(Component::What);
      return;
    case RatioKind::TextImage:
      *num = s.text_count();
      *den = s.image_count();
      return;
  }
  throw std::invalid_argument("bad ratio kind");
}

double ratio_term(const Story& s, const TopicParams& topic, RatioKind r) {
  int num = 0, den = 0;
  ratio_counts(s, r, &num, &den);
  if (num <= 0 || den <= 0) return 0.0;
  const GaussParam& g = topic.ratio_gauss[static_cast<int>(r)];
  return gaussian_log_term(static_cast<double>(num) / den, g.mu, g.sigma);
}

}  // namespace

double score_component(const std::vector<std::string>& words,
                       const TopicParams& topic, Component c) {
  double total = 0.0;
  for (const std::string& w : words)
    total += pair_term(topic.word_frequency(c, w));
  return total;
}

double gaussian_log_term(double x, double mu, double sigma,
                         double sigma_floor) {
  const double s = std::max(sigma, sigma_floor);
  if (s <= 0.0) throw std::invalid_argument("sigma must be positive");
  const double z = (x - mu) / s;
  return -kHalfLog2Pi - std::log(s) - 0.5 * z * z;
}

double zipf_log_prior(long long f, double s) {
  if (f < 1) throw std::invalid_argument("branch frequency must be >= 1");
  if (s <= 1.0) throw std::invalid_argument("zipf exponent must exceed 1");
  return -s * std::log(static_cast<double>(f)) - std::log(std::riemann_zeta(s));
}

double score_text(const Story& story, const TopicParams& topic) {
  double total = 0.0;
  for (Component c : kTextComponents)
    total += score_component(story.component(c), topic, c);
  total += ratio_term(story, topic, RatioKind::WhoWhere);
  total += ratio_term(story, topic, RatioKind::WhoWhat);
  total += ratio_term(story, topic, RatioKind::WhereWhat);
  for (const WordPair& p : story.tt_pairs)
    total += pair_term(topic.tt_frequency(p));
  return total;
}

double score_image(const Story& story, const TopicParams& topic) {
  double total = 0.0;
  for (Component c : kImageComponents)
    total += score_component(story.component(c), topic, c);
  for (const WordPair& p : story.ii_pairs)
    total += pair_term(topic.ii_frequency(p));
  return total;
}

double score_joint(const Story& story, const TopicParams& topic) {
  double total = ratio_term(story, topic, RatioKind::TextImage);
  for (const JointPair& p : story.joint_pairs)
    total += pair_term(topic.joint_frequency(p));
  return total;
}

double score_topic(const Story& story, const TopicParams& topic,
                   const HyperParams& hyper) {
  return score_text(story, topic) + score_image(story, topic) +
         score_joint(story, topic) +
         zipf_log_prior(topic.branch_freq, hyper.zipf_s);
}

std::pair<double, int> score_root(const Story& story,
                                  const std::vector<TopicParams>& model,
                                  const HyperParams& hyper) {
  if (model.empty()) throw std::invalid_argument("empty topic model");
  double best = -std::numeric_limits<double>::infinity();
  int best_idx = 0;
  for (int k = 0; k < static_cast<int>(model.size()); ++k) {
    const double s = score_topic(story, model[k], hyper);
    if (s > best) {
      best = s;
      best_idx = k;
    }
  }
  return {best, best_idx};
}

}  // namespace storyline
