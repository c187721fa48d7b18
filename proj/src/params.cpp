#include "storyline/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace storyline {

const char* ratio_name(RatioKind r) {
  switch (r) {
    case RatioKind::WhoWhere: return "who_where";
    case RatioKind::WhoWhat: return "who_what";
    case RatioKind::WhereWhat: return "where_what";
    case RatioKind::TextImage: return "text_image";
  }
  throw std::invalid_argument("bad ratio kind");
}

namespace {

template <typename Map, typename Key>
double lookup(const Map& m, const Key& k) {
  auto it = m.find(k);
  return it == m.end() ? 0.0 : it->second;
}

}  // namespace

double TopicParams::word_frequency(Component c, const std::string& w) const {
  return lookup(word_freq[static_cast<int>(c)], w);
}

double TopicParams::tt_frequency(const WordPair& p) const {
  return lookup(tt_freq, p);
}

double TopicParams::ii_frequency(const WordPair& p) const {
  return lookup(ii_freq, p);
}

double TopicParams::joint_frequency(const JointPair& p) const {
  return lookup(joint_freq, JointKey{p.tag, p.text_word, p.visual_word});
}

double CoolingSchedule::temperature(int sweep) const {
  return std::max(t0 * std::pow(rho, sweep), t_min);
}

void CoolingSchedule::validate() const {
  if (t0 <= 0.0) throw std::invalid_argument("t0 must be positive");
  if (rho <= 0.0 || rho > 1.0)
    throw std::invalid_argument("rho must be in (0, 1]");
  if (sweeps < 0) throw std::invalid_argument("sweeps must be >= 0");
  if (t_min <= 0.0) throw std::invalid_argument("t_min must be positive");
}

void HyperParams::validate() const {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  if (zipf_s <= 1.0) throw std::invalid_argument("zipf_s must exceed 1");
  if (fixed_k_var <= 0.0)
    throw std::invalid_argument("fixed_k_var must be positive");
  for (double l : lambda_edge)
    if (l < 0.0) throw std::invalid_argument("edge weights must be >= 0");
  if (tau_prune < 0.0) throw std::invalid_argument("tau_prune must be >= 0");
  if (smoothing_eps <= 0.0)
    throw std::invalid_argument("smoothing_eps must be positive");
  if (sigma_floor <= 0.0)
    throw std::invalid_argument("sigma_floor must be positive");
  anneal.validate();
  if (alpha_sim < 0.0 || alpha_sim > 1.0)
    throw std::invalid_argument("alpha_sim must be in [0, 1]");
  if (beta_kl < 0.0) throw std::invalid_argument("beta_kl must be >= 0");
  for (double l : lambda_track)
    if (l < 0.0) throw std::invalid_argument("track weights must be >= 0");
  if (tau_link < 0.0) throw std::invalid_argument("tau_link must be >= 0");
  if (max_window_gap < 0)
    throw std::invalid_argument("max_window_gap must be >= 0");
}

}  // namespace storyline
