#pragma once

#include <array>
#include <map>
#include <string>
#include <tuple>

#include "storyline/story.hpp"

namespace storyline {

// The four component-count ratios modeled as Gaussians.
enum class RatioKind { WhoWhere = 0, WhoWhat = 1, WhereWhat = 2, TextImage = 3 };

inline constexpr std::array<RatioKind, 4> kAllRatios = {
    RatioKind::WhoWhere, RatioKind::WhoWhat, RatioKind::WhereWhat,
    RatioKind::TextImage};

const char* ratio_name(RatioKind r);

struct GaussParam {
  double mu = 1.0;
  double sigma = 0.1;
};

using WordFreq = std::map<std::string, double>;
using PairFreq = std::map<WordPair, double>;
// Joint pairs keyed by (tag, text word, visual word).
using JointKey = std::tuple<JointTag, std::string, std::string>;
using JointPairFreq = std::map<JointKey, double>;

// Fitted parameters of one topic. Word and pair tables hold relative
// frequencies (each table sums to 1 when nonempty); branch_freq is the
// topic's story count.
struct TopicParams {
  std::array<WordFreq, 5> word_freq;  // indexed by Component
  PairFreq tt_freq;
  PairFreq ii_freq;
  JointPairFreq joint_freq;
  std::array<GaussParam, 4> ratio_gauss;  // indexed by RatioKind
  long long branch_freq = 1;

  double word_frequency(Component c, const std::string& w) const;
  double tt_frequency(const WordPair& p) const;
  double ii_frequency(const WordPair& p) const;
  double joint_frequency(const JointPair& p) const;
};

struct CoolingSchedule {
  double t0 = 10.0;
  double rho = 0.97;
  int sweeps = 500;
  double t_min = 0.2;

  double temperature(int sweep) const;
  void validate() const;
};

struct HyperParams {
  // Posterior
  double alpha = 0.2;       // partition-count penalty, dataset-level
  double zipf_s = 1.75;     // branching-frequency Zipf exponent
  bool fixed_k = false;     // optional Gaussian prior on the topic count
  double fixed_k_mu = 10.0;
  double fixed_k_var = 0.5;

  // Adjacency graph
  std::array<double, 5> lambda_edge = {0.1, 0.1, 0.4, 0.1, 0.3};
  double tau_prune = 160.0;
  double smoothing_eps = 1e-6;

  // Estimation
  double sigma_floor = 0.1;

  // Sampler
  CoolingSchedule anneal;
  bool annealed_target = false;  // divide flip targets by T as well
  bool random_init = false;      // start from random labels instead of one cluster

  // Tracking
  double alpha_sim = 0.8;
  double beta_kl = 0.005;
  std::array<double, 5> lambda_track = {0.1, 0.1, 0.4, 0.1, 0.3};
  double tau_link = 0.7;
  int max_window_gap = 0;  // 0 = link across any gap

  void validate() const;  // throws std::invalid_argument
};

}  // namespace storyline
