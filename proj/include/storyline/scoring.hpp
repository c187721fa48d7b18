#pragma once

#include <utility>
#include <vector>

#include "storyline/params.hpp"
#include "storyline/story.hpp"

namespace storyline {

// Sum of log(f + 1) over the words of one component. Words the topic has
// never seen have f = 0 and contribute nothing.
double score_component(const std::vector<std::string>& words,
                       const TopicParams& topic, Component c);

// Gaussian log-density; sigma must be positive and at or above sigma_floor.
double gaussian_log_term(double x, double mu, double sigma,
                         double sigma_floor = 0.0);

// log of the Zipf pmf f^{-s} / zeta(s), f >= 1, s > 1.
double zipf_log_prior(long long f, double s);

// Text part: three component word scores, the three count-ratio Gaussians,
// and the text-text co-occurrence pairs. A ratio term is included only when
// both counts are positive.
double score_text(const Story& story, const TopicParams& topic);

// Image part: face and object word scores plus face-object pairs.
double score_image(const Story& story, const TopicParams& topic);

// Joint part: text/image total-count ratio plus tagged cross-modal pairs.
double score_joint(const Story& story, const TopicParams& topic);

// Full topic score: text + image + joint + Zipf branching prior.
double score_topic(const Story& story, const TopicParams& topic,
                   const HyperParams& hyper);

// Best topic for a story under the model; returns (score, topic index).
std::pair<double, int> score_root(const Story& story,
                                  const std::vector<TopicParams>& model,
                                  const HyperParams& hyper);

}  // namespace storyline
