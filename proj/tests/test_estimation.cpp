#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "storyline/estimation.hpp"
#include "storyline/rng.hpp"

using namespace storyline;

namespace {

Corpus two_cluster_corpus() {
  Corpus c(4);
  c[0].id = "a0"; c[0].who = {"a"}; c[0].what = {"x", "x"};
  c[1].id = "a1"; c[1].who = {"a", "b"}; c[1].what = {"x", "y"};
  c[2].id = "b0"; c[2].who = {"c"}; c[2].what = {"z"};
  c[3].id = "b1"; c[3].who = {"c"}; c[3].what = {"z", "z"};
  return c;
}

Corpus random_corpus(int n, std::uint64_t seed) {
  Rng rng(seed);
  Corpus c(n);
  const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f"};
  for (int i = 0; i < n; ++i) {
    c[i].id = "s" + std::to_string(i);
    for (int k = 0; k < 2 + static_cast<int>(rng.uniform_int(3)); ++k)
      c[i].who.push_back(pool[rng.uniform_int(pool.size())]);
    for (int k = 0; k < 1 + static_cast<int>(rng.uniform_int(4)); ++k)
      c[i].what.push_back(pool[rng.uniform_int(pool.size())]);
    if (rng.bernoulli(0.5)) c[i].where.push_back("w");
    if (rng.bernoulli(0.5)) c[i].face.push_back("f");
    if (rng.bernoulli(0.5)) c[i].obj.push_back("o");
  }
  return c;
}

}  // namespace

TEST_CASE("canonicalize relabels by first occurrence") {
  CHECK(canonicalize({3, 3, 1, 3, 0}) == Partition{0, 0, 1, 0, 2});
  CHECK(canonicalize({0, 1, 2}) == Partition{0, 1, 2});
  CHECK(canonicalize({7, 7, 7}) == Partition{0, 0, 0});
  CHECK_THROWS_AS(canonicalize({0, -1}), std::invalid_argument);
  CHECK(cluster_count({5, 2, 5, 9}) == 3);
}

TEST_CASE("clusters_of groups ascending indices by label") {
  const auto cl = clusters_of({1, 0, 1, 2, 0});
  REQUIRE(cl.size() == 3);
  CHECK(cl[0] == std::vector<int>{0, 2});
  CHECK(cl[1] == std::vector<int>{1, 4});
  CHECK(cl[2] == std::vector<int>{3});
}

TEST_CASE("fit_topic computes relative frequencies and ratio Gaussians") {
  const Corpus c = two_cluster_corpus();
  HyperParams hyper;
  const TopicParams t = fit_topic(c, {0, 1}, hyper);

  // who counts a:2 b:1, what counts x:3 y:1
  CHECK(t.word_frequency(Component::Who, "a") == 2.0 / 3.0);
  CHECK(t.word_frequency(Component::Who, "b") == 1.0 / 3.0);
  CHECK(t.word_frequency(Component::What, "x") == 3.0 / 4.0);
  CHECK(t.word_frequency(Component::What, "y") == 1.0 / 4.0);
  CHECK(t.word_frequency(Component::What, "zzz") == 0.0);
  CHECK(t.branch_freq == 2);

  // who/what ratios 0.5 and 1.0: mean 0.75, population sd 0.25
  const GaussParam& g = t.ratio_gauss[static_cast<int>(RatioKind::WhoWhat)];
  CHECK(g.mu == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(g.sigma == doctest::Approx(0.25).epsilon(1e-15));

  // no where or image words anywhere: those ratios keep the default mean
  // and get the sigma floor
  const GaussParam& gw = t.ratio_gauss[static_cast<int>(RatioKind::WhoWhere)];
  CHECK(gw.mu == 1.0);
  CHECK(gw.sigma == hyper.sigma_floor);

  // single story: one ratio sample, variance zero, sigma floored
  const TopicParams one = fit_topic(c, {0}, hyper);
  const GaussParam& g1 = one.ratio_gauss[static_cast<int>(RatioKind::WhoWhat)];
  CHECK(g1.mu == 0.5);
  CHECK(g1.sigma == hyper.sigma_floor);

  CHECK_THROWS_AS(fit_topic(c, {}, hyper), std::invalid_argument);
}

TEST_CASE("pair tables normalize per table") {
  Corpus c(2);
  c[0].id = "p0";
  c[0].who = {"a"}; c[0].what = {"x"};
  c[0].tt_pairs = {{"a", "x"}, {"a", "x"}};
  c[1].id = "p1";
  c[1].who = {"a"}; c[1].what = {"y"};
  c[1].tt_pairs = {{"a", "y"}};
  HyperParams hyper;
  const TopicParams t = fit_topic(c, {0, 1}, hyper);
  CHECK(t.tt_frequency({"a", "x"}) == 2.0 / 3.0);
  CHECK(t.tt_frequency({"a", "y"}) == 1.0 / 3.0);
  CHECK(t.tt_frequency({"x", "a"}) == 0.0);
}

TEST_CASE("log_posterior is invariant under label renaming") {
  const Corpus c = random_corpus(7, 17);
  HyperParams hyper;
  const Partition a = {0, 1, 0, 2, 1, 0, 2};
  const Partition b = {2, 0, 2, 1, 0, 2, 1};  // same partition, new names
  const Partition shuffled = {1, 0, 1, 5, 0, 1, 5};
  CHECK(log_posterior(c, a, hyper) == log_posterior(c, b, hyper));
  CHECK(log_posterior(c, a, hyper) == log_posterior(c, shuffled, hyper));
}

TEST_CASE("posterior parts: complexity moves by exactly alpha N per topic") {
  const Corpus c = random_corpus(8, 99);
  HyperParams hyper;
  hyper.alpha = 0.25;  // dyadic, so alpha*N*K is exact in floating point
  const auto one = log_posterior_parts(c, Partition(8, 0), hyper);
  const auto two = log_posterior_parts(c, {0, 0, 0, 0, 1, 1, 1, 1}, hyper);
  const auto three = log_posterior_parts(c, {0, 0, 0, 1, 1, 1, 2, 2}, hyper);
  CHECK(one.complexity == -0.25 * 8 * 1);
  CHECK(two.complexity - three.complexity == 0.25 * 8);
  CHECK(one.total == one.likelihood + one.complexity);
  CHECK(two.topics.size() == 2);
  CHECK(two.topics[0].branch_freq == 4);
}

TEST_CASE("fixed-k prior adds a Gaussian term in K") {
  const Corpus c = random_corpus(6, 3);
  HyperParams hyper;
  const double base = log_posterior(c, {0, 0, 1, 1, 2, 2}, hyper);
  hyper.fixed_k = true;
  hyper.fixed_k_mu = 3.0;
  hyper.fixed_k_var = 0.5;
  const double with_prior = log_posterior(c, {0, 0, 1, 1, 2, 2}, hyper);
  CHECK(with_prior - base ==
        doctest::Approx(gaussian_log_term(3.0, 3.0, std::sqrt(0.5)))
            .epsilon(1e-12));
}

TEST_CASE("log_posterior rejects malformed input") {
  const Corpus c = random_corpus(3, 1);
  HyperParams hyper;
  CHECK_THROWS_AS(log_posterior({}, {}, hyper), std::invalid_argument);
  CHECK_THROWS_AS(log_posterior(c, {0, 0}, hyper), std::invalid_argument);
}
