#include "storyline/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace storyline {

namespace {

double gamma_draw(Rng& rng, double shape) {
  if (shape < 1.0) {
    double u;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    return gamma_draw(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal(0.0, 1.0);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v;
  }
}

std::vector<double> dirichlet_draw(Rng& rng, int dim, double conc) {
  std::vector<double> out(dim);
  double total = 0.0;
  for (double& x : out) {
    x = gamma_draw(rng, conc);
    total += x;
  }
  while (total <= 0.0) {  // all draws underflowed; redraw
    total = 0.0;
    for (double& x : out) {
      x = gamma_draw(rng, conc);
      total += x;
    }
  }
  for (double& x : out) x /= total;
  return out;
}

int categorical(Rng& rng, const std::vector<double>& dist) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    acc += dist[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(dist.size()) - 1;
}

std::string token(Component c, int index) {
  return std::string(component_name(c)) + std::to_string(index);
}

// Topic sizes scaled to a fixed total by largest remainder, every topic
// keeping at least one story.
std::vector<int> scale_sizes(const std::vector<int>& raw, int target) {
  const int k = static_cast<int>(raw.size());
  double total = 0.0;
  for (int z : raw) total += z;
  std::vector<int> out(k);
  std::vector<std::pair<double, int>> frac;
  int assigned = 0;
  for (int i = 0; i < k; ++i) {
    const double q = raw[i] * static_cast<double>(target) / total;
    out[i] = static_cast<int>(std::floor(q));
    assigned += out[i];
    frac.push_back({q - out[i], i});
  }
  std::sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (int r = 0; r < target - assigned; ++r) ++out[frac[r % k].second];
  for (int i = 0; i < k; ++i) {
    while (out[i] < 1) {
      const int big = static_cast<int>(
          std::max_element(out.begin(), out.end()) - out.begin());
      if (out[big] <= 1) throw std::invalid_argument("too few stories");
      --out[big];
      ++out[i];
    }
  }
  return out;
}

}  // namespace

void SynthConfig::validate() const {
  if (topics < 1) throw std::invalid_argument("topics must be >= 1");
  if (stories < 0) throw std::invalid_argument("stories must be >= 0");
  if (stories > 0 && stories < topics)
    throw std::invalid_argument("stories must cover every topic");
  if (zipf_s <= 1.0) throw std::invalid_argument("zipf_s must exceed 1");
  if (max_topic_size < 1)
    throw std::invalid_argument("max_topic_size must be >= 1");
  for (int v : vocab)
    if (v < 1) throw std::invalid_argument("vocab sizes must be >= 1");
  if (dirichlet <= 0.0)
    throw std::invalid_argument("dirichlet must be positive");
  if (noise < 0.0 || noise > 1.0)
    throw std::invalid_argument("noise must be in [0, 1]");
  if (base_count_lo < 1 || base_count_hi < base_count_lo)
    throw std::invalid_argument("bad base count range");
  for (int r = 1; r < 4; ++r) {
    if (ratio_mu[r] <= 0.0)
      throw std::invalid_argument("ratio means must be positive");
    if (ratio_sigma[r] <= 0.0)
      throw std::invalid_argument("ratio sigmas must be positive");
  }
  if (pair_rate < 0.0 || pair_rate > 1.0)
    throw std::invalid_argument("pair_rate must be in [0, 1]");
}

int zipf_draw(Rng& rng, double s, int max_value) {
  double z = 0.0;
  for (int f = 1; f <= max_value; ++f) z += std::pow(f, -s);
  const double u = rng.uniform() * z;
  double acc = 0.0;
  for (int f = 1; f <= max_value; ++f) {
    acc += std::pow(f, -s);
    if (u < acc) return f;
  }
  return max_value;
}

SynthResult generate(const SynthConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(derive_seed(seed, "synth"));
  Rng topic_rng(derive_seed(
      config.topic_seed != 0 ? config.topic_seed : seed, "synth-topics"));

  // Word distributions, one per topic and component
  std::vector<std::array<std::vector<double>, 5>> topic_words(config.topics);
  for (auto& topic : topic_words)
    for (int c = 0; c < 5; ++c)
      topic[c] = dirichlet_draw(topic_rng, config.vocab[c], config.dirichlet);

  std::vector<int> sizes(config.topics);
  for (int& z : sizes) z = zipf_draw(rng, config.zipf_s, config.max_topic_size);
  if (config.stories > 0) sizes = scale_sizes(sizes, config.stories);

  SynthResult result;
  result.topic_sizes = sizes;
  int next_id = 0;
  for (int k = 0; k < config.topics; ++k) {
    for (int s = 0; s < sizes[k]; ++s) {
      Story story;
      story.id = "s" + std::to_string(next_id++);
      story.window = config.window;

      const int what_n =
          config.base_count_lo +
          static_cast<int>(rng.uniform_int(
              config.base_count_hi - config.base_count_lo + 1));
      const auto ratio = [&](RatioKind r) {
        const int i = static_cast<int>(r);
        return rng.normal(config.ratio_mu[i], config.ratio_sigma[i]);
      };
      const int who_n = std::max(
          0, static_cast<int>(std::lround(what_n * ratio(RatioKind::WhoWhat))));
      const int where_n = std::max(
          0,
          static_cast<int>(std::lround(what_n * ratio(RatioKind::WhereWhat))));
      const int text_n = who_n + where_n + what_n;
      const double ti = std::max(1e-3, ratio(RatioKind::TextImage));
      const int img_n =
          std::max(0, static_cast<int>(std::lround(text_n / ti)));
      int face_n = 0;
      for (int i = 0; i < img_n; ++i)
        if (rng.bernoulli(0.5)) ++face_n;
      const int obj_n = img_n - face_n;

      const auto draw_words = [&](Component c, int count) {
        const int ci = static_cast<int>(c);
        auto& list = story.component(c);
        for (int i = 0; i < count; ++i) {
          const int w =
              rng.bernoulli(config.noise)
                  ? static_cast<int>(rng.uniform_int(config.vocab[ci]))
                  : categorical(rng, topic_words[k][ci]);
          list.push_back(token(c, w));
        }
      };
      draw_words(Component::Who, who_n);
      draw_words(Component::Where, where_n);
      draw_words(Component::What, what_n);
      draw_words(Component::Face, face_n);
      draw_words(Component::Obj, obj_n);

      const auto pick = [&](const std::vector<std::string>& v) {
        return v[rng.uniform_int(v.size())];
      };
      const auto pair_count = [&](const std::vector<std::string>& a,
                                  const std::vector<std::string>& b) {
        return static_cast<int>(std::lround(
            config.pair_rate * std::min(a.size(), b.size())));
      };
      const auto add_tt = [&](const std::vector<std::string>& a,
                              const std::vector<std::string>& b) {
        for (int i = 0; i < pair_count(a, b); ++i)
          story.tt_pairs.push_back({pick(a), pick(b)});
      };
      add_tt(story.who, story.where);
      add_tt(story.who, story.what);
      add_tt(story.where, story.what);
      for (int i = 0; i < pair_count(story.face, story.obj); ++i)
        story.ii_pairs.push_back({pick(story.face), pick(story.obj)});
      const auto add_joint = [&](JointTag tag,
                                 const std::vector<std::string>& text,
                                 const std::vector<std::string>& vis) {
        for (int i = 0; i < pair_count(text, vis); ++i)
          story.joint_pairs.push_back({tag, pick(text), pick(vis)});
      };
      add_joint(JointTag::FaceWho, story.who, story.face);
      add_joint(JointTag::FaceWhat, story.what, story.face);
      add_joint(JointTag::ObjWhat, story.what, story.obj);

      result.corpus.push_back(std::move(story));
      result.truth.push_back(k);
    }
  }
  return result;
}

}  // namespace storyline
