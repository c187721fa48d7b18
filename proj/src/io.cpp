#include "storyline/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace storyline {

using json = nlohmann::ordered_json;

namespace {

std::string format_error(const std::string& file, int line,
                         const std::string& message) {
  std::ostringstream os;
  os << file;
  if (line > 0) os << ":" << line;
  os << ": " << message;
  return os.str();
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> string_list(const json& j, const std::string& key,
                                     const std::string& path, int line) {
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string())
      throw SchemaError(path, line, key + " must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

json freq_table(const WordFreq& m) {
  json out = json::object();
  for (const auto& [w, f] : m) out[w] = f;
  return out;
}

WordFreq read_freq_table(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, 0, "word table must be an object");
  WordFreq out;
  for (const auto& [w, f] : j.items()) {
    if (!f.is_number()) throw SchemaError(path, 0, "frequency must be a number");
    out[w] = f.get<double>();
  }
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, 0, "cannot open file");
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    throw SchemaError(path, 0, std::string("bad JSON: ") + e.what());
  }
}

}  // namespace

SchemaError::SchemaError(std::string file, int line,
                         const std::string& message)
    : std::runtime_error(format_error(file, line, message)),
      file_(std::move(file)),
      line_(line) {}

Corpus read_corpus_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, 0, "cannot open file");
  static const std::vector<std::string> known = {
      "id", "window", "who", "where", "what", "face", "obj",
      "tt_pairs", "ii_pairs", "joint_pairs"};
  Corpus corpus;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const std::exception& e) {
      throw SchemaError(path, lineno, std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object())
      throw SchemaError(path, lineno, "story must be an object");
    for (const auto& [key, v] : j.items())
      if (std::find(known.begin(), known.end(), key) == known.end())
        throw SchemaError(path, lineno, "unknown field \"" + key + "\"");

    Story s;
    if (!j.contains("id") || !j["id"].is_string() ||
        j["id"].get<std::string>().empty())
      throw SchemaError(path, lineno, "story needs a nonempty string id");
    s.id = j["id"].get<std::string>();
    if (j.contains("window")) {
      if (!j["window"].is_number_integer())
        throw SchemaError(path, lineno, "window must be an integer");
      s.window = j["window"].get<int>();
    }
    for (Component c : kAllComponents) {
      const std::string key = component_name(c);
      if (!j.contains(key)) continue;
      if (!j[key].is_array())
        throw SchemaError(path, lineno, key + " must be an array");
      s.component(c) = string_list(j[key], key, path, lineno);
    }
    const auto read_pairs = [&](const std::string& key,
                                std::vector<WordPair>* out) {
      if (!j.contains(key)) return;
      if (!j[key].is_array())
        throw SchemaError(path, lineno, key + " must be an array");
      for (const auto& p : j[key]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() ||
            !p[1].is_string())
          throw SchemaError(path, lineno,
                            key + " entries must be [word, word]");
        out->push_back({p[0].get<std::string>(), p[1].get<std::string>()});
      }
    };
    read_pairs("tt_pairs", &s.tt_pairs);
    read_pairs("ii_pairs", &s.ii_pairs);
    if (j.contains("joint_pairs")) {
      if (!j["joint_pairs"].is_array())
        throw SchemaError(path, lineno, "joint_pairs must be an array");
      for (const auto& p : j["joint_pairs"]) {
        if (!p.is_array() || p.size() != 3 || !p[0].is_string() ||
            !p[1].is_string() || !p[2].is_string())
          throw SchemaError(path, lineno,
                            "joint_pairs entries must be [tag, word, word]");
        JointTag tag;
        if (!joint_tag_from_name(p[0].get<std::string>(), &tag))
          throw SchemaError(path, lineno,
                            "unknown joint tag \"" +
                                p[0].get<std::string>() + "\"");
        s.joint_pairs.push_back(
            {tag, p[1].get<std::string>(), p[2].get<std::string>()});
      }
    }
    try {
      validate_story(s);
    } catch (const std::invalid_argument& e) {
      throw SchemaError(path, lineno, e.what());
    }
    corpus.push_back(std::move(s));
  }
  if (corpus.empty()) throw SchemaError(path, 0, "corpus has no stories");
  try {
    validate_corpus(corpus);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, 0, e.what());
  }
  return corpus;
}

void write_corpus_jsonl(const std::string& path, const Corpus& corpus) {
  auto out = open_out(path);
  for (const Story& s : corpus) {
    json j;
    j["id"] = s.id;
    j["window"] = s.window;
    for (Component c : kAllComponents)
      j[component_name(c)] = s.component(c);
    json tt = json::array();
    for (const auto& [a, b] : s.tt_pairs) tt.push_back({a, b});
    j["tt_pairs"] = tt;
    json ii = json::array();
    for (const auto& [a, b] : s.ii_pairs) ii.push_back({a, b});
    j["ii_pairs"] = ii;
    json jp = json::array();
    for (const auto& p : s.joint_pairs)
      jp.push_back({joint_tag_name(p.tag), p.text_word, p.visual_word});
    j["joint_pairs"] = jp;
    out << j.dump() << "\n";
  }
}

ConfigMap read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, 0, "cannot open file");
  ConfigMap out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SchemaError(path, lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw SchemaError(path, lineno, "empty key");
    out[key] = value;  // later lines win
  }
  return out;
}

void merge_overrides(ConfigMap& config,
                     const std::vector<std::string>& items) {
  for (const std::string& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || trim(item.substr(0, eq)).empty())
      throw SchemaError("--set", 0, "expected key=value, got \"" + item + "\"");
    config[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
}

namespace {

struct ConfigParser {
  const ConfigMap& map;
  const std::string& source;

  double num(const std::string& key, const std::string& raw) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(raw, &used);
      if (used != raw.size()) throw std::invalid_argument("trailing text");
      return v;
    } catch (const std::exception&) {
      throw SchemaError(source, 0, key + ": expected a number, got \"" +
                                       raw + "\"");
    }
  }

  long long integer(const std::string& key, const std::string& raw) const {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(raw, &used);
      if (used != raw.size()) throw std::invalid_argument("trailing text");
      return v;
    } catch (const std::exception&) {
      throw SchemaError(source, 0, key + ": expected an integer, got \"" +
                                       raw + "\"");
    }
  }

  bool boolean(const std::string& key, const std::string& raw) const {
    if (raw == "true" || raw == "1") return true;
    if (raw == "false" || raw == "0") return false;
    throw SchemaError(source, 0, key + ": expected true/false, got \"" +
                                     raw + "\"");
  }
};

}  // namespace

RunConfig parse_run_config(const ConfigMap& config,
                           const std::string& source_name) {
  RunConfig rc;
  const ConfigParser p{config, source_name};
  for (const auto& [key, raw] : config) {
    HyperParams& h = rc.hyper;
    SynthConfig& sy = rc.synth;
    if (key == "alpha") h.alpha = p.num(key, raw);
    else if (key == "zipf_s") {
      h.zipf_s = p.num(key, raw);
      sy.zipf_s = h.zipf_s;
    }
    else if (key == "fixed_k") h.fixed_k = p.boolean(key, raw);
    else if (key == "fixed_k_mu") h.fixed_k_mu = p.num(key, raw);
    else if (key == "fixed_k_var") h.fixed_k_var = p.num(key, raw);
    else if (key == "lambda_who") h.lambda_edge[0] = p.num(key, raw);
    else if (key == "lambda_where") h.lambda_edge[1] = p.num(key, raw);
    else if (key == "lambda_what") h.lambda_edge[2] = p.num(key, raw);
    else if (key == "lambda_face") h.lambda_edge[3] = p.num(key, raw);
    else if (key == "lambda_obj") h.lambda_edge[4] = p.num(key, raw);
    else if (key == "tau_prune") h.tau_prune = p.num(key, raw);
    else if (key == "smoothing_eps") h.smoothing_eps = p.num(key, raw);
    else if (key == "sigma_floor") h.sigma_floor = p.num(key, raw);
    else if (key == "t0") rc.schedule.t0 = p.num(key, raw);
    else if (key == "rho") rc.schedule.rho = p.num(key, raw);
    else if (key == "sweeps")
      rc.schedule.sweeps = static_cast<int>(p.integer(key, raw));
    else if (key == "t_min") rc.schedule.t_min = p.num(key, raw);
    else if (key == "annealed_target") h.annealed_target = p.boolean(key, raw);
    else if (key == "random_init") h.random_init = p.boolean(key, raw);
    else if (key == "alpha_sim") h.alpha_sim = p.num(key, raw);
    else if (key == "beta_kl") h.beta_kl = p.num(key, raw);
    else if (key == "track_who") h.lambda_track[0] = p.num(key, raw);
    else if (key == "track_where") h.lambda_track[1] = p.num(key, raw);
    else if (key == "track_what") h.lambda_track[2] = p.num(key, raw);
    else if (key == "track_face") h.lambda_track[3] = p.num(key, raw);
    else if (key == "track_obj") h.lambda_track[4] = p.num(key, raw);
    else if (key == "tau_link") h.tau_link = p.num(key, raw);
    else if (key == "max_window_gap")
      h.max_window_gap = static_cast<int>(p.integer(key, raw));
    else if (key == "chains") rc.chains = static_cast<int>(p.integer(key, raw));
    else if (key == "top_n") rc.top_n = static_cast<int>(p.integer(key, raw));
    else if (key == "topics") sy.topics = static_cast<int>(p.integer(key, raw));
    else if (key == "stories")
      sy.stories = static_cast<int>(p.integer(key, raw));
    else if (key == "max_topic_size")
      sy.max_topic_size = static_cast<int>(p.integer(key, raw));
    else if (key == "vocab_who") sy.vocab[0] = static_cast<int>(p.integer(key, raw));
    else if (key == "vocab_where") sy.vocab[1] = static_cast<int>(p.integer(key, raw));
    else if (key == "vocab_what") sy.vocab[2] = static_cast<int>(p.integer(key, raw));
    else if (key == "vocab_face") sy.vocab[3] = static_cast<int>(p.integer(key, raw));
    else if (key == "vocab_obj") sy.vocab[4] = static_cast<int>(p.integer(key, raw));
    else if (key == "dirichlet") sy.dirichlet = p.num(key, raw);
    else if (key == "noise") sy.noise = p.num(key, raw);
    else if (key == "base_count_lo")
      sy.base_count_lo = static_cast<int>(p.integer(key, raw));
    else if (key == "base_count_hi")
      sy.base_count_hi = static_cast<int>(p.integer(key, raw));
    else if (key == "pair_rate") sy.pair_rate = p.num(key, raw);
    else if (key == "window") sy.window = static_cast<int>(p.integer(key, raw));
    else if (key == "topic_seed")
      sy.topic_seed = static_cast<std::uint64_t>(p.integer(key, raw));
    else if (key == "ratio_mu_who_what") sy.ratio_mu[1] = p.num(key, raw);
    else if (key == "ratio_sigma_who_what") sy.ratio_sigma[1] = p.num(key, raw);
    else if (key == "ratio_mu_where_what") sy.ratio_mu[2] = p.num(key, raw);
    else if (key == "ratio_sigma_where_what")
      sy.ratio_sigma[2] = p.num(key, raw);
    else if (key == "ratio_mu_text_image") sy.ratio_mu[3] = p.num(key, raw);
    else if (key == "ratio_sigma_text_image")
      sy.ratio_sigma[3] = p.num(key, raw);
    else throw SchemaError(source_name, 0, "unknown key \"" + key + "\"");
  }
  rc.hyper.anneal = rc.schedule;
  try {
    rc.hyper.validate();
    rc.schedule.validate();
    rc.synth.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(source_name, 0, e.what());
  }
  if (rc.chains < 1) throw SchemaError(source_name, 0, "chains must be >= 1");
  if (rc.top_n < 1) throw SchemaError(source_name, 0, "top_n must be >= 1");
  return rc;
}

namespace {

json top_entries(const WordFreq& m, int top_n) {
  std::vector<std::pair<std::string, double>> v(m.begin(), m.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (static_cast<int>(v.size()) > top_n) v.resize(top_n);
  json out = json::array();
  for (const auto& [w, f] : v) out.push_back({w, f});
  return out;
}

template <typename Table, typename Render>
json top_pairs(const Table& m, int top_n, Render render) {
  using Entry = typename Table::value_type;
  std::vector<const Entry*> v;
  for (const auto& e : m) v.push_back(&e);
  std::sort(v.begin(), v.end(), [](const Entry* a, const Entry* b) {
    if (a->second != b->second) return a->second > b->second;
    return a->first < b->first;
  });
  if (static_cast<int>(v.size()) > top_n) v.resize(top_n);
  json out = json::array();
  for (const Entry* e : v) out.push_back(render(*e));
  return out;
}

}  // namespace

void write_detect_output(const std::string& path, const DetectOutput& out,
                         int top_n) {
  json j;
  j["window"] = out.window;
  j["seed"] = out.seed;
  j["log_posterior"] = out.log_post;
  json part = json::object();
  for (std::size_t i = 0; i < out.ids.size(); ++i)
    part[out.ids[i]] = out.labels[i];
  j["partition"] = part;
  json topics = json::array();
  for (const TopicNode& t : out.topics) {
    json tj;
    tj["label"] = t.label;
    tj["window"] = t.window;
    tj["size"] = t.size;
    tj["branch_freq"] = t.params.branch_freq;
    json top = json::object();
    for (Component c : kAllComponents)
      top[component_name(c)] =
          top_entries(t.params.word_freq[static_cast<int>(c)], top_n);
    top["tt_pairs"] = top_pairs(t.params.tt_freq, top_n, [](const auto& e) {
      return json::array({e.first.first, e.first.second, e.second});
    });
    top["ii_pairs"] = top_pairs(t.params.ii_freq, top_n, [](const auto& e) {
      return json::array({e.first.first, e.first.second, e.second});
    });
    top["joint_pairs"] =
        top_pairs(t.params.joint_freq, top_n, [](const auto& e) {
          return json::array({joint_tag_name(std::get<0>(e.first)),
                              std::get<1>(e.first), std::get<2>(e.first),
                              e.second});
        });
    tj["top"] = top;
    json wf = json::object();
    for (Component c : kAllComponents)
      wf[component_name(c)] =
          freq_table(t.params.word_freq[static_cast<int>(c)]);
    tj["word_freq"] = wf;
    topics.push_back(tj);
  }
  j["topics"] = topics;
  j["trace"] = out.trace;
  auto f = open_out(path);
  f << j.dump(2) << "\n";
}

DetectOutput read_detect_output(const std::string& path) {
  const json j = parse_file(path);
  if (!j.is_object() || !j.contains("partition") || !j.contains("topics"))
    throw SchemaError(path, 0, "not a detection output file");
  DetectOutput out;
  out.window = j.value("window", 0);
  out.seed = j.value("seed", 0ULL);
  out.log_post = j.value("log_posterior", 0.0);
  if (!j["partition"].is_object())
    throw SchemaError(path, 0, "partition must be an object");
  for (const auto& [id, label] : j["partition"].items()) {
    if (!label.is_number_integer())
      throw SchemaError(path, 0, "labels must be integers");
    out.ids.push_back(id);
    out.labels.push_back(label.get<int>());
  }
  if (!j["topics"].is_array())
    throw SchemaError(path, 0, "topics must be an array");
  for (const auto& tj : j["topics"]) {
    TopicNode t;
    t.label = tj.value("label", 0);
    t.window = tj.value("window", out.window);
    t.size = tj.value("size", 1);
    t.params.branch_freq = tj.value("branch_freq", 1LL);
    if (!tj.contains("word_freq") || !tj["word_freq"].is_object())
      throw SchemaError(path, 0, "topic needs a word_freq object");
    for (Component c : kAllComponents) {
      const std::string key = component_name(c);
      if (tj["word_freq"].contains(key))
        t.params.word_freq[static_cast<int>(c)] =
            read_freq_table(tj["word_freq"][key], path);
    }
    out.topics.push_back(std::move(t));
  }
  if (j.contains("trace"))
    for (const auto& v : j["trace"]) out.trace.push_back(v.get<double>());
  return out;
}

void write_partition(const std::string& path,
                     const std::vector<std::string>& ids,
                     const Partition& labels) {
  json part = json::object();
  for (std::size_t i = 0; i < ids.size(); ++i) part[ids[i]] = labels[i];
  json j;
  j["partition"] = part;
  auto f = open_out(path);
  f << j.dump(2) << "\n";
}

std::map<std::string, int> read_partition(const std::string& path) {
  const json j = parse_file(path);
  if (!j.is_object() || !j.contains("partition") ||
      !j["partition"].is_object())
    throw SchemaError(path, 0, "expected a partition object");
  std::map<std::string, int> out;
  for (const auto& [id, label] : j["partition"].items()) {
    if (!label.is_number_integer())
      throw SchemaError(path, 0, "labels must be integers");
    out[id] = label.get<int>();
  }
  if (out.empty()) throw SchemaError(path, 0, "partition is empty");
  return out;
}

std::vector<PairAnnotation> read_pairs(const std::string& path) {
  const json j = parse_file(path);
  if (!j.is_array()) throw SchemaError(path, 0, "expected an array of pairs");
  std::vector<PairAnnotation> out;
  for (const auto& pj : j) {
    if (!pj.is_object() || !pj.contains("a") || !pj.contains("b") ||
        !pj.contains("same") || !pj["a"].is_string() ||
        !pj["b"].is_string() || !pj["same"].is_boolean())
      throw SchemaError(path, 0,
                        "each pair needs string a, string b, boolean same");
    out.push_back({pj["a"].get<std::string>(), pj["b"].get<std::string>(),
                   pj["same"].get<bool>()});
  }
  if (out.empty()) throw SchemaError(path, 0, "no pairs");
  return out;
}

void write_trajectories(const std::string& path, const TrajectorySet& set) {
  json j;
  json nodes = json::array();
  for (std::size_t i = 0; i < set.nodes.size(); ++i) {
    const TopicNode& t = set.nodes[i];
    nodes.push_back({{"index", i},
                     {"window", t.window},
                     {"label", t.label},
                     {"size", t.size}});
  }
  j["nodes"] = nodes;
  json links = json::array();
  for (const TrajectoryLink& l : set.links)
    links.push_back(
        {{"a", l.a}, {"b", l.b}, {"similarity", l.similarity}});
  j["links"] = links;
  j["trajectories"] = set.trajectories;
  auto f = open_out(path);
  f << j.dump(2) << "\n";
}

}  // namespace storyline
