#include "jsqd/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace jsqd {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"system", {"n", "d", "lambda", "regime", "sub_cutoff", "super_cutoff", "dead_band", "k_threshold", "k_max"}},
      {"prelimit", {"replicates", "init", "seed", "grid_dt", "coords", "t_end"}},
      {"limit", {"replicates", "dt", "r"}},
      {"comparison",
       {"kind", "times", "coords", "ks_tolerance", "level", "trend_factor", "trend_slack", "lln_tolerance", "fluid_dt",
        "output"}},
  };
  return keys;
}

template <class T>
T get(const pt::ptree& tree, const std::string& section, const std::string& key, T fallback) {
  const auto v = tree.get_optional<std::string>(section + "." + key);
  if (!v) return fallback;
  try {
    if constexpr (std::is_same_v<T, std::string>) {
      return *v;
    } else if constexpr (std::is_floating_point_v<T>) {
      std::size_t used = 0;
      const double x = std::stod(*v, &used);
      if (used != v->size()) throw std::invalid_argument("trailing text");
      return x;
    } else {
      std::size_t used = 0;
      const long long x = std::stoll(*v, &used);
      if (used != v->size() || x < 0) throw std::invalid_argument("bad integer");
      return static_cast<T>(x);
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad value for [" + section + "] " + key + ": '" + *v + "'");
  }
}

template <class T>
std::vector<T> get_list(const pt::ptree& tree, const std::string& section, const std::string& key,
                        std::vector<T> fallback) {
  const auto v = tree.get_optional<std::string>(section + "." + key);
  if (!v) return fallback;
  std::string text = *v;
  for (char& ch : text) {
    if (ch == ',') ch = ' ';
  }
  std::istringstream ss(text);
  std::vector<T> out;
  T x{};
  while (ss >> x) out.push_back(x);
  if (!ss.eof() || out.empty()) throw std::invalid_argument("config: bad list for [" + section + "] " + key);
  return out;
}

}  // namespace

CompareConfig parse_compare_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end() || body.empty()) {
      throw std::invalid_argument("config: unknown section or top-level key '" + section + "'");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw std::invalid_argument("config: unknown key [" + section + "] " + key);
    }
  }

  CompareConfig cfg;
  cfg.kind = get<std::string>(tree, "comparison", "kind", "fluctuation");
  if (cfg.kind != "fluctuation" && cfg.kind != "lln") {
    throw std::invalid_argument("config: [comparison] kind must be fluctuation or lln");
  }
  const auto n = get<std::int64_t>(tree, "system", "n", 0);
  if (n < 1) throw std::invalid_argument("config: [system] n is required");
  const auto d_text = get<std::string>(tree, "system", "d", "");
  const auto lambda_text = get<std::string>(tree, "system", "lambda", "");
  if (d_text.empty() || lambda_text.empty()) throw std::invalid_argument("config: [system] d and lambda are required");
  const std::uint64_t seed = get<std::uint64_t>(tree, "prelimit", "seed", 1);
  const std::string init = get<std::string>(tree, "prelimit", "init", cfg.kind == "lln" ? "empty" : "mu");
  cfg.output = get<std::string>(tree, "comparison", "output", "");

  if (cfg.kind == "fluctuation") {
    auto& f = cfg.fluctuation;
    f.d_expr = d_text;
    f.lambda_expr = lambda_text;
    f.n = n;
    f.expected = parse_regime(get<std::string>(tree, "system", "regime", ""));
    f.classifier.sub_cutoff = get(tree, "system", "sub_cutoff", f.classifier.sub_cutoff);
    f.classifier.super_cutoff = get(tree, "system", "super_cutoff", f.classifier.super_cutoff);
    f.classifier.dead_band = get(tree, "system", "dead_band", f.classifier.dead_band);
    f.classifier.k_threshold = get(tree, "system", "k_threshold", f.classifier.k_threshold);
    f.classifier.k_max = get(tree, "system", "k_max", f.classifier.k_max);
    f.init = InitSpec::parse(init);
    f.seed = seed;
    f.grid_dt = get(tree, "prelimit", "grid_dt", f.grid_dt);
    f.prelimit_replicates = get(tree, "prelimit", "replicates", f.prelimit_replicates);
    f.limit_replicates = get(tree, "limit", "replicates", f.limit_replicates);
    f.limit_dt = get(tree, "limit", "dt", f.limit_dt);
    f.limit_r = get(tree, "limit", "r", f.limit_r);
    f.times = get_list<double>(tree, "comparison", "times", f.times);
    f.coords = get_list<std::size_t>(tree, "comparison", "coords", f.coords);
    f.ks_tolerance = get(tree, "comparison", "ks_tolerance", f.ks_tolerance);
    f.level = get(tree, "comparison", "level", f.level);
    const auto factor = get<std::int64_t>(tree, "comparison", "trend_factor", 0);
    if (factor > 0) cfg.trend_factor = factor;
    cfg.trend_slack = get(tree, "comparison", "trend_slack", cfg.trend_slack);
  } else {
    auto& l = cfg.lln;
    l.params = ParameterRule::parse(d_text, lambda_text).at(n);
    l.init = InitSpec::parse(init);
    l.seed = seed;
    l.replicates = get(tree, "prelimit", "replicates", l.replicates);
    l.grid_dt = get(tree, "prelimit", "grid_dt", l.grid_dt);
    l.coords = get(tree, "prelimit", "coords", l.coords);
    l.t_end = get(tree, "prelimit", "t_end", l.t_end);
    l.fluid_dt = get(tree, "comparison", "fluid_dt", l.fluid_dt);
    cfg.lln_tolerance = get(tree, "comparison", "lln_tolerance", cfg.lln_tolerance);
  }
  return cfg;
}

CompareConfig load_compare_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_compare_config(ss.str());
}

}  // namespace jsqd
