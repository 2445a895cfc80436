#include "jsqd/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace jsqd {

using nlohmann::ordered_json;

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

ordered_json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

ordered_json params_json(const SystemParams& p) {
  return ordered_json{{"n", p.n}, {"d", p.d}, {"lambda", p.lambda}};
}

}  // namespace

void write_paths_csv(std::ostream& out, std::vector<PathRows> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const PathRows& a, const PathRows& b) { return a.replicate < b.replicate; });
  out << "replicate,time,coord,value\n";
  for (const auto& r : rows) {
    const SampledPath& p = *r.path;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const std::string t = format_value(p.times[j]);
      for (std::size_t i = 0; i < p.coords(); ++i) {
        out << r.replicate << ',' << t << ',' << (r.first_coord + i) << ',' << format_value(p.values[i][j]) << '\n';
      }
    }
  }
}

void write_text_file(const std::string& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + file + "' for writing: " + std::strerror(errno));
  out << text;
  out.close();
  if (!out) throw std::runtime_error("write to '" + file + "' failed");
}

void write_paths_csv(const std::string& file, std::vector<PathRows> rows) {
  std::ostringstream ss;
  write_paths_csv(ss, std::move(rows));
  write_text_file(file, ss.str());
}

ordered_json to_json(const LimitRegime& regime) {
  ordered_json j;
  j["kind"] = to_string(regime.kind);
  j["params"] = params_json(regime.params);
  if (regime.kind == RegimeKind::Sub) j["k"] = regime.k;
  if (regime.kind == RegimeKind::Critical) j["c"] = regime.c;
  if (regime.kind != RegimeKind::Ambiguous) j["alpha"] = number_or_inf(regime.alpha);
  const auto& d = regime.diagnostics;
  j["diagnostics"] = ordered_json{{"d_over_sqrt_n", d.d_over_sqrt_n},
                                  {"sqrt_n_gap", d.sqrt_n_gap},
                                  {"alpha_n", d.alpha_n},
                                  {"mu", d.mu},
                                  {"beta_prime_mu", d.beta_prime}};
  if (!regime.note.empty()) j["note"] = regime.note;
  return j;
}

ordered_json to_json(const ComparisonReport& report) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["kind"] = report.kind;
  j["passed"] = report.passed;
  if (report.expected) j["expected_regime"] = to_string(*report.expected);
  if (report.regime) j["regime"] = to_json(*report.regime);
  if (report.limit) {
    const auto& s = *report.limit;
    j["limit"] = ordered_json{{"regime", to_string(s.regime)}, {"r", s.r},          {"k", s.k},
                              {"alpha", number_or_inf(s.alpha)}, {"c", s.c}, {"z", s.z}};
  }
  ordered_json cells = ordered_json::array();
  for (const auto& c : report.cells) {
    cells.push_back(ordered_json{{"coord", c.coord},
                                 {"time", c.time},
                                 {"D", c.d},
                                 {"p_value", c.p_value},
                                 {"nA", c.n_a},
                                 {"nB", c.n_b},
                                 {"mean_prelimit", c.mean_a},
                                 {"var_prelimit", c.var_a},
                                 {"mean_limit", c.mean_b},
                                 {"var_limit", c.var_b},
                                 {"pass", c.pass}});
  }
  j["ks"] = cells;
  j["bonferroni_threshold"] = report.bonferroni_threshold;
  if (report.barrier) {
    const auto& b = *report.barrier;
    j["barrier"] = ordered_json{{"bound", b.bound},
                                {"max_z1", b.max_z1},
                                {"holds", b.holds},
                                {"gad_residual", b.gad_residual},
                                {"conservation_residual", b.conservation_residual},
                                {"invariant_violations", b.invariant_violations}};
  }
  if (report.martingale) {
    const auto& m = *report.martingale;
    j["martingale"] = ordered_json{{"mean_sup_norm_sq", m.mean_sup_norm_sq},
                                   {"standard_error", m.standard_error},
                                   {"bound", m.bound},
                                   {"replicates", m.replicates},
                                   {"violation", m.violation}};
  }
  if (report.lln) {
    const auto& l = *report.lln;
    j["lln"] = ordered_json{{"params", params_json(l.params)}, {"coords", l.coords}, {"sup_errors", l.sup_errors},
                            {"median", l.median},              {"p90", l.p90},       {"max", l.max}};
  }
  j["clip_events"] = report.clip_events;
  j["limit_steps"] = report.limit_steps;
  j["notes"] = report.notes;
  return j;
}

ordered_json to_json(const NearFixedPoint& mu, const DriftResidual& residual) {
  ordered_json j;
  j["params"] = params_json(mu.params);
  j["floor"] = mu.floor;
  j["mu"] = mu.mu;
  j["tail"] = mu.tail;
  j["residual"] = residual.residual;
  j["residual_l1"] = residual.l1;
  return j;
}

std::string report_csv(const ComparisonReport& report) {
  std::string out = "coord,time,D,nA,nB\n";
  for (const auto& c : report.cells) {
    out += std::to_string(c.coord) + ',' + format_value(c.time) + ',' + format_value(c.d) + ',' +
           std::to_string(c.n_a) + ',' + std::to_string(c.n_b) + '\n';
  }
  return out;
}

void emit_report(const ComparisonReport& report, const std::string& prefix) {
  write_text_file(prefix + ".json", to_json(report).dump(2) + "\n");
  write_text_file(prefix + ".csv", report_csv(report));
}

}  // namespace jsqd
