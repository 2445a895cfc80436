// jsqd command-line front end.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>

#include "jsqd/choice.hpp"
#include "jsqd/config.hpp"
#include "jsqd/ctmc.hpp"
#include "jsqd/diffusion.hpp"
#include "jsqd/ensemble.hpp"
#include "jsqd/fixed_point.hpp"
#include "jsqd/fluid.hpp"
#include "jsqd/harness.hpp"
#include "jsqd/io.hpp"

using namespace jsqd;

namespace {

std::string sibling(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? path.substr(0, dot) : path) + suffix;
}

double parse_alpha(const std::string& text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("bad --alpha '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("bad list entry '" + item + "'");
  }
  return out;
}

void print_report(const ComparisonReport& rep) {
  if (rep.regime) {
    std::printf("regime: %s (d/sqrt(n) = %.6g, alpha = %.6g)\n", to_string(rep.regime->kind),
                rep.regime->diagnostics.d_over_sqrt_n, rep.regime->alpha);
  }
  for (const auto& c : rep.cells) {
    std::printf("coord %zu t=%g: D=%.4f p=%.4g nA=%zu nB=%zu var %.4f vs %.4f %s\n", c.coord, c.time, c.d,
                c.p_value, c.n_a, c.n_b, c.var_a, c.var_b, c.pass ? "ok" : "FAIL");
  }
  if (rep.barrier) {
    std::printf("barrier: max Z_1 = %.6g <= %.6g %s\n", rep.barrier->max_z1, rep.barrier->bound,
                rep.barrier->holds ? "ok" : "FAIL");
  }
  if (rep.lln) {
    std::printf("lln: median %.5f p90 %.5f max %.5f\n", rep.lln->median, rep.lln->p90, rep.lln->max);
  }
  std::printf("%s\n", rep.passed ? "PASSED" : "FAILED");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"JSQ(d) supermarket-model simulation and verification toolkit"};
  app.require_subcommand(1);

  // beta
  auto* beta_cmd = app.add_subcommand("beta", "Evaluate beta_n(x) or its derivative");
  std::int64_t b_n = 0, b_d = 0;
  double b_x = 0.0;
  bool b_prime = false;
  beta_cmd->add_option("--n", b_n)->required();
  beta_cmd->add_option("--d", b_d)->required();
  beta_cmd->add_option("--x", b_x)->required();
  beta_cmd->add_flag("--prime", b_prime, "Print beta_n'(x)");

  // fixed-point
  auto* fp_cmd = app.add_subcommand("fixed-point", "Near fixed point, residual and approximation report (JSON)");
  std::int64_t f_n = 0, f_d = 0;
  double f_lambda = 0.0, f_floor = kDefaultMuFloor;
  std::size_t f_k = 0;
  fp_cmd->add_option("--n", f_n)->required();
  fp_cmd->add_option("--d", f_d)->required();
  fp_cmd->add_option("--lambda", f_lambda)->required();
  fp_cmd->add_option("--floor", f_floor);
  fp_cmd->add_option("--k", f_k, "Also run the log-approximation check at this k");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate the prelimit occupancy process");
  std::int64_t s_n = 0, s_d = 0;
  double s_lambda = 0.0, s_t_end = 0.0, s_dt = 0.01;
  std::uint64_t s_seed = 1;
  std::string s_init = "empty", s_out, s_backend = "occupancy";
  std::size_t s_coords = 8, s_reps = 1;
  bool s_diag = false;
  sim_cmd->add_option("--n", s_n)->required();
  sim_cmd->add_option("--d", s_d)->required();
  sim_cmd->add_option("--lambda", s_lambda)->required();
  sim_cmd->add_option("--t-end", s_t_end)->required();
  sim_cmd->add_option("--grid-dt", s_dt);
  sim_cmd->add_option("--seed", s_seed);
  sim_cmd->add_option("--init", s_init, "empty|fixed:K[:G]|mu|file:PATH");
  sim_cmd->add_option("--coords", s_coords);
  sim_cmd->add_option("--out", s_out)->required();
  sim_cmd->add_option("--backend", s_backend)->check(CLI::IsMember({"occupancy", "perqueue"}));
  sim_cmd->add_option("--replicates", s_reps);
  sim_cmd->add_flag("--diagnostics", s_diag, "Also write event counts and residuals to a sibling .json file");

  // fluid
  auto* fl_cmd = app.add_subcommand("fluid", "Integrate the constrained fluid ODE");
  double l_lambda = 0.0, l_t_end = 0.0, l_dt = 1e-3;
  std::size_t l_coords = 0;
  std::string l_init = "zero", l_form = "reflected", l_out;
  fl_cmd->add_option("--lambda", l_lambda)->required();
  fl_cmd->add_option("--t-end", l_t_end)->required();
  fl_cmd->add_option("--dt", l_dt);
  fl_cmd->add_option("--coords", l_coords);
  fl_cmd->add_option("--init", l_init, "zero|fixed:K[:G]|file:PATH");
  fl_cmd->add_option("--form", l_form)->check(CLI::IsMember({"reflected", "explicit", "both"}));
  fl_cmd->add_option("--out", l_out)->required();

  // diffusion
  auto* df_cmd = app.add_subcommand("diffusion", "Simulate a limit diffusion");
  std::string d_regime, d_alpha = "0", d_z = "0", d_out;
  std::size_t d_r = 2, d_k = 1, d_reps = 1, d_every = 1;
  double d_c = 1.0, d_t_end = 1.0, d_dt = 1e-3;
  std::uint64_t d_seed = 1;
  df_cmd->add_option("--regime", d_regime)->required()->check(CLI::IsMember({"sub", "critical", "super"}));
  df_cmd->add_option("--r", d_r)->required();
  df_cmd->add_option("--k", d_k);
  df_cmd->add_option("--alpha", d_alpha, "real or inf");
  df_cmd->add_option("--c", d_c);
  df_cmd->add_option("--z", d_z, "comma-separated initial Z");
  df_cmd->add_option("--t-end", d_t_end)->required();
  df_cmd->add_option("--dt", d_dt);
  df_cmd->add_option("--seed", d_seed);
  df_cmd->add_option("--replicates", d_reps);
  df_cmd->add_option("--record-every", d_every, "Write every n-th step");
  df_cmd->add_option("--out", d_out)->required();

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "Run a configured prelimit-vs-limit experiment");
  std::string c_config;
  cmp_cmd->add_option("--config", c_config)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*beta_cmd) {
      const SystemParams p{b_n, b_d, 0.0};
      p.validate();
      std::printf("%.15g\n", b_prime ? beta_prime(p, b_x) : beta(p, b_x));
      return 0;
    }
    if (*fp_cmd) {
      const SystemParams p{f_n, f_d, f_lambda};
      const auto mu = mu_sequence(p, f_floor);
      auto j = to_json(mu, drift_residual(p, mu.mu));
      j["regime"] = to_json(classify_regime(p));
      if (f_k > 0) {
        const auto rep = mu_log_approx_check(p, f_k, f_floor);
        j["approx"] = nlohmann::ordered_json{{"k", rep.k},
                                             {"log_error", rep.log_error},
                                             {"bound_shape", rep.bound_shape},
                                             {"derivative_ratios", rep.derivative_ratios},
                                             {"ratios_to_first", rep.ratios_to_first}};
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (*sim_cmd) {
      const SystemParams p{s_n, s_d, s_lambda};
      p.validate();
      const Occupancy init = InitSpec::parse(s_init).resolve(p);
      const auto grid = uniform_grid(s_t_end, s_dt);
      std::vector<CtmcRun> runs;
      if (s_backend == "occupancy") {
        CtmcOptions opts;
        opts.coords = s_coords;
        opts.diagnostics = s_diag;
        runs = ctmc_ensemble(CtmcSimulator(p), init, grid, s_seed, s_reps, opts, Execution::Parallel);
      } else {
        runs = per_queue_ensemble(p, init, grid, s_seed, s_reps, s_coords, Execution::Parallel);
      }
      std::vector<PathRows> rows;
      for (std::size_t r = 0; r < runs.size(); ++r) rows.push_back({r, &runs[r].g, 1});
      write_paths_csv(s_out, rows);
      if (s_diag) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (std::size_t r = 0; r < runs.size(); ++r) {
          const auto& run = runs[r];
          j.push_back({{"replicate", r},
                       {"events", run.events},
                       {"arrivals", run.log.arrivals},
                       {"departures", run.log.departures},
                       {"arrival_compensator", run.log.arrival_compensator},
                       {"departure_compensator", run.log.departure_compensator},
                       {"gad_residual", run.diag.gad_residual},
                       {"conservation_residual", run.diag.conservation_residual},
                       {"invariant_violations", run.invariant_violations}});
        }
        write_text_file(sibling(s_out, ".json"), j.dump(2) + "\n");
      }
      return 0;
    }
    if (*fl_cmd) {
      const InitSpec spec = InitSpec::parse(l_init);
      if (spec.kind == InitSpec::Kind::NearMu) throw std::invalid_argument("fluid: init 'mu' needs a prelimit system");
      const auto init = spec.target(SystemParams{});
      FluidOptions opt;
      opt.t_end = l_t_end;
      opt.dt = l_dt;
      opt.coords = l_coords;
      if (l_form == "reflected" || l_form == "both") {
        const auto sol = integrate_reflected(l_lambda, init, opt);
        write_paths_csv(l_out, {{0, &sol.g, 1}});
      }
      if (l_form == "explicit") {
        const auto sol = integrate_explicit(l_lambda, init, opt);
        write_paths_csv(l_out, {{0, &sol.g, 1}});
      }
      if (l_form == "both") {
        const auto sol = integrate_explicit(l_lambda, init, opt);
        write_paths_csv(sibling(l_out, ".explicit.csv"), {{0, &sol.g, 1}});
        const auto cc = cross_check(l_lambda, init, l_t_end, l_dt, l_coords);
        std::printf("sup_t ||g_reflected - g_explicit||_1 = %.6g (dt), %.6g (dt/2)\n", cc.sup_l1, cc.sup_l1_half);
      }
      return 0;
    }
    if (*df_cmd) {
      LimitSystemSpec spec;
      spec.regime = parse_regime(d_regime);
      spec.r = d_r;
      spec.k = d_k;
      spec.alpha = parse_alpha(d_alpha);
      spec.c = d_c;
      spec.z = parse_list(d_z);
      spec.validate();
      SdeOptions opt;
      opt.t_end = d_t_end;
      opt.dt = d_dt;
      opt.record_every = d_every;
      std::vector<SdePath> paths(d_reps);
      std::vector<SampledPath> rows_src(d_reps);
      for_each_index(d_reps, Execution::Parallel, [&](std::size_t r) {
        paths[r] = simulate_limit(spec, opt, d_seed, r);
        rows_src[r] = paths[r].path;
        if (spec.regime == RegimeKind::Super) rows_src[r].values.insert(rows_src[r].values.begin(), paths[r].eta);
      });
      std::vector<PathRows> rows;
      const std::size_t first = spec.regime == RegimeKind::Super ? 0 : 1;
      for (std::size_t r = 0; r < d_reps; ++r) rows.push_back({r, &rows_src[r], first});
      write_paths_csv(d_out, rows);
      std::int64_t clips = 0;
      for (const auto& p : paths) clips += p.clip_events;
      if (clips > 0) std::fprintf(stderr, "exponential drift clipped on %lld steps\n", static_cast<long long>(clips));
      return 0;
    }
    if (*cmp_cmd) {
      const CompareConfig cfg = load_compare_config(c_config);
      if (cfg.kind == "lln") {
        const auto rep = lln_report(run_lln_experiment(cfg.lln), cfg.lln_tolerance);
        print_report(rep);
        if (!cfg.output.empty()) emit_report(rep, cfg.output);
        return rep.passed ? 0 : 1;
      }
      try {
        bool passed = false;
        if (cfg.trend_factor) {
          const auto trend = run_trend_check(cfg.fluctuation, *cfg.trend_factor, cfg.trend_slack);
          print_report(trend.base);
          print_report(trend.scaled);
          std::printf("trend: max D %.4f -> %.4f (ratio %.3f, slack %.2f) %s\n", trend.max_d_base,
                      trend.max_d_scaled, trend.ratio, trend.slack, trend.passed ? "ok" : "FAIL");
          if (!cfg.output.empty()) {
            emit_report(trend.base, cfg.output);
            emit_report(trend.scaled, cfg.output + ".scaled");
          }
          passed = trend.base.passed && trend.scaled.passed && trend.passed;
        } else {
          const auto rep = run_fluctuation_experiment(cfg.fluctuation);
          print_report(rep);
          if (!cfg.output.empty()) emit_report(rep, cfg.output);
          passed = rep.passed;
        }
        return passed ? 0 : 1;
      } catch (const RegimeMismatch& e) {
        std::fprintf(stderr, "%s\n%s\n", e.what(), to_json(e.regime()).dump(2).c_str());
        return 1;
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
