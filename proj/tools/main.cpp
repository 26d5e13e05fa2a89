// Command-line front end: walk/process dumps, representation checks, ladder
// drift estimation, limit-law experiments, rate scans and diagnostics.
// All outputs embed the exact configuration and seed that produced them.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vervaat/distributions.hpp"
#include "vervaat/harness.hpp"
#include "vervaat/ladder.hpp"
#include "vervaat/limit_laws.hpp"
#include "vervaat/vervaat_process.hpp"
#include "vervaat/walk.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

// JSON config overrides flags one-to-one; a warning is printed when both are
// given so manifests stay unambiguous.
json load_config(const std::string& path, const CLI::App& cmd) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--config", std::string("parse error: ") + e.what());
  }
  for (const auto* opt : cmd.get_options()) {
    for (const std::string& name : opt->get_lnames()) {
      if (!name.empty() && name != "config" && j.contains(name) && opt->count() > 0)
        std::cerr << "warning: --" << name << " overridden by config value\n";
    }
  }
  return j;
}

template <typename T>
void merge(const json& cfg, const char* key, T& value) {
  if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  out << body;
}

vervaat::ValidatedSpec resolve_spec(const std::string& dist, const json& cfg) {
  if (cfg.contains("spec")) return vervaat::validate(vervaat::spec_from_json(cfg.at("spec")));
  if (cfg.contains("dist")) return vervaat::validate(vervaat::parse_dist(cfg.at("dist")));
  return vervaat::validate(vervaat::parse_dist(dist));
}

struct AssertTracker {
  bool violated = false;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      std::cerr << "assertion failed: " << what << '\n';
      violated = true;
    }
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-sum / renewal process simulation and limit-theorem checks"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  AssertTracker asserts;

  // ---- path: dump the process grid of one walk as CSV ----
  std::string p_dist = "exp:1", p_out, p_config;
  std::int64_t p_n = 100;
  std::uint64_t p_seed = 0;
  std::size_t p_grid = 512;
  auto* path_cmd = app.add_subcommand("path", "Dump process values on a t-grid as CSV");
  path_cmd->add_option("--dist", p_dist, "Distribution shorthand, e.g. exp:1");
  path_cmd->add_option("--n", p_n, "Scale parameter n");
  path_cmd->add_option("--seed", p_seed, "Seed");
  path_cmd->add_option("--grid", p_grid, "Grid segments K (rows = K+1)");
  path_cmd->add_option("--out", p_out, "Output file ('-' = stdout)");
  path_cmd->add_option("--config", p_config, "JSON config (overrides flags)");
  path_cmd->callback([&] {
    const json cfg = load_config(p_config, *path_cmd);
    merge(cfg, "n", p_n);
    merge(cfg, "seed", p_seed);
    merge(cfg, "grid", p_grid);
    merge(cfg, "out", p_out);
    const auto spec = resolve_spec(p_dist, cfg);
    const auto walk = vervaat::build_walk(spec, p_n, p_seed);
    const auto grid = vervaat::uniform_grid(p_grid);
    const auto pts = vervaat::eval_processes(walk, grid);
    std::ostringstream os;
    os << "# spec=" << spec.name() << " n=" << p_n << " seed=" << p_seed << " grid=" << p_grid
       << '\n';
    vervaat::write_process_csv(os, pts);
    write_text(p_out, os.str());
  });

  // ---- check-repr: representation / identity residual sweep ----
  std::string cr_dist = "exp:1", cr_out, cr_config;
  std::int64_t cr_n = 1000, cr_seeds = 100;
  std::uint64_t cr_seed = 1;
  std::size_t cr_grid = 33;
  std::optional<double> cr_assert;
  auto* repr_cmd = app.add_subcommand("check-repr", "Exact-representation residual sweep");
  repr_cmd->add_option("--dist", cr_dist, "Distribution shorthand");
  repr_cmd->add_option("--n", cr_n, "Scale parameter n");
  repr_cmd->add_option("--seeds", cr_seeds, "Number of seeds (streams 0..seeds-1)");
  repr_cmd->add_option("--seed", cr_seed, "Base seed");
  repr_cmd->add_option("--grid", cr_grid, "Grid points in (0,1]");
  repr_cmd->add_option("--assert", cr_assert, "Fail (exit 2) if any residual exceeds this");
  repr_cmd->add_option("--out", cr_out, "Output file");
  repr_cmd->add_option("--config", cr_config, "JSON config (overrides flags)");
  repr_cmd->callback([&] {
    const json cfg = load_config(cr_config, *repr_cmd);
    merge(cfg, "n", cr_n);
    merge(cfg, "seeds", cr_seeds);
    merge(cfg, "seed", cr_seed);
    merge(cfg, "grid", cr_grid);
    const auto spec = resolve_spec(cr_dist, cfg);
    const auto grid = vervaat::positive_grid(cr_grid);
    double max_repr = 0.0, max_identity = 0.0;
    for (std::int64_t s = 0; s < cr_seeds; ++s) {
      const auto walk = vervaat::build_walk(
          spec, cr_n, vervaat::derive_stream(cr_seed, static_cast<std::uint64_t>(s)));
      const vervaat::VervaatEvaluator ev(walk, spec.as_positive);
      for (double t : grid) {
        const double v = ev.integrate_V(t).V;
        max_repr = std::max(max_repr, std::abs(v - ev.repr_general(t)));
        if (spec.as_positive) max_repr = std::max(max_repr, std::abs(v - ev.repr_ordinary(t)));
        max_identity = std::max(max_identity, std::abs(ev.identity_residual(t)));
      }
    }
    json out{{"spec", vervaat::spec_to_json(spec)},
             {"n", cr_n},
             {"seeds", cr_seeds},
             {"seed", cr_seed},
             {"grid", cr_grid},
             {"max_abs_residual_repr", max_repr},
             {"max_abs_residual_3_6", max_identity}};
    write_text(cr_out, out.dump(2) + "\n");
    if (cr_assert) {
      asserts.check(max_repr <= *cr_assert, "max_abs_residual_repr <= " + std::to_string(*cr_assert));
      asserts.check(max_identity <= *cr_assert,
                    "max_abs_residual_3_6 <= " + std::to_string(*cr_assert));
    }
  });

  // ---- ladder: drift ratio estimation ----
  std::string la_dist = "twopoint:-1,1,0.7", la_out, la_config;
  std::int64_t la_cycles = 100000;
  std::uint64_t la_seed = 1;
  auto* ladder_cmd = app.add_subcommand("ladder", "Estimate the ladder drift ratio mu_D/mu_H");
  ladder_cmd->add_option("--dist", la_dist, "Distribution shorthand");
  ladder_cmd->add_option("--cycles", la_cycles, "Independent ladder cycles");
  ladder_cmd->add_option("--seed", la_seed, "Seed");
  ladder_cmd->add_option("--out", la_out, "Output file");
  ladder_cmd->add_option("--config", la_config, "JSON config (overrides flags)");
  ladder_cmd->callback([&] {
    const json cfg = load_config(la_config, *ladder_cmd);
    merge(cfg, "cycles", la_cycles);
    merge(cfg, "seed", la_seed);
    const auto spec = resolve_spec(la_dist, cfg);
    const auto est = vervaat::estimate_drift_ratio(spec, la_cycles, la_seed);
    json out{{"spec", vervaat::spec_to_json(spec)}, {"cycles", est.cycles},
             {"mu_D_hat", est.mu_d_hat},           {"mu_H_hat", est.mu_h_hat},
             {"ratio_hat", est.ratio_hat},         {"std_err_ratio", est.std_err_ratio},
             {"std_err_mu_D", est.std_err_mu_d},   {"std_err_mu_H", est.std_err_mu_h},
             {"mean_cycle_len", est.mean_cycle_len}, {"seed", la_seed}};
    write_text(la_out, out.dump(2) + "\n");
  });

  // ---- limit: pointwise KS experiments ----
  std::string li_stat = "bk", li_dist = "exp:1", li_out, li_config, li_drift = "auto";
  vervaat::ExperimentConfig li_cfg;
  std::optional<double> li_assert_ks;
  bool li_samples = false;
  auto* limit_cmd = app.add_subcommand("limit", "Pointwise limit-law KS experiment");
  limit_cmd->add_option("--statistic", li_stat, "bk | vervaat | verror | zn | vervaat-sup");
  limit_cmd->add_option("--dist", li_dist, "Distribution shorthand");
  limit_cmd->add_option("--n", li_cfg.n, "Scale parameter n");
  limit_cmd->add_option("--reps", li_cfg.replicates, "Replicates");
  limit_cmd->add_option("--t", li_cfg.t_eval, "Evaluation point in (0,1]");
  limit_cmd->add_option("--seed", li_cfg.seed, "Seed");
  limit_cmd->add_option("--drift", li_drift, "auto | exact-zero | estimate");
  limit_cmd->add_option("--drift-cycles", li_cfg.drift_cycles, "Cycles for drift estimation");
  limit_cmd->add_option("--threads", li_cfg.threads, "Worker threads (results identical)");
  limit_cmd->add_option("--assert-ks", li_assert_ks, "Fail (exit 2) if KS distance exceeds this");
  limit_cmd->add_flag("--samples", li_samples, "Include raw samples in the JSON report");
  limit_cmd->add_option("--out", li_out, "Output file");
  limit_cmd->add_option("--config", li_config, "JSON config (overrides flags)");
  limit_cmd->callback([&] {
    const json cfg = load_config(li_config, *limit_cmd);
    merge(cfg, "statistic", li_stat);
    merge(cfg, "n", li_cfg.n);
    merge(cfg, "reps", li_cfg.replicates);
    merge(cfg, "t", li_cfg.t_eval);
    merge(cfg, "seed", li_cfg.seed);
    merge(cfg, "drift", li_drift);
    merge(cfg, "threads", li_cfg.threads);
    li_cfg.spec = resolve_spec(li_dist, cfg);
    if (li_stat == "bk") li_cfg.statistic = vervaat::Statistic::bk_point;
    else if (li_stat == "vervaat") li_cfg.statistic = vervaat::Statistic::vervaat_point;
    else if (li_stat == "verror") li_cfg.statistic = vervaat::Statistic::verror_point;
    else if (li_stat == "zn") li_cfg.statistic = vervaat::Statistic::zn_point;
    else if (li_stat == "vervaat-sup") li_cfg.statistic = vervaat::Statistic::vervaat_path_sup;
    else throw CLI::ValidationError("--statistic", "unknown statistic '" + li_stat + "'");
    if (li_drift == "estimate") li_cfg.estimate_drift = true;
    else if (li_drift == "exact-zero") li_cfg.estimate_drift = false;
    else if (li_drift == "auto") li_cfg.estimate_drift = !li_cfg.spec.as_nonnegative;
    else throw CLI::ValidationError("--drift", "unknown drift source '" + li_drift + "'");
    const auto report = vervaat::run_pointwise_experiment(li_cfg);
    write_text(li_out, report.to_json(li_samples).dump(2) + "\n");
    if (li_assert_ks)
      asserts.check(report.ks_distance <= *li_assert_ks,
                    "ks_distance <= " + std::to_string(*li_assert_ks));
  });

  // ---- rates: rate scan over an n-grid ----
  std::string ra_dist = "exp:1", ra_out, ra_config, ra_drift = "auto";
  vervaat::ExperimentConfig ra_cfg;
  int ra_log2_min = 8, ra_log2_max = 15;
  ra_cfg.replicates = 200;
  auto* rates_cmd = app.add_subcommand("rates", "Median deviation rate scan over n");
  rates_cmd->add_option("--dist", ra_dist, "Distribution shorthand");
  rates_cmd->add_option("--log2-min", ra_log2_min, "Smallest n = 2^log2-min");
  rates_cmd->add_option("--log2-max", ra_log2_max, "Largest n = 2^log2-max");
  rates_cmd->add_option("--reps", ra_cfg.replicates, "Replicates per n");
  rates_cmd->add_option("--grid", ra_cfg.grid_segments, "Sup-norm grid segments");
  rates_cmd->add_option("--seed", ra_cfg.seed, "Seed");
  rates_cmd->add_option("--drift", ra_drift, "auto | exact-zero | estimate");
  rates_cmd->add_option("--threads", ra_cfg.threads, "Worker threads");
  rates_cmd->add_option("--out", ra_out, "Output file");
  rates_cmd->add_option("--config", ra_config, "JSON config (overrides flags)");
  rates_cmd->callback([&] {
    const json cfg = load_config(ra_config, *rates_cmd);
    merge(cfg, "log2-min", ra_log2_min);
    merge(cfg, "log2-max", ra_log2_max);
    merge(cfg, "reps", ra_cfg.replicates);
    merge(cfg, "seed", ra_cfg.seed);
    ra_cfg.spec = resolve_spec(ra_dist, cfg);
    ra_cfg.statistic = vervaat::Statistic::rate_scan;
    ra_cfg.estimate_drift = ra_drift == "estimate" ||
                            (ra_drift == "auto" && !ra_cfg.spec.as_nonnegative);
    for (int e = ra_log2_min; e <= ra_log2_max; ++e)
      ra_cfg.n_grid.push_back(std::int64_t{1} << e);
    const auto report = vervaat::rate_scan(ra_cfg);
    write_text(ra_out, report.to_json().dump(2) + "\n");
  });

  // ---- bk-growth: sup-norm growth diagnostic ----
  std::string bg_dist = "exp:1", bg_out, bg_config;
  vervaat::ExperimentConfig bg_cfg;
  int bg_log2_min = 9, bg_log2_max = 15;
  bg_cfg.replicates = 200;
  auto* growth_cmd = app.add_subcommand("bk-growth", "Sup-norm growth diagnostic for R_n*");
  growth_cmd->add_option("--dist", bg_dist, "Distribution shorthand");
  growth_cmd->add_option("--log2-min", bg_log2_min, "Smallest n = 2^log2-min");
  growth_cmd->add_option("--log2-max", bg_log2_max, "Largest n = 2^log2-max");
  growth_cmd->add_option("--reps", bg_cfg.replicates, "Replicates per n");
  growth_cmd->add_option("--grid", bg_cfg.grid_segments, "Sup-norm grid segments");
  growth_cmd->add_option("--seed", bg_cfg.seed, "Seed");
  growth_cmd->add_option("--threads", bg_cfg.threads, "Worker threads");
  growth_cmd->add_option("--out", bg_out, "Output file");
  growth_cmd->add_option("--config", bg_config, "JSON config (overrides flags)");
  growth_cmd->callback([&] {
    const json cfg = load_config(bg_config, *growth_cmd);
    merge(cfg, "reps", bg_cfg.replicates);
    merge(cfg, "seed", bg_cfg.seed);
    bg_cfg.spec = resolve_spec(bg_dist, cfg);
    bg_cfg.statistic = vervaat::Statistic::bk_growth;
    for (int e = bg_log2_min; e <= bg_log2_max; ++e)
      bg_cfg.n_grid.push_back(std::int64_t{1} << e);
    const auto report = vervaat::bk_growth_diagnostic(bg_cfg);
    write_text(bg_out, report.to_json().dump(2) + "\n");
  });

  // ---- limit-sample: reference-law draws as CSV ----
  std::string ls_law = "bk", ls_out, ls_config;
  double ls_t = 1.0, ls_sigma = 1.0, ls_mu = 1.0, ls_drift = 0.0;
  std::int64_t ls_count = 1000;
  std::uint64_t ls_seed = 1;
  auto* sample_cmd = app.add_subcommand("limit-sample", "Draws from a reference limit law");
  sample_cmd->add_option("--law", ls_law, "bk | verror | vervaat");
  sample_cmd->add_option("--t", ls_t, "Evaluation point");
  sample_cmd->add_option("--sigma", ls_sigma, "sigma");
  sample_cmd->add_option("--mu", ls_mu, "mu");
  sample_cmd->add_option("--drift", ls_drift, "Drift ratio (vervaat law only)");
  sample_cmd->add_option("--count", ls_count, "Number of draws");
  sample_cmd->add_option("--seed", ls_seed, "Seed");
  sample_cmd->add_option("--out", ls_out, "Output file");
  sample_cmd->add_option("--config", ls_config, "JSON config (overrides flags)");
  sample_cmd->callback([&] {
    const json cfg = load_config(ls_config, *sample_cmd);
    merge(cfg, "law", ls_law);
    merge(cfg, "count", ls_count);
    merge(cfg, "seed", ls_seed);
    std::ostringstream os;
    os << ls_law << "_limit(t=" << ls_t << ",sigma=" << ls_sigma << ",mu=" << ls_mu
       << ",seed=" << ls_seed << ")\n";
    for (std::int64_t i = 0; i < ls_count; ++i) {
      const std::uint64_t s = vervaat::derive_stream(ls_seed, static_cast<std::uint64_t>(i));
      double v = 0.0;
      if (ls_law == "bk") {
        v = vervaat::sample_limit_bk(ls_t, ls_sigma, ls_mu, s);
      } else if (ls_law == "verror") {
        v = vervaat::sample_limit_verror(ls_t, ls_sigma, ls_mu, s);
      } else if (ls_law == "vervaat") {
        const auto w = vervaat::wiener_path(std::max(ls_t, 1.0), 1.0 / 64.0, s);
        const double grid[1] = {ls_t};
        v = vervaat::limit_path_vervaat(w, ls_sigma, ls_mu, ls_drift, grid)[0];
      } else {
        throw CLI::ValidationError("--law", "unknown law '" + ls_law + "'");
      }
      os << vervaat::fmt17(v) << '\n';
    }
    write_text(ls_out, os.str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return asserts.violated ? 2 : 0;
}
