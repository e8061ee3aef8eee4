#include "misq/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "misq/attainable.hpp"
#include "misq/generator_matrix.hpp"
#include "misq/hybrid_estimator.hpp"
#include "misq/numerics.hpp"
#include "misq/parallel.hpp"
#include "misq/phi.hpp"
#include "misq/poisson_ldp.hpp"
#include "misq/queue_sim.hpp"
#include "misq/rate_function.hpp"
#include "misq/schilder.hpp"

namespace misq {

namespace {

std::string g(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t resolve_seed(const RunOptions& opts) {
  if (opts.seed_set) return opts.seed;
  if (opts.ci) throw ConfigError("--seed is required in CI mode");
  return static_cast<std::uint64_t>(
      std::chrono::high_resolution_clock::now().time_since_epoch().count());
}

TargetSet target_set_from_config(const Config& cfg) {
  const auto toks = cfg.tokens("F");
  TargetSet F;
  const auto bad = [&] { cfg.fail("F", "usage: 'halfline <a>' or 'interval <a> <b>'"); };
  if (toks.empty()) bad();
  try {
    if (toks[0] == "halfline" && toks.size() == 2) {
      F.lo = std::stod(toks[1]);
    } else if (toks[0] == "interval" && toks.size() == 3) {
      F.lo = std::stod(toks[1]);
      F.hi = std::stod(toks[2]);
    } else {
      bad();
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    bad();
  }
  return F;
}

RunOutput cmd_phi(const Config& cfg) {
  const Modulation mod = modulation_from_config(cfg);
  const double t = cfg.number("t");
  const StepPath path = read_csv_file(mod.space(), cfg.word("path_file"));
  const double value = phi(path, mod, t);
  RunOutput out;
  out.artifacts.emplace_back("phi.csv", "t,phi\n" + g(t) + "," + g(value) + "\n");
  out.report = "phi(t=" + g(t) + ") = " + g(value) + "\n";
  return out;
}

struct ReplicaBatch {
  std::vector<long long> counts;
  std::vector<double> phis;
};

ReplicaBatch run_replicas(const BackgroundSpec& spec, const Modulation& mod, double t,
                          long long replicas, bool conditional, std::uint64_t seed,
                          std::uint64_t tag, int threads) {
  ReplicaBatch batch;
  batch.counts.resize(static_cast<std::size_t>(replicas));
  batch.phis.resize(static_cast<std::size_t>(replicas));
  parallel_for(static_cast<std::size_t>(replicas), threads, [&](std::size_t i) {
    RngStream rng(seed, tag, i);
    const SimResult r = conditional ? simulate_conditional(spec, mod, t, rng)
                                    : simulate_direct(spec, mod, t, rng);
    batch.counts[i] = r.count;
    batch.phis[i] = r.phi_value;
  });
  return batch;
}

RunOutput cmd_simulate(const Config& cfg, const RunOptions& opts, std::uint64_t seed) {
  const Modulation mod = modulation_from_config(cfg);
  const BackgroundSpec spec = background_from_config(cfg);
  const double t = cfg.number("t");
  const long long replicas = cfg.integer("replicas");
  if (replicas < 1) cfg.fail("replicas", "must be >= 1");
  const std::string mode = cfg.word_or("mode", "direct");
  if (mode != "direct" && mode != "conditional") cfg.fail("mode", "must be direct or conditional");
  const bool conditional = mode == "conditional";
  const auto tag = stream_tag(conditional ? "simulate.conditional" : "simulate.direct");

  const ReplicaBatch batch = run_replicas(spec, mod, t, replicas, conditional, seed, tag,
                                          opts.threads);
  std::ostringstream csv;
  csv << "replica,count,phi_value\n";
  double mean = 0.0;
  for (long long i = 0; i < replicas; ++i) {
    const auto k = static_cast<std::size_t>(i);
    csv << i << "," << batch.counts[k] << ",";
    if (conditional) csv << g(batch.phis[k]);
    csv << "\n";
    mean += static_cast<double>(batch.counts[k]);
  }
  mean /= static_cast<double>(replicas);
  RunOutput out;
  out.artifacts.emplace_back("counts.csv", csv.str());
  out.report = mode + " replicas=" + std::to_string(replicas) + " mean_count=" + g(mean) + "\n";
  return out;
}

std::string pmf_csv(const std::map<long long, double>& pmf) {
  std::ostringstream csv;
  csv << "count,frequency\n";
  for (const auto& [k, f] : pmf) csv << k << "," << g(f) << "\n";
  return csv.str();
}

RunOutput cmd_verify_mixture(const Config& cfg, const RunOptions& opts, std::uint64_t seed) {
  const Modulation mod = modulation_from_config(cfg);
  const BackgroundSpec spec = background_from_config(cfg);
  const double t = cfg.number("t");
  const long long replicas = cfg.integer("replicas");
  if (replicas < 1) cfg.fail("replicas", "must be >= 1");
  const double tv_limit = cfg.number_or("tv_limit", 0.02);
  const double chi2_level = cfg.number_or("chi2_level", 1e-3);

  const ReplicaBatch direct = run_replicas(spec, mod, t, replicas, false, seed,
                                           stream_tag("verify.direct"), opts.threads);
  const ReplicaBatch cond = run_replicas(spec, mod, t, replicas, true, seed,
                                         stream_tag("verify.conditional"), opts.threads);
  const auto pmf_d = empirical_pmf(direct.counts);
  const auto pmf_c = empirical_pmf(cond.counts);
  const double tv = tv_distance(pmf_d, pmf_c);
  const ChiSquareResult chi = chi_square_two_sample(direct.counts, cond.counts);
  const bool pass = tv <= tv_limit && chi.p_value > chi2_level;

  RunOutput out;
  out.artifacts.emplace_back("pmf_direct.csv", pmf_csv(pmf_d));
  out.artifacts.emplace_back("pmf_conditional.csv", pmf_csv(pmf_c));
  std::ostringstream csv;
  csv << "replicas,tv,chi2_statistic,chi2_dof,p_value,pass\n";
  csv << replicas << "," << g(tv) << "," << g(chi.statistic) << "," << chi.dof << ","
      << g(chi.p_value) << "," << (pass ? 1 : 0) << "\n";
  out.artifacts.emplace_back("verify.csv", csv.str());
  out.report = "tv=" + g(tv) + " chi2=" + g(chi.statistic) + " dof=" + std::to_string(chi.dof) +
               " p=" + g(chi.p_value) + (pass ? " PASS" : " FAIL") + "\n";
  return out;
}

RunOutput cmd_attainable(const Config& cfg) {
  Modulation mod = modulation_from_config(cfg);
  const double t = cfg.number("t");
  RunOutput out;
  std::ostringstream csv;
  csv << "method,a_minus,a_plus,converged\n";

  if (mod.space().kind() == SpaceKind::NonNegInt) {
    const auto probe = attainable_bounds_truncated(
        mod, t, static_cast<int>(cfg.integer_or("trunc_initial", 8)),
        static_cast<int>(cfg.integer_or("trunc_doublings", 3)),
        static_cast<int>(cfg.integer_or("oracle_jumps", 1)),
        static_cast<int>(cfg.integer_or("oracle_time_grid", 16)));
    csv << "truncated," << g(probe.a_minus) << "," << g(probe.a_plus) << ",1\n";
    out.artifacts.emplace_back("bounds.csv", csv.str());
    out.report = "truncated probe: [" + g(probe.a_minus) + ", " + g(probe.a_plus) + "]\n";
    return out;
  }

  if (mod.space().kind() == SpaceKind::Interval)
    mod = discretize_modulation(mod, static_cast<int>(cfg.integer_or("state_levels", 201)));
  if (mod.space().kind() != SpaceKind::Finite)
    cfg.fail("space", "attainable bounds need a finite, interval or nonneg_int space");

  const AttainableReport dp = attainable_bounds_dp(
      mod, t, static_cast<int>(cfg.integer_or("dp_time_steps", 128)),
      static_cast<int>(cfg.integer_or("dp_r_steps", 129)), cfg.number_or("dp_tolerance", 1e-3),
      static_cast<int>(cfg.integer_or("dp_refinements", 4)));
  const AttainableInterval oracle = attainable_bounds_oracle(
      mod, t, static_cast<int>(cfg.integer_or("oracle_jumps", 3)),
      static_cast<int>(cfg.integer_or("oracle_time_grid", 64)),
      cfg.integer_or("oracle_polish", 1) != 0);

  csv << "dp," << g(dp.interval.a_minus) << "," << g(dp.interval.a_plus) << ","
      << (dp.converged ? 1 : 0) << "\n";
  csv << "oracle," << g(oracle.a_minus) << "," << g(oracle.a_plus) << ",1\n";
  out.artifacts.emplace_back("bounds.csv", csv.str());
  out.report = "dp: [" + g(dp.interval.a_minus) + ", " + g(dp.interval.a_plus) + "] " +
               (dp.converged ? "(converged)" : "(NOT converged)") + "\noracle: [" +
               g(oracle.a_minus) + ", " + g(oracle.a_plus) + "]\n";
  if (!dp.converged) out.exit_code = 2;
  return out;
}

PsiSpec psi_from_config(const Config& cfg, const Modulation& mod) {
  const std::string regime = cfg.word("regime");
  if (regime == "degenerate") {
    const std::string rho = cfg.word("rho");
    if (rho == "auto") {
      const GeneratorMatrix q(cfg.matrix("Q"));
      return PsiSpec::degenerate(rho_t(q, mod, cfg.number("t")));
    }
    return PsiSpec::degenerate(cfg.number("rho"));
  }
  if (regime == "tabulated") return PsiSpec::tabulated(cfg.vector("psi_grid"), cfg.vector("psi_values"));
  if (regime == "schilder") {
    return PsiSpec::schilder(mod, cfg.number("t"), static_cast<int>(cfg.integer_or("segments", 32)),
                             cfg.number("gamma_max"),
                             static_cast<int>(cfg.integer_or("gamma_points", 33)));
  }
  cfg.fail("regime", "unknown regime '" + regime + "'");
}

RunOutput cmd_rate(const Config& cfg) {
  const Modulation mod = modulation_from_config(cfg);
  const auto grid_spec = cfg.tokens("a_grid");
  if (grid_spec.size() != 3) cfg.fail("a_grid", "usage: a_grid = <lo> <hi> <count>");
  double lo = 0.0, hi = 0.0;
  int count = 0;
  try {
    lo = std::stod(grid_spec[0]);
    hi = std::stod(grid_spec[1]);
    count = static_cast<int>(std::stod(grid_spec[2]));
  } catch (const std::exception&) {
    cfg.fail("a_grid", "usage: a_grid = <lo> <hi> <count>");
  }
  if (count < 2 || !(hi > lo)) cfg.fail("a_grid", "need lo < hi and count >= 2");

  const std::string regime = cfg.word("regime");
  std::ostringstream csv;
  csv << "a,I(a)\n";
  if (regime == "unscaled") {
    AttainableInterval interval;
    const auto toks = cfg.tokens("attainable");
    if (toks.size() == 1 && toks[0] == "auto") {
      const AttainableReport dp = attainable_bounds_dp(
          mod, cfg.number("t"), static_cast<int>(cfg.integer_or("dp_time_steps", 128)),
          static_cast<int>(cfg.integer_or("dp_r_steps", 129)));
      interval = dp.interval;
    } else if (toks.size() == 2) {
      try {
        interval.a_minus = std::stod(toks[0]);
        if (toks[1] == "inf") {
          interval.a_plus_infinite = true;
          interval.a_plus = kInf;
        } else {
          interval.a_plus = std::stod(toks[1]);
        }
      } catch (const std::exception&) {
        cfg.fail("attainable", "usage: 'auto' or '<a_minus> <a_plus|inf>'");
      }
    } else {
      cfg.fail("attainable", "usage: 'auto' or '<a_minus> <a_plus|inf>'");
    }
    for (int i = 0; i < count; ++i) {
      const double a = lo + (hi - lo) * i / (count - 1);
      csv << g(a) << "," << g(rate_I_unscaled(interval, a)) << "\n";
    }
  } else {
    const PsiSpec psi = tabulate_psi(psi_from_config(cfg, mod));
    for (int i = 0; i < count; ++i) {
      const double a = lo + (hi - lo) * i / (count - 1);
      csv << g(a) << "," << g(rate_I_general(psi, a)) << "\n";
    }
  }
  RunOutput out;
  out.artifacts.emplace_back("rate.csv", csv.str());
  out.report = "rate table over [" + g(lo) + ", " + g(hi) + "] (" + std::to_string(count) + " points)\n";
  return out;
}

RunOutput cmd_ldp_slope(const Config& cfg, const RunOptions& opts, std::uint64_t seed) {
  const Modulation mod = modulation_from_config(cfg);
  const BackgroundSpec spec = background_from_config(cfg);
  const double t = cfg.number("t");
  const TargetSet F = target_set_from_config(cfg);
  const long long replicas = cfg.integer("replicas");
  if (replicas < 1) cfg.fail("replicas", "must be >= 1");
  const auto schedule_raw = cfg.vector("n_schedule");

  double target = std::numeric_limits<double>::quiet_NaN();
  const std::string target_word = cfg.word_or("target", "auto");
  if (target_word == "auto") {
    if (cfg.word("background") == "timescaled_ctmc") {
      target = ell(rho_t(GeneratorMatrix(cfg.matrix("Q")), mod, t), F.lo);
    } else if (cfg.word("background") == "deterministic") {
      const StepPath path = read_csv_file(mod.space(), cfg.word("path_file"));
      target = ell(phi(path, mod, t), F.lo);
    }
  } else {
    target = cfg.number("target");
  }

  std::ostringstream csv;
  csv << "n,p_hat_log,slope,target\n";
  std::ostringstream rep;
  for (double n_raw : schedule_raw) {
    const int n = static_cast<int>(n_raw);
    if (n < 1) cfg.fail("n_schedule", "entries must be >= 1");
    const HybridEstimate est =
        hybrid_ldp_estimate(spec, mod, t, n, F, static_cast<int>(replicas), seed, opts.threads);
    csv << n << "," << g(est.log_p_hat) << "," << g(est.slope) << "," << g(target) << "\n";
    rep << "n=" << n << " slope=" << g(est.slope) << " target=" << g(target) << "\n";
  }
  RunOutput out;
  out.artifacts.emplace_back("slope.csv", csv.str());
  out.report = rep.str();
  return out;
}

RunOutput cmd_schilder(const Config& cfg) {
  const Modulation mod = modulation_from_config(cfg);
  const double t = cfg.number("t");
  const auto targets = cfg.vector("targets");
  const int segments = static_cast<int>(cfg.integer_or("segments", 32));
  SchilderOptions sopts;
  sopts.sub_steps = static_cast<int>(cfg.integer_or("sub_steps", 512));

  RunOutput out;
  std::ostringstream csv;
  csv << "a,psi,constraint_violation,converged\n";
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const SchilderResult r = schilder_psi(mod, t, targets[i], segments, sopts);
    csv << g(targets[i]) << "," << g(r.value) << "," << g(r.constraint_violation) << ","
        << (r.converged ? 1 : 0) << "\n";
    out.artifacts.emplace_back("schilder_path_" + std::to_string(i) + ".csv",
                               to_csv(schilder_path(mod, t, r, sopts.sub_steps)));
    out.report += "a=" + g(targets[i]) + " psi<=" + g(r.value) +
                  (r.converged ? "" : " (constraint NOT met)") + "\n";
    if (!r.converged) out.exit_code = 2;
  }
  out.artifacts.emplace_back("schilder.csv", csv.str());
  return out;
}

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> cmds = {"phi",  "simulate",  "verify-mixture", "attainable",
                                                "rate", "ldp-slope", "schilder"};
  return cmds;
}

RunOutput run_command(const std::string& command, const Config& cfg, const RunOptions& opts) {
  if (command == "phi") return cmd_phi(cfg);
  if (command == "simulate") return cmd_simulate(cfg, opts, resolve_seed(opts));
  if (command == "verify-mixture") return cmd_verify_mixture(cfg, opts, resolve_seed(opts));
  if (command == "attainable") return cmd_attainable(cfg);
  if (command == "rate") return cmd_rate(cfg);
  if (command == "ldp-slope") return cmd_ldp_slope(cfg, opts, resolve_seed(opts));
  if (command == "schilder") return cmd_schilder(cfg);
  throw ConfigError("unknown command '" + command + "'");
}

}  // namespace misq
