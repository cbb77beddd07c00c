#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>

#include "dcm/envelope.hpp"
#include "dcm/metrics.hpp"
#include "dcm/momentum.hpp"

namespace dcm {

struct SingleLoopConfig {
  double gamma = 0.5;  // smoothing parameter of g_gamma
  double eta0 = -1.0;
  double eta1 = -1.0;
  double alpha = 1.0;
  // optional time-varying coefficient; alpha_schedule(t) overrides alpha
  std::function<double(std::int64_t)> alpha_schedule;
  EstimatorKind estimator = EstimatorKind::Plain;
  bool auto_tune = false;
  double alpha_constant = 2.8284271247461903;
  std::int64_t T = 100;
  std::uint64_t seed = 0;
  std::uint64_t run_tag = 0;
  std::size_t d = 1;
  bool record_iterates = false;
  // Test hook: replace the eta1 tracking step by the exact prox of x_t.
  bool exact_prox_tracking = false;
};

// Appendix schedule: eta0 <= min(1/(c L_h), gamma/8), eta1 = 4 eta0,
// alpha = c L_h eta0 (heavy ball) or (8 L_h eta0)^2 (MVR).
inline void resolve_auto_single(SingleLoopConfig& cfg, const DcProblem& problem) {
  if (!cfg.auto_tune) return;
  const double Lh = problem.L_h;
  if (!(Lh > 0.0) || !std::isfinite(Lh))
    throw InvalidConfigError("auto tuning requires finite positive L_h");
  if (cfg.gamma <= 0.0)
    throw InvalidConfigError("single: auto tuning needs explicit gamma > 0");
  if (cfg.estimator == EstimatorKind::Mvr) {
    cfg.eta0 = std::min(1.0 / (8.0 * Lh), cfg.gamma / 8.0);
    double a = 8.0 * Lh * cfg.eta0;
    cfg.alpha = std::min(a * a, 1.0);
  } else {
    cfg.eta0 = std::min(1.0 / (cfg.alpha_constant * Lh), cfg.gamma / 8.0);
    cfg.alpha = cfg.estimator == EstimatorKind::HeavyBall
                    ? std::min(cfg.alpha_constant * Lh * cfg.eta0, 1.0)
                    : 1.0;
  }
  cfg.eta1 = 4.0 * cfg.eta0;
}

inline void validate_single_config(const SingleLoopConfig& cfg,
                                   const DcProblem& problem) {
  if (cfg.gamma <= 0.0) throw InvalidConfigError("single: gamma must be > 0");
  if (cfg.eta0 <= 0.0) throw InvalidConfigError("single: eta0 must be > 0");
  if (!cfg.exact_prox_tracking && cfg.eta1 <= 0.0)
    throw InvalidConfigError("single: eta1 must be > 0");
  if (cfg.T < 0) throw InvalidConfigError("single: T must be >= 0");
  // eta1 <= gamma/2 is the theory regime; enforced only for auto schedules
  // (the reference experiments deliberately run eta1 = gamma).
  if (cfg.auto_tune && cfg.eta1 > cfg.gamma / 2.0 + 1e-12)
    throw InvalidConfigError("single: auto schedule violates eta1 <= gamma/2");
  if (cfg.estimator != EstimatorKind::Plain) {
    if (!cfg.alpha_schedule) check_alpha(cfg.alpha);
    if (!std::isfinite(problem.L_h))
      throw InvalidConfigError("single: momentum requires finite L_h");
  }
  if (!problem.g_subgrad_stoch)
    throw InvalidConfigError("single: needs stochastic g subgradient");
}

// Minimizing f_gamma = g_gamma - h with one tracking iterate xg for
// prox_{gamma g}(x):
//   xg_{t+1} = xg_t - eta1 (dg(xg_t, xi^g_t) + (xg_t - x_t)/gamma)
//   x_{t+1}  = x_t - eta0 ((x_t - xg_{t+1})/gamma - m_t)
inline RunResult run_single_loop(const DcProblem& problem, SingleLoopConfig cfg,
                                 const Vec& x0) {
  auto t_start = std::chrono::steady_clock::now();
  resolve_auto_single(cfg, problem);
  validate_single_config(cfg, problem);
  if (x0.size() != problem.d)
    throw DimensionError("run_single_loop: x0 has wrong dimension");

  RunResult result;
  result.seed = cfg.seed;

  std::int64_t out_idx = 0;
  if (cfg.T > 0) {
    RngStream out_rng(cfg.seed, stream_id(cfg.run_tag, 0, Oracle::Output));
    out_idx = static_cast<std::int64_t>(out_rng.next_unit() *
                                        static_cast<double>(cfg.T));
    if (out_idx >= cfg.T) out_idx = cfg.T - 1;
  }

  Vec x = x0;
  Vec xg = x0;  // xg_0 = x_0
  result.output_x = x0;
  if (cfg.record_iterates) result.iterates.push_back(x);

  const bool metric_prox = problem.has_prox();
  const bool metric_h = static_cast<bool>(problem.h_grad_exact);
  // f_gamma* taken as 0 on quadratic instances with a < L.
  const bool know_fgamma_star =
      problem.quadratic_g.has_value() && problem.f_star.has_value();

  MomentumState mom;
  for (std::int64_t t = 0; t < cfg.T; ++t) {
    if (t == out_idx) result.output_x = x;
    double alpha_prev =
        cfg.alpha_schedule ? cfg.alpha_schedule(t > 0 ? t - 1 : 0) : cfg.alpha;
    double alpha_t = cfg.alpha_schedule ? cfg.alpha_schedule(t) : cfg.alpha;
    RngStream rng_h(cfg.seed, stream_id(cfg.run_tag, static_cast<std::uint64_t>(t),
                                        Oracle::HGrad));
    if (t == 0) {
      mom = momentum_init(problem, x, rng_h, cfg.estimator, alpha_t);
    } else {
      momentum_update(mom, x, alpha_prev, problem, rng_h);
    }

    Vec xg_next;
    if (cfg.exact_prox_tracking) {
      xg_next = prox_g_or_numeric(problem, x, cfg.gamma);
    } else {
      RngStream rng_g(cfg.seed, stream_id(cfg.run_tag, static_cast<std::uint64_t>(t),
                                          Oracle::GGrad));
      Vec step = problem.g_subgrad_stoch(xg, rng_g);
      for (std::size_t i = 0; i < step.size(); ++i)
        step[i] += (xg[i] - x[i]) / cfg.gamma;
      xg_next = axpy(-cfg.eta1, step, xg);
    }

    Vec x_next(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      x_next[i] = x[i] - cfg.eta0 * ((x[i] - xg_next[i]) / cfg.gamma - mom.m[i]);

    IterateTrace row;
    row.t = t;
    if (problem.f_star) row.gap = problem.f_value(x) - *problem.f_star;
    if (metric_prox && metric_h) {
      row.g_surrogate = gradient_surrogate(problem, x, cfg.gamma);
      row.moreau_grad_sq = norm2(moreau_grad(problem, x, cfg.gamma));
    }
    if (metric_h) row.m_err = norm2(sub(mom.m, problem.h_grad_exact(x)));
    if (metric_prox)
      row.eg_err = norm2(sub(xg_next, problem.prox_g(x, cfg.gamma)));
    if (all_finite(x_next)) row.delta = norm2(sub(x_next, x));
    if (know_fgamma_star && metric_prox && row.m_err && row.eg_err) {
      double fg = moreau_env_g(problem, x, cfg.gamma) - problem.h_value(x);
      double eta1_eff = cfg.exact_prox_tracking ? 4.0 * cfg.eta0 : cfg.eta1;
      row.phi = fg + (2.0 * cfg.eta0 / (cfg.gamma * eta1_eff)) * (*row.eg_err) +
                (cfg.eta0 / alpha_t) * (*row.m_err);
    }
    result.trace.push_back(row);

    if (!all_finite(x_next) || !all_finite(xg_next)) {
      result.status = RunStatus::Diverged;
      result.diverged_at = t + 1;
      break;
    }
    x = x_next;
    xg = xg_next;
    if (cfg.record_iterates) result.iterates.push_back(x);
  }

  result.final_x = x;
  result.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return result;
}

struct SmagConfig {
  double L = 1.0;
  double a = 12.0;
  double gamma = 0.1;
  double eta0 = 0.1;
  double eta1 = 0.1;
  double sigma = 1.0;
  std::int64_t T = 50;
  std::uint64_t seed = 0;
  std::uint64_t run_tag = 0;
  std::size_t d = 1;
  bool record_iterates = false;
};

// The quadratic instance of the prior single-loop method that smooths both
// components, reproduced exactly as the reference sequence:
//   xg_{t+1} = xg_t - eta1 (L xg_t + (xg_t - x_t)/gamma)
//   xh_{t+1} = xh_t - eta1 (a xh_t + xi_t + (xh_t - x_t)/gamma)
//   x_{t+1}  = x_t - (eta0/gamma)(xh_{t+1} - xg_{t+1})
// The trace stores |grad f(x_t)|^2 = (L-a)^2 |x_t|^2 in moreau_grad_sq.
inline RunResult run_smag_quadratic(const SmagConfig& cfg, const Vec& x0) {
  if (cfg.gamma <= 0 || cfg.eta0 <= 0 || cfg.eta1 <= 0)
    throw InvalidConfigError("smag: step sizes must be positive");
  if (cfg.T < 0) throw InvalidConfigError("smag: T must be >= 0");
  if (x0.size() != cfg.d) throw DimensionError("smag: x0 has wrong dimension");
  auto t_start = std::chrono::steady_clock::now();

  RunResult result;
  result.seed = cfg.seed;

  std::int64_t out_idx = 0;
  if (cfg.T > 0) {
    RngStream out_rng(cfg.seed, stream_id(cfg.run_tag, 0, Oracle::Output));
    out_idx = static_cast<std::int64_t>(out_rng.next_unit() *
                                        static_cast<double>(cfg.T));
    if (out_idx >= cfg.T) out_idx = cfg.T - 1;
  }

  Vec x = x0, xg = x0, xh = x0;
  result.output_x = x0;
  if (cfg.record_iterates) result.iterates.push_back(x);
  const double grad_coef = (cfg.L - cfg.a) * (cfg.L - cfg.a);

  for (std::int64_t t = 0; t < cfg.T; ++t) {
    if (t == out_idx) result.output_x = x;
    RngStream rng(cfg.seed, stream_id(cfg.run_tag, static_cast<std::uint64_t>(t),
                                      Oracle::HGrad));
    Vec xi = gaussian_vec(rng, cfg.d, cfg.sigma);

    Vec xg_next(cfg.d), xh_next(cfg.d), x_next(cfg.d);
    for (std::size_t i = 0; i < cfg.d; ++i) {
      xg_next[i] =
          xg[i] - cfg.eta1 * (cfg.L * xg[i] + (xg[i] - x[i]) / cfg.gamma);
      xh_next[i] = xh[i] - cfg.eta1 * (cfg.a * xh[i] + xi[i] +
                                       (xh[i] - x[i]) / cfg.gamma);
      x_next[i] = x[i] - (cfg.eta0 / cfg.gamma) * (xh_next[i] - xg_next[i]);
    }

    IterateTrace row;
    row.t = t;
    row.moreau_grad_sq = grad_coef * norm2(x);
    if (cfg.a < cfg.L) row.gap = 0.5 * (cfg.L - cfg.a) * norm2(x);
    if (all_finite(x_next)) row.delta = norm2(sub(x_next, x));
    result.trace.push_back(row);

    if (!all_finite(x_next) || !all_finite(xg_next) || !all_finite(xh_next)) {
      result.status = RunStatus::Diverged;
      result.diverged_at = t + 1;
      break;
    }
    x = x_next;
    xg = xg_next;
    xh = xh_next;
    if (cfg.record_iterates) result.iterates.push_back(x);
  }

  result.final_x = x;
  result.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return result;
}

}  // namespace dcm
