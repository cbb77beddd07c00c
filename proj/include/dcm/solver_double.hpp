#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>

#include "dcm/envelope.hpp"
#include "dcm/inner.hpp"
#include "dcm/metrics.hpp"
#include "dcm/momentum.hpp"

namespace dcm {

enum class InnerMode { Exact, Sgd };

inline InnerMode inner_mode_from_string(const std::string& s) {
  if (s == "exact") return InnerMode::Exact;
  if (s == "sgd") return InnerMode::Sgd;
  throw InvalidConfigError("unknown inner.mode '" + s + "' (expected exact|sgd)");
}

struct DoubleLoopConfig {
  double gamma = 0.1;
  double eta0 = -1.0;  // <= 0 means coupled (eta0 = gamma)
  double alpha = 1.0;
  // optional time-varying coefficient; alpha_schedule(t) overrides alpha
  std::function<double(std::int64_t)> alpha_schedule;
  EstimatorKind estimator = EstimatorKind::Plain;
  bool auto_tune = false;
  // alpha = alpha_constant * L_h * eta0 in auto heavy-ball mode; the appendix
  // derivation fixes sqrt(8), the main text uses sqrt(6).
  double alpha_constant = 2.8284271247461903;
  InnerMode inner_mode = InnerMode::Exact;
  int inner_K = 100;
  std::int64_t T = 100;
  std::uint64_t seed = 0;
  std::uint64_t run_tag = 0;
  std::size_t d = 1;
  bool record_iterates = false;

  double eta0_or_gamma() const { return eta0 > 0.0 ? eta0 : gamma; }
};

// Tuned schedules. phi0 is the initial gap estimate f(x0) - f*.
inline void resolve_auto_double(DoubleLoopConfig& cfg, const DcProblem& problem,
                                const Vec& x0) {
  if (!cfg.auto_tune) return;
  const double Lh = problem.L_h;
  if (!(Lh > 0.0) || !std::isfinite(Lh))
    throw InvalidConfigError("auto tuning requires finite positive L_h");
  if (!problem.f_star)
    throw InvalidConfigError("auto tuning requires a known f_star");
  const double phi0 = problem.f_value(x0) - *problem.f_star;
  const double s2 = problem.sigma * problem.sigma;
  const double T = static_cast<double>(std::max<std::int64_t>(cfg.T, 1));
  if (cfg.estimator == EstimatorKind::Mvr) {
    double cap = 1.0 / (8.0 * Lh);
    double tuned = (s2 > 0.0 && phi0 > 0.0)
                       ? std::cbrt(phi0 / (Lh * Lh * s2 * T))
                       : std::numeric_limits<double>::infinity();
    cfg.gamma = std::min(cap, tuned);
    cfg.eta0 = std::min(cfg.gamma, cap);
    double a = 8.0 * Lh * cfg.eta0;
    cfg.alpha = std::min(a * a, 1.0);
  } else {
    double cap = 1.0 / (std::sqrt(6.0) * Lh);
    double tuned = (s2 > 0.0 && phi0 > 0.0)
                       ? std::sqrt(phi0 / (Lh * s2 * T))
                       : std::numeric_limits<double>::infinity();
    cfg.gamma = std::min(cap, tuned);
    cfg.eta0 = std::min(cfg.gamma, 1.0 / (cfg.alpha_constant * Lh));
    if (cfg.estimator == EstimatorKind::HeavyBall)
      cfg.alpha = std::min(cfg.alpha_constant * Lh * cfg.eta0, 1.0);
    else
      cfg.alpha = 1.0;
  }
}

inline void validate_double_config(const DoubleLoopConfig& cfg,
                                   const DcProblem& problem) {
  if (cfg.gamma <= 0.0) throw InvalidConfigError("double: gamma must be > 0");
  if (cfg.T < 0) throw InvalidConfigError("double: T must be >= 0");
  double eta0 = cfg.eta0_or_gamma();
  if (eta0 > cfg.gamma * (1.0 + 1e-12))
    throw InvalidConfigError("double: eta0 must satisfy eta0 <= gamma");
  if (cfg.estimator != EstimatorKind::Plain) {
    if (!cfg.alpha_schedule) check_alpha(cfg.alpha);
    if (!std::isfinite(problem.L_h))
      throw InvalidConfigError("double: momentum requires finite L_h");
  }
  if (cfg.inner_mode == InnerMode::Exact && !problem.quadratic_g)
    throw InvalidConfigError("double: exact inner solves need quadratic g");
}

// Algorithm: at each outer step sample xi_t, refresh the momentum estimate
// at x_t, solve the proximal subproblem, then take the decoupled step
//   x_{t+1} = x_t - (eta0/gamma) (x_t - xtilde_{t+1}),
// which reduces to x_{t+1} = xtilde_{t+1} when eta0 = gamma.
inline RunResult run_double_loop(const DcProblem& problem, DoubleLoopConfig cfg,
                                 const Vec& x0) {
  auto t_start = std::chrono::steady_clock::now();
  resolve_auto_double(cfg, problem, x0);
  validate_double_config(cfg, problem);
  if (x0.size() != problem.d)
    throw DimensionError("run_double_loop: x0 has wrong dimension");
  const double eta0 = cfg.eta0_or_gamma();
  const bool coupled = !(cfg.eta0 > 0.0) || cfg.eta0 == cfg.gamma;

  RunResult result;
  result.seed = cfg.seed;

  // Output index drawn from its own stream so the choice never perturbs
  // oracle streams.
  std::int64_t out_idx = 0;
  if (cfg.T > 0) {
    RngStream out_rng(cfg.seed, stream_id(cfg.run_tag, 0, Oracle::Output));
    out_idx = static_cast<std::int64_t>(out_rng.next_unit() *
                                        static_cast<double>(cfg.T));
    if (out_idx >= cfg.T) out_idx = cfg.T - 1;
  }

  Vec x = x0;
  result.output_x = x0;
  if (cfg.record_iterates) result.iterates.push_back(x);

  const bool metric_prox = problem.has_prox() || problem.g_subgrad_exact != nullptr;
  const bool metric_h = static_cast<bool>(problem.h_grad_exact);

  MomentumState mom;
  for (std::int64_t t = 0; t < cfg.T; ++t) {
    if (t == out_idx) result.output_x = x;
    // the estimate m_t is refreshed with the previous step's coefficient
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

    Subproblem subp{&problem, cfg.gamma, x, mom.m};
    Vec xtilde;
    if (cfg.inner_mode == InnerMode::Exact) {
      xtilde = solve_exact_quadratic(subp, *problem.quadratic_g);
    } else {
      RngStream rng_g(cfg.seed, stream_id(cfg.run_tag, static_cast<std::uint64_t>(t),
                                          Oracle::GGrad));
      xtilde = solve_sgd(subp, cfg.inner_K, rng_g, problem.quadratic_g).x;
    }

    Vec x_next = coupled ? xtilde
                         : axpy(-eta0 / cfg.gamma, sub(x, xtilde), x);

    IterateTrace row;
    row.t = t;
    if (problem.f_star) row.gap = problem.f_value(x) - *problem.f_star;
    if (metric_prox && metric_h) {
      row.g_surrogate = gradient_surrogate(problem, x, cfg.gamma);
      row.moreau_grad_sq = norm2(moreau_grad(problem, x, cfg.gamma));
    }
    if (metric_h) row.m_err = norm2(sub(mom.m, problem.h_grad_exact(x)));
    if (all_finite(x_next)) row.delta = norm2(sub(x_next, x));
    if (row.gap && row.m_err)
      row.phi = *row.gap + (2.0 * eta0 / alpha_t) * (*row.m_err);
    result.trace.push_back(row);

    if (!all_finite(x_next)) {
      result.status = RunStatus::Diverged;
      result.diverged_at = t + 1;
      break;
    }
    x = x_next;
    if (cfg.record_iterates) result.iterates.push_back(x);
  }

  result.final_x = x;
  result.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return result;
}

}  // namespace dcm
