#pragma once

#include <string>

#include "dcm/problem.hpp"

namespace dcm {

enum class EstimatorKind { Plain, HeavyBall, Mvr };

inline EstimatorKind estimator_from_string(const std::string& s) {
  if (s == "none") return EstimatorKind::Plain;
  if (s == "heavy_ball") return EstimatorKind::HeavyBall;
  if (s == "mvr") return EstimatorKind::Mvr;
  throw InvalidConfigError("unknown estimator '" + s +
                           "' (expected none|heavy_ball|mvr)");
}

inline const char* to_string(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::Plain: return "none";
    case EstimatorKind::HeavyBall: return "heavy_ball";
    case EstimatorKind::Mvr: return "mvr";
  }
  return "?";
}

// Running estimate m of grad h(x_t). prev_x is the last query point; the
// MVR update re-evaluates the oracle there with the same sample.
struct MomentumState {
  Vec m;
  EstimatorKind kind = EstimatorKind::Plain;
  double alpha = 1.0;
  Vec prev_x;
};

inline void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw InvalidConfigError("momentum: alpha must be in (0, 1]");
}

inline MomentumState momentum_init(const DcProblem& problem, const Vec& x0,
                                   RngStream& rng, EstimatorKind kind,
                                   double alpha) {
  check_alpha(alpha);
  MomentumState s;
  s.m = problem.h_grad_stoch(x0, rng);
  s.kind = kind;
  s.alpha = alpha;
  s.prev_x = x0;
  return s;
}

// m <- (1 - alpha) m + alpha * grad h(x_next, xi)
inline void update_heavy_ball(MomentumState& s, const Vec& x_next, double alpha,
                              const DcProblem& problem, RngStream& rng) {
  check_alpha(alpha);
  Vec fresh = problem.h_grad_stoch(x_next, rng);
  for (std::size_t i = 0; i < s.m.size(); ++i)
    s.m[i] = (1.0 - alpha) * s.m[i] + alpha * fresh[i];
  s.alpha = alpha;
  s.prev_x = x_next;
}

// Pure combination step of the MVR recursion, exposed for direct testing.
inline Vec mvr_combine(const Vec& m, const Vec& grad_new, const Vec& grad_old,
                       double alpha) {
  check_same_size(m, grad_new, "mvr_combine");
  check_same_size(m, grad_old, "mvr_combine");
  Vec out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    out[i] = (1.0 - alpha) * (m[i] + grad_new[i] - grad_old[i]) +
             alpha * grad_new[i];
  return out;
}

// m <- (1-a)(m + grad h(x_next, xi) - grad h(x_prev, xi)) + a grad h(x_next, xi)
// Both evaluations must see the same sample xi; this is enforced by copying
// the stream state, so the oracle draws identical noise at both points.
inline void update_mvr(MomentumState& s, const Vec& x_next, double alpha,
                       const DcProblem& problem, RngStream& rng) {
  check_alpha(alpha);
  RngStream shared = rng;
  Vec grad_new = problem.h_grad_stoch(x_next, rng);
  Vec grad_old = problem.h_grad_stoch(s.prev_x, shared);
  s.m = mvr_combine(s.m, grad_new, grad_old, alpha);
  s.alpha = alpha;
  s.prev_x = x_next;
}

inline void momentum_update(MomentumState& s, const Vec& x_next, double alpha,
                            const DcProblem& problem, RngStream& rng) {
  switch (s.kind) {
    case EstimatorKind::Plain:
      update_heavy_ball(s, x_next, 1.0, problem, rng);
      break;
    case EstimatorKind::HeavyBall:
      update_heavy_ball(s, x_next, alpha, problem, rng);
      break;
    case EstimatorKind::Mvr:
      update_mvr(s, x_next, alpha, problem, rng);
      break;
  }
}

}  // namespace dcm
