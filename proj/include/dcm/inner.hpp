#pragma once

#include <cmath>
#include <optional>

#include "dcm/problem.hpp"

namespace dcm {

// The strongly convex subproblem of one outer step:
//   F(x) = g(x) + |x - anchor|^2 / (2 gamma) - <linear, x - anchor>.
// The sampled -h(x_t, xi) constant is dropped; it shifts F uniformly.
struct Subproblem {
  const DcProblem* problem = nullptr;
  double gamma = 0.0;
  Vec anchor;
  Vec linear;

  double value(const Vec& x) const {
    Vec diff = sub(x, anchor);
    return problem->g_value(x) + norm2(diff) / (2.0 * gamma) -
           dot(linear, diff);
  }
};

// Exact minimizer when g = (L/2)|x|^2:
//   argmin = (anchor/gamma + linear) / (L + 1/gamma).
inline Vec solve_exact_quadratic(const Subproblem& sub, double L) {
  Vec out(sub.anchor.size());
  const double denom = L + 1.0 / sub.gamma;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (sub.anchor[i] / sub.gamma + sub.linear[i]) / denom;
  return out;
}

struct InnerResult {
  Vec x;
  double certified_delta = 0.0;
};

// K steps of SGD on F with the classical strongly convex schedule
// 2*gamma/(k+1) (k from 1), suffix-averaged over the last half. When the
// closed-form minimizer exists the returned delta is the realized gap
// divided by gamma; otherwise the O(log K / K) certificate.
inline InnerResult solve_sgd(const Subproblem& sub, int K, RngStream& rng,
                             std::optional<double> quadratic_L = std::nullopt,
                             const Vec* start = nullptr) {
  if (K < 1) throw InvalidConfigError("solve_sgd: K must be >= 1");
  const DcProblem& p = *sub.problem;
  Vec y = start ? *start : sub.anchor;
  Vec avg(y.size(), 0.0);
  int navg = 0;
  const int tail_start = K / 2;
  for (int k = 1; k <= K; ++k) {
    Vec grad = p.g_subgrad_stoch(y, rng);
    for (std::size_t i = 0; i < y.size(); ++i)
      grad[i] += (y[i] - sub.anchor[i]) / sub.gamma - sub.linear[i];
    double s = 2.0 * sub.gamma / static_cast<double>(k + 1);
    axpy_inplace(-s, grad, y);
    if (!all_finite(y))
      throw NumericError("solve_sgd: non-finite iterate at inner step " +
                         std::to_string(k));
    if (k > tail_start) {
      axpy_inplace(1.0, y, avg);
      ++navg;
    }
  }
  InnerResult r;
  r.x = scale(1.0 / static_cast<double>(navg), avg);
  if (quadratic_L) {
    Vec xstar = solve_exact_quadratic(sub, *quadratic_L);
    double gap = sub.value(r.x) - sub.value(xstar);
    r.certified_delta = std::max(gap, 0.0) / sub.gamma;
  } else {
    const double c = 10.0;
    r.certified_delta =
        c * std::log(static_cast<double>(K)) / static_cast<double>(K);
  }
  return r;
}

}  // namespace dcm
