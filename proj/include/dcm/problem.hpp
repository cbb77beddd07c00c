#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dcm/rng.hpp"
#include "dcm/vec.hpp"

namespace dcm {

// A DC objective f = g - h. Oracles take their RngStream by argument, so an
// instance is immutable and freely shareable across threads.
struct DcProblem {
  std::function<double(const Vec&)> g_value;
  std::function<double(const Vec&)> h_value;
  // stochastic subgradient of g
  std::function<Vec(const Vec&, RngStream&)> g_subgrad_stoch;
  // stochastic gradient of h
  std::function<Vec(const Vec&, RngStream&)> h_grad_stoch;
  // exact gradient, present when h is smooth
  std::function<Vec(const Vec&)> h_grad_exact;
  // deterministic subgradient of g (used by prox_numeric and tests)
  std::function<Vec(const Vec&)> g_subgrad_exact;
  // closed-form prox_{gamma g}, optional
  std::function<Vec(const Vec&, double)> prox_g;

  double L_g = 0.0;
  double L_h = 0.0;
  double sigma = 0.0;  // h-oracle noise level (per coordinate)
  double M = std::numeric_limits<double>::infinity();
  std::optional<double> f_star;
  // curvature of g when g = (L/2)|x|^2; enables exact subproblem solves
  std::optional<double> quadratic_g;
  std::size_t d = 0;

  std::string name;

  double f_value(const Vec& x) const { return g_value(x) - h_value(x); }
  bool has_prox() const { return static_cast<bool>(prox_g); }
};

// g = (L/2)|x|^2, h = (a/2)|x|^2, noise only on h's oracle (additive
// Gaussian), optionally on g's. prox_{gamma g}(v) = v / (1 + gamma L).
struct QuadraticDc {
  double L = 1.0;
  double a = 0.9;
  double sigma = 0.0;
  std::size_t d = 1;
  double sigma_g = 0.0;
};

inline DcProblem make_quadratic_impl(const QuadraticDc& q) {
  if (q.L < 0 || q.a < 0 || q.sigma < 0 || q.sigma_g < 0)
    throw InvalidConfigError("quadratic: parameters must be nonnegative");
  if (q.d < 1) throw InvalidConfigError("quadratic: d must be >= 1");

  DcProblem p;
  const double L = q.L, a = q.a, sg = q.sigma_g, sh = q.sigma;
  p.g_value = [L](const Vec& x) { return 0.5 * L * norm2(x); };
  p.h_value = [a](const Vec& x) { return 0.5 * a * norm2(x); };
  p.h_grad_exact = [a](const Vec& x) { return scale(a, x); };
  p.g_subgrad_exact = [L](const Vec& x) { return scale(L, x); };
  p.h_grad_stoch = [a, sh](const Vec& x, RngStream& rng) {
    Vec g = scale(a, x);
    if (sh > 0.0) {
      for (double& v : g) v += sh * rng.next_gaussian();
    }
    return g;
  };
  p.g_subgrad_stoch = [L, sg](const Vec& x, RngStream& rng) {
    Vec g = scale(L, x);
    if (sg > 0.0) {
      for (double& v : g) v += sg * rng.next_gaussian();
    }
    return g;
  };
  p.prox_g = [L](const Vec& v, double gamma) {
    return scale(1.0 / (1.0 + gamma * L), v);
  };
  p.L_g = L;
  p.L_h = a;
  p.sigma = sh;
  p.quadratic_g = L;
  p.d = q.d;
  if (q.a < q.L) p.f_star = 0.0;
  p.name = "quadratic";
  return p;
}

inline DcProblem make_quadratic(double L, double a, double sigma,
                                std::size_t d, double sigma_g = 0.0) {
  return make_quadratic_impl({L, a, sigma, d, sigma_g});
}

// Adversarial instance for the no-momentum double loop:
// a = max_k (2L + 1/gamma_k).
inline DcProblem make_prop1_counterexample(double L,
                                           const std::vector<double>& gammas,
                                           double sigma, std::size_t d) {
  if (gammas.empty())
    throw InvalidConfigError("prop1: stepsize list must be nonempty");
  double a = 0.0;
  for (double g : gammas) {
    if (g <= 0.0) throw InvalidConfigError("prop1: gamma_k must be positive");
    a = std::max(a, 2.0 * L + 1.0 / g);
  }
  DcProblem p = make_quadratic(L, a, sigma, d);
  p.name = "prop1";
  return p;
}

// Adversarial instance for the momentum-free single loop:
// a = max_k (2L + gamma_k / (eta0_k * eta1_k)).
inline DcProblem make_prop2_counterexample(double L,
                                           const std::vector<double>& gammas,
                                           const std::vector<double>& eta0s,
                                           const std::vector<double>& eta1s,
                                           double sigma, std::size_t d) {
  if (gammas.empty() || gammas.size() != eta0s.size() ||
      gammas.size() != eta1s.size())
    throw InvalidConfigError("prop2: schedule lists must be nonempty and equal length");
  double a = 0.0;
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    if (gammas[k] <= 0 || eta0s[k] <= 0 || eta1s[k] <= 0)
      throw InvalidConfigError("prop2: schedule entries must be positive");
    a = std::max(a, 2.0 * L + gammas[k] / (eta0s[k] * eta1s[k]));
  }
  DcProblem p = make_quadratic(L, a, sigma, d);
  p.name = "prop2";
  return p;
}

// f = lambda * sum_i min(|x_i|, theta), split as g = lambda|x|_1 and
// h = lambda * sum_i max(|x_i| - theta, 0). Ships without a closed-form
// prox so prox_numeric gets exercised on a nonsmooth g; not part of the
// acceptance surface.
inline DcProblem make_capped_l1(double lambda, double theta, std::size_t d) {
  if (lambda < 0 || theta <= 0)
    throw InvalidConfigError("capped_l1: need lambda >= 0, theta > 0");
  if (d < 1) throw InvalidConfigError("capped_l1: d must be >= 1");
  DcProblem p;
  p.g_value = [lambda](const Vec& x) {
    double s = 0.0;
    for (double v : x) s += std::fabs(v);
    return lambda * s;
  };
  p.h_value = [lambda, theta](const Vec& x) {
    double s = 0.0;
    for (double v : x) s += std::max(std::fabs(v) - theta, 0.0);
    return lambda * s;
  };
  auto gsub = [lambda](const Vec& x) {
    Vec g(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
      g[i] = lambda * (x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0));
    return g;
  };
  auto hsub = [lambda, theta](const Vec& x) {
    Vec g(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::fabs(x[i]) > theta) g[i] = lambda * (x[i] > 0 ? 1.0 : -1.0);
    }
    return g;
  };
  p.g_subgrad_exact = gsub;
  p.g_subgrad_stoch = [gsub](const Vec& x, RngStream&) { return gsub(x); };
  p.h_grad_exact = hsub;
  p.h_grad_stoch = [hsub](const Vec& x, RngStream&) { return hsub(x); };
  p.L_g = std::numeric_limits<double>::infinity();
  p.L_h = std::numeric_limits<double>::infinity();
  p.sigma = 0.0;
  p.M = lambda * std::sqrt(static_cast<double>(d));
  p.f_star = 0.0;
  p.d = d;
  p.name = "capped_l1";
  return p;
}

// Approximates prox_{gamma g}(center) = argmin g(y) + |y - center|^2/(2 gamma)
// by deterministic subgradient descent on the 1/gamma-strongly convex
// objective, stepsize 2*gamma/(k+2), suffix-averaged over the last half.
// Serves as the prox oracle for problems without a closed form.
inline Vec prox_numeric(const std::function<Vec(const Vec&)>& g_subgrad,
                        const Vec& center, double gamma, int budget) {
  if (gamma <= 0.0) throw InvalidConfigError("prox_numeric: gamma must be > 0");
  if (budget < 1) throw InvalidConfigError("prox_numeric: budget must be >= 1");
  Vec y = center;
  Vec avg(center.size(), 0.0);
  int navg = 0;
  const int tail_start = budget / 2;
  for (int k = 0; k < budget; ++k) {
    Vec step = g_subgrad(y);
    for (std::size_t i = 0; i < y.size(); ++i)
      step[i] += (y[i] - center[i]) / gamma;
    double s = 2.0 * gamma / static_cast<double>(k + 2);
    axpy_inplace(-s, step, y);
    if (!all_finite(y))
      throw NumericError("prox_numeric: non-finite iterate at step " +
                         std::to_string(k));
    if (k >= tail_start) {
      axpy_inplace(1.0, y, avg);
      ++navg;
    }
  }
  return scale(1.0 / static_cast<double>(navg), avg);
}

inline Vec prox_numeric(const DcProblem& p, const Vec& center, double gamma,
                        int budget) {
  if (!p.g_subgrad_exact)
    throw InvalidConfigError("prox_numeric: problem lacks a g subgradient");
  return prox_numeric(p.g_subgrad_exact, center, gamma, budget);
}

// prox_{gamma g} via the closed form when present, else numerically.
inline Vec prox_g_or_numeric(const DcProblem& p, const Vec& center,
                             double gamma, int budget = 10000) {
  if (p.has_prox()) return p.prox_g(center, gamma);
  return prox_numeric(p, center, gamma, budget);
}

}  // namespace dcm
