#pragma once

#include "dcm/problem.hpp"

namespace dcm {

// |x - prox_{gamma g}(x + gamma grad h(x))|^2 / gamma^2 (squared convention).
// Vanishes exactly at critical points of f = g - h.
inline double gradient_surrogate(const DcProblem& problem, const Vec& x,
                                 double gamma) {
  if (!problem.h_grad_exact)
    throw InvalidConfigError("gradient_surrogate: needs exact h gradient");
  Vec v = axpy(gamma, problem.h_grad_exact(x), x);
  Vec z = prox_g_or_numeric(problem, v, gamma);
  return norm2(sub(x, z)) / (gamma * gamma);
}

// grad f_gamma(x) = (x - prox_{gamma g}(x)) / gamma - grad h(x),
// the exact gradient of f_gamma = g_gamma - h.
inline Vec moreau_grad(const DcProblem& problem, const Vec& x, double gamma) {
  if (!problem.h_grad_exact)
    throw InvalidConfigError("moreau_grad: needs exact h gradient");
  Vec z = prox_g_or_numeric(problem, x, gamma);
  Vec out = sub(x, z);
  for (double& v : out) v /= gamma;
  return sub(out, problem.h_grad_exact(x));
}

// Moreau envelope g_gamma(x) evaluated through the prox.
inline double moreau_env_g(const DcProblem& problem, const Vec& x, double gamma,
                           int budget = 10000) {
  Vec z = prox_g_or_numeric(problem, x, gamma, budget);
  return problem.g_value(z) + norm2(sub(z, x)) / (2.0 * gamma);
}

inline double moreau_env_f(const DcProblem& problem, const Vec& x, double gamma,
                           int budget = 10000) {
  return moreau_env_g(problem, x, gamma, budget) - problem.h_value(x);
}

}  // namespace dcm
