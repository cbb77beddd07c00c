#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcm {

// Dense vector in R^d. Length is fixed by construction; every binary op
// checks dimensions and throws DimensionError on mismatch.
using Vec = std::vector<double>;

class DimensionError : public std::runtime_error {
 public:
  explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

class InvalidConfigError : public std::runtime_error {
 public:
  explicit InvalidConfigError(const std::string& what)
      : std::runtime_error(what) {}
};

inline void check_same_size(const Vec& x, const Vec& y, const char* op) {
  if (x.size() != y.size()) {
    throw DimensionError(std::string(op) + ": length mismatch (" +
                         std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()) + ")");
  }
}

inline Vec zeros(std::size_t d) { return Vec(d, 0.0); }

// a*x + y
inline Vec axpy(double a, const Vec& x, const Vec& y) {
  check_same_size(x, y, "axpy");
  Vec out(y);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += a * x[i];
  return out;
}

inline void axpy_inplace(double a, const Vec& x, Vec& y) {
  check_same_size(x, y, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline double dot(const Vec& x, const Vec& y) {
  check_same_size(x, y, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// squared Euclidean norm
inline double norm2(const Vec& x) { return dot(x, x); }

inline Vec scale(double a, const Vec& x) {
  Vec out(x);
  for (double& v : out) v *= a;
  return out;
}

inline Vec sub(const Vec& x, const Vec& y) {
  check_same_size(x, y, "sub");
  Vec out(x);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] -= y[i];
  return out;
}

inline Vec add(const Vec& x, const Vec& y) {
  check_same_size(x, y, "add");
  Vec out(x);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += y[i];
  return out;
}

inline bool all_finite(const Vec& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace dcm
