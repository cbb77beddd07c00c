#pragma once

#include <cmath>
#include <cstddef>

namespace dcm {

// Welford streaming mean/variance.
class StatAccumulator {
 public:
  void push(double x) {
    ++count_;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }

  // sample variance (n-1 denominator); 0 for fewer than two points
  double variance() const {
    if (count_ < 2) return 0.0;
    return m2_ / static_cast<double>(count_ - 1);
  }

  double stddev() const { return std::sqrt(variance()); }

  double stderr_mean() const {
    if (count_ < 2) return 0.0;
    return stddev() / std::sqrt(static_cast<double>(count_));
  }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace dcm
