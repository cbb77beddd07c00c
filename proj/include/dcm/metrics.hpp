#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dcm/stats.hpp"
#include "dcm/vec.hpp"

namespace dcm {

// One per-iteration record. Optional fields are absent (not zero) on
// instances that lack the exact quantity they are measured against.
struct IterateTrace {
  std::int64_t t = 0;
  std::optional<double> gap;            // f(x_t) - f*
  std::optional<double> g_surrogate;    // |G_gamma(x_t)|^2, squared convention
  std::optional<double> moreau_grad_sq; // |grad f_gamma(x_t)|^2
  std::optional<double> m_err;          // |m_t - grad h(x_t)|^2
  std::optional<double> eg_err;         // |xg_{t+1} - prox_{gamma g}(x_t)|^2
  std::optional<double> delta;          // |x_{t+1} - x_t|^2
  std::optional<double> phi;            // potential

  std::optional<double> column(const std::string& name) const {
    if (name == "gap") return gap;
    if (name == "g_surrogate") return g_surrogate;
    if (name == "moreau_grad_sq") return moreau_grad_sq;
    if (name == "m_err") return m_err;
    if (name == "eg_err") return eg_err;
    if (name == "delta") return delta;
    if (name == "phi") return phi;
    throw InvalidConfigError("unknown trace column '" + name + "'");
  }
};

enum class RunStatus { Ok, Diverged };

struct RunResult {
  Vec final_x;
  Vec output_x;  // uniform sample from {x_0, ..., x_{T-1}}
  std::vector<IterateTrace> trace;
  std::vector<Vec> iterates;  // populated when record_iterates is set
  double wall_time_sec = 0.0;
  std::uint64_t seed = 0;
  RunStatus status = RunStatus::Ok;
  std::int64_t diverged_at = -1;
};

// Pointwise mean and standard error of one trace column across seeds,
// truncated at the shortest trace so diverged runs stay aggregable.
struct AggregateCurve {
  std::string column;
  std::vector<double> mean;
  std::vector<double> stderr_mean;
  std::size_t n_runs = 0;
};

inline AggregateCurve aggregate(const std::vector<RunResult>& runs,
                                const std::string& column) {
  if (runs.empty()) throw InvalidConfigError("aggregate: empty run list");
  std::size_t len = std::numeric_limits<std::size_t>::max();
  for (const auto& r : runs) len = std::min(len, r.trace.size());
  AggregateCurve curve;
  curve.column = column;
  curve.n_runs = runs.size();
  curve.mean.resize(len);
  curve.stderr_mean.resize(len);
  for (std::size_t t = 0; t < len; ++t) {
    StatAccumulator acc;
    for (const auto& r : runs) {
      auto v = r.trace[t].column(column);
      if (v) acc.push(*v);
    }
    curve.mean[t] = acc.count() ? acc.mean()
                                : std::numeric_limits<double>::quiet_NaN();
    curve.stderr_mean[t] = acc.stderr_mean();
  }
  return curve;
}

// (1/T) sum_t |G_gamma(x_t)|^2 over the recorded trace.
inline double time_avg_surrogate(const RunResult& run) {
  if (run.trace.empty())
    throw InvalidConfigError("time_avg_surrogate: empty trace");
  double s = 0.0;
  std::size_t n = 0;
  for (const auto& row : run.trace) {
    if (row.g_surrogate) {
      s += *row.g_surrogate;
      ++n;
    }
  }
  if (n == 0)
    throw InvalidConfigError("time_avg_surrogate: no g_surrogate column");
  return s / static_cast<double>(n);
}

}  // namespace dcm
