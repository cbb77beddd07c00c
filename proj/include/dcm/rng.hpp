#pragma once

#include <cmath>
#include <cstdint>

#include "dcm/vec.hpp"

namespace dcm {

// 64-bit finalizer from splitmix64 (Steele et al.). Used both as the
// generator step and to hash stream coordinates.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ (mix64(b) + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2)));
}

// Stream id convention: hash(run_tag, t, oracle_tag). The same (seed,
// stream_id) pair always reproduces the same sample sequence, independent
// of thread count or call order elsewhere.
enum class Oracle : std::uint64_t {
  HGrad = 1,
  GGrad = 2,
  X0 = 3,
  Output = 4,
  Walk = 5,
};

inline std::uint64_t stream_id(std::uint64_t run_tag, std::uint64_t t,
                               Oracle tag) {
  return hash_combine(hash_combine(run_tag, t),
                      static_cast<std::uint64_t>(tag));
}

// Counter-based generator: a splitmix64 walk whose initial state is a hash
// of (seed, stream_id). Deterministic, splittable, cheap to construct per
// oracle call.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : state_(hash_combine(mix64(seed), stream)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform on (0, 1]
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Box-Muller, fixed consumption of two u64 per draw so sequences stay
  // reproducible across platforms (std::normal_distribution is not
  // implementation-stable).
  double next_gaussian() {
    double u1 = next_unit();
    double u2 = (static_cast<double>(next_u64() >> 11)) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::uint64_t state_;
};

inline Vec gaussian_vec(RngStream& rng, std::size_t d, double sigma) {
  if (d == 0) throw DimensionError("gaussian_vec: d must be >= 1");
  if (sigma < 0.0) throw InvalidConfigError("gaussian_vec: sigma < 0");
  Vec out(d, 0.0);
  if (sigma == 0.0) return out;
  for (std::size_t i = 0; i < d; ++i) out[i] = sigma * rng.next_gaussian();
  return out;
}

}  // namespace dcm
