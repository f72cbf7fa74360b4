#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>

namespace fgof {

/// Where run_cdf_test / run_ecf_test take their critical values from.
struct CritValSource {
  enum class Kind { kBuiltin, kSimulated };
  Kind kind = Kind::kBuiltin;
  /// Simulation settings (kSimulated only).
  std::size_t reps = 100000;
  std::size_t cdf_grid = 1000;
  std::size_t ecf_grid = 601;
  double ecf_half_width = 6.0;
  std::uint64_t seed = 20240601;
  unsigned threads = 0;
  /// JSON cache file; empty disables caching.
  std::string cache_path;

  static CritValSource builtin() { return {}; }
  static CritValSource simulated(std::size_t reps, std::uint64_t seed,
                                 std::string cache_path = {}) {
    CritValSource s;
    s.kind = Kind::kSimulated;
    s.reps = reps;
    s.seed = seed;
    s.cache_path = std::move(cache_path);
    return s;
  }
};

}  // namespace fgof
