#pragma once

// Persistent store of simulated critical-value tables, keyed by
// (kernel, null fingerprint, functional, reps, grid size, seed).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "fgof/critval_source.hpp"
#include "fgof/limit_dist.hpp"

namespace fgof {

std::string cache_key(const KernelSpec& spec, const Functional& functional, std::size_t reps,
                      std::uint64_t seed);

/// Looks the table up in the JSON file at `store_path` and simulates it when
/// absent (or when some requested level is missing). A corrupt store or entry
/// is recomputed with a warning on stderr; an unwritable store is reported
/// and the fresh table returned without persisting. An empty path disables
/// the store.
CritValTable cache_get_or_compute(const std::string& store_path, const KernelSpec& spec,
                                  const Functional& functional, std::span<const double> levels,
                                  std::size_t reps, std::uint64_t seed, unsigned threads = 0);

/// Number of tables actually simulated by cache_get_or_compute in this
/// process (cache hits do not count).
std::size_t cache_simulation_count() noexcept;

/// Critical values for `spec` under the simulation settings of `source`.
CritValTable simulated_critical_values(const KernelSpec& spec, const Functional& functional,
                                       std::span<const double> levels,
                                       const CritValSource& source);

}  // namespace fgof
