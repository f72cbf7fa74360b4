#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace fgof {

using Engine = std::mt19937_64;

/// Named sub-streams so that covariates, errors and process draws never share
/// random numbers.
enum class StreamPurpose : std::uint64_t {
  kCovariate = 1,
  kError = 2,
  kProcess = 3,
  kExpansion = 4,
  kGeneric = 5,
};

/// Builds an engine whose state depends only on `seed`, the purpose and the
/// index path. Every replication gets its own engine, so results do not depend
/// on how replications are distributed over threads.
inline Engine make_stream(std::uint64_t seed, StreamPurpose purpose,
                          std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (path.size() + 2));
  auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  push(static_cast<std::uint64_t>(purpose));
  for (auto v : path) push(v);
  std::seed_seq seq(words.begin(), words.end());
  return Engine(seq);
}

}  // namespace fgof
