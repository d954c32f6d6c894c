#pragma once

// Independent ground truth for block counts: exhaustive enumeration and a
// row-sweep profile DP. Neither goes through the doubling engines.

#include <cstdint>
#include <optional>
#include <vector>

#include "sftmat/core.hpp"
#include "sftmat/normalizer.hpp"

namespace sft {

enum class OracleSource {
  normalized_cubes,  // filter with block_allowed against the normalized cube set
  raw_patterns       // filter by scanning for the raw forbidden patterns
};

struct OracleOptions {
  std::uint64_t max_candidates = std::uint64_t{1} << 24;
  // Blocks are kept only while the count stays at or below this.
  std::uint64_t retain_limit = 0;
  OracleSource source = OracleSource::normalized_cubes;
  unsigned threads = 1;
};

struct OracleResult {
  Shape shape;
  std::uint64_t count = 0;
  std::optional<std::vector<Block>> blocks;  // canonical order, when retained
};

// The raw-pattern source agrees with the cube source on shapes whose every
// axis is at least l; on smaller shapes cubes cannot fit but raw patterns can.
OracleResult brute_force_allowed(const SftSpec& spec, const Shape& shape,
                                 const OracleOptions& options = {});

struct ProfileOptions {
  std::uint64_t max_states = std::uint64_t{1} << 20;
};

// Number of allowed rows x cols arrays (d = 2), by dynamic programming over
// the last l-1 rows.
std::uint64_t profile_count(const SftSpec& spec, std::size_t rows, std::size_t cols,
                            const ProfileOptions& options = {});

}  // namespace sft
