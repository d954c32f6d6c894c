#pragma once

// Rewrites an arbitrary finite forbidden set as an equivalent set of forbidden
// cubes of one side l (the maximum pattern width).

#include <cstdint>
#include <string>
#include <vector>

#include "sftmat/core.hpp"

namespace sft {

enum class NormalizeMode {
  all_extensions,  // every l-cube containing an occurrence
  non_proper_only  // only cubes where some occurrence touches the cube boundary
};

std::string to_string(NormalizeMode mode);

struct NormalizeOptions {
  NormalizeMode mode = NormalizeMode::all_extensions;
  // Refuse when k^(l^d) candidate cubes exceed this.
  std::uint64_t max_candidates = 1'000'000;
  unsigned threads = 1;
};

struct NormalizationReport {
  std::size_t side = 1;
  std::uint64_t cube_count = 0;
  NormalizeMode mode = NormalizeMode::all_extensions;
  // Allowed l-cubes.
  std::uint64_t allowed_count = 0;

  friend bool operator==(const NormalizationReport&, const NormalizationReport&) = default;
};

// Maximum width over the forbidden set, 1 when it is empty.
std::size_t normalized_side(const SftSpec& spec);

CubeSet normalize_to_cubes(const SftSpec& spec, const NormalizeOptions& options = {});

// All l-cubes not in `cubes`, in canonical (dictionary) order. This sequence is
// the index B_1..B_k shared by every compatibility matrix.
std::vector<Block> enumerate_allowed_cubes(const SftSpec& spec, const CubeSet& cubes,
                                           std::uint64_t max_candidates = 1'000'000);

// Every l-cube, forbidden or not, in canonical order.
std::vector<Block> enumerate_all_cubes(const SftSpec& spec, std::size_t side,
                                       std::uint64_t max_candidates = 1'000'000);

NormalizationReport make_report(const CubeSet& cubes, NormalizeMode mode,
                                std::uint64_t allowed_count);

}  // namespace sft
