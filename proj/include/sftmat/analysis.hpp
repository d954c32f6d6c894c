#pragma once

// Level-by-level analysis on top of the engines: verdicts, witnesses and
// patch sampling.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sftmat/core.hpp"
#include "sftmat/dchain.hpp"
#include "sftmat/literal.hpp"
#include "sftmat/normalizer.hpp"
#include "sftmat/reduced.hpp"

namespace sft {

enum class EngineMode { literal, reduced };
std::string to_string(EngineMode mode);

enum class Verdict { empty, nonempty_to_level, inconclusive };

// One line of a report. For the square pipelines stage is "square" (block
// count |S_n|, relation count |R_n|) or "rect" (|R_n|, then |S_{n+1}| when
// computed). The d-chain uses "cube" for level 0 and "axis-i" for the stage
// that doubled axis i.
struct StageRow {
  unsigned level = 0;
  std::string stage;
  Shape shape;
  std::uint64_t block_count = 0;
  std::optional<std::uint64_t> relation_count;

  friend bool operator==(const StageRow&, const StageRow&) = default;
};

struct LevelReport {
  std::size_t dimension = 0;
  EngineMode mode = EngineMode::reduced;
  NormalizationReport normalization;
  std::vector<StageRow> rows;
  Verdict verdict = Verdict::inconclusive;
  unsigned requested_level = 0;
  // Highest level whose square (cube) set was computed and found nonempty.
  std::optional<unsigned> certified_level;
  std::string stop_reason;

  // "empty", "nonempty-to-level-N" or "inconclusive".
  std::string verdict_text() const;
};

struct AnalyzeOptions {
  EngineMode mode = EngineMode::reduced;
  NormalizeMode normalize = NormalizeMode::all_extensions;
  std::uint64_t max_candidates = 1'000'000;
  EngineCaps caps;
  LiteralOptions literal;
  // Literal mode indexes every l-cube unless this is set.
  bool literal_allowed_index = false;
  // Use the d-chain even for d = 2 (reduced mode only).
  bool force_chain = false;
};

struct Analysis {
  LevelReport report;
  CubeSet cubes;
  std::vector<Block> allowed;  // canonical cube index of the reduced engines
  std::vector<Block> index;    // literal index (all or allowed cubes)
  // Reduced d = 2: levels 0..N-1 closed, the last one open.
  std::vector<LevelState> levels;
  // Other dimensions: every chain stage computed.
  std::vector<DChainState> chain;
  // Literal: V^0..V^N and H^0..H^{N-1}.
  std::vector<CompatMatrix> vertical;
  std::vector<CompatMatrix> horizontal;
};

// Budget stops become an inconclusive verdict; other errors propagate.
Analysis analyze(const SftSpec& spec, unsigned levels, const AnalyzeOptions& options = {});

struct WitnessOptions {
  std::uint64_t max_nodes = 1'000'000;
};

struct WitnessResult {
  std::optional<Block> block;
  std::string reason;  // why the search came back empty-handed
  std::uint64_t nodes = 0;
};

// Tries to tile a cube of side 2^level * l with allowed cubes, placed in
// Z-order with backtracking. Every returned block passes block_allowed.
WitnessResult witness_search(const CubeSet& cubes, const std::vector<Block>& allowed_cubes,
                             unsigned level, const WitnessOptions& options = {});

// Uniform draw from a block list, reproducible per seed.
Block sample_block(const std::vector<Block>& blocks, std::uint64_t seed);

// Uniformly random member of S_n. An allowed square is the central patch of
// some finite extension chain, but need not extend to a full configuration.
Block sample_patch(const LevelState& state, std::uint64_t seed);

// Count of allowed blocks of a shape the pipeline produces: squares of side
// 2^n * l, rects of 2s x s, or any d-chain stage shape.
std::uint64_t engine_count(const SftSpec& spec, const Shape& shape,
                           const AnalyzeOptions& options = {});

}  // namespace sft
