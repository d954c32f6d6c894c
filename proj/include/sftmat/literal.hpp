#pragma once

// Literal compatibility-matrix pipeline for d = 2.
//
// Index conventions (all positions 0-based):
//   V^0   layout {k, 1x1}: the cube index B_1..B_k.
//   H^0   layout {k, 2x1}: the rect (B_i over B_j) sits at i*k + j.
//   V^n   layout {K_{n-1}, 2x2} for n >= 1: a square [[a,b],[c,d]] of
//         level-(n-1) squares; O_H position (a,b,c,d), O_V (a,c,b,d).
//   H^n   layout {K_{n-1}, 4x2} for n >= 1: a tall rect (top over bottom)
//         of level-n squares; under O_H its position is top*K_n + bottom.
// K_n = |index of V^n|, so K_0 = k and K_{n+1} = K_n^4. Digits of a
// level-n square are always its O_H position at that level; reorders only
// permute the outermost slots.
//
// V^{n+1} is computed under O_H with row (x,y,z,w) = R^n_{zw} ⊗ H^n for
// allowed indices, then reordered to O_V. H^{n+1} is computed under O_V with
// row (left column | right column = (y,w),(y',w')) = S_{(yw)(y'w')} ⊗ V^{n+1}
// and reordered to O_H. Indices that are not allowed keep zero rows.

#include <cstdint>
#include <vector>

#include "sftmat/core.hpp"
#include "sftmat/matrix.hpp"

namespace sft {

struct LiteralOptions {
  // Refuse matrices whose index is longer than this.
  std::uint64_t max_index = 10'000;
  // Refuse matrices with more stored ones than this.
  std::uint64_t max_ones = 10'000'000;
  unsigned threads = 1;
};

// Level-0 pair built by full scans over the cube index.
struct LiteralLevel0 {
  CompatMatrix vertical;    // V^0
  CompatMatrix horizontal;  // H^0, ordered O_H
};

LiteralLevel0 build_level0_literal(const std::vector<Block>& index, const CubeSet& cubes,
                                   const LiteralOptions& options = {});

// V^{n+1} from H^n (H^n ordered O_H). Result ordered O_V.
CompatMatrix next_vertical(const CompatMatrix& horizontal, const LiteralOptions& options = {});

// H^{n+1} from V^{n+1} (ordered O_V). Result ordered O_H.
CompatMatrix next_horizontal(const CompatMatrix& vertical, const LiteralOptions& options = {});

struct LiteralPair {
  CompatMatrix vertical;
  CompatMatrix horizontal;
};

// (V^{n+1}, H^{n+1}) from H^n.
LiteralPair step_literal(const CompatMatrix& horizontal, const LiteralOptions& options = {});

// Number of level-n squares, K_n.
std::uint64_t literal_square_count(std::uint64_t k, unsigned level);

// Block behind a canonical (O_H) position of the V^level index.
Block literal_square(const std::vector<Block>& index, unsigned level, std::uint64_t position);
// Block behind a canonical (O_H) position of the H^level index.
Block literal_rect(const std::vector<Block>& index, unsigned level, std::uint64_t position);

// Block for a row/column position of `m` under its current order.
Block index_block(const std::vector<Block>& index, const CompatMatrix& m, std::uint64_t position);

}  // namespace sft
