#pragma once

// Dimension-generic doubling chain. Starting from the allowed l-cubes, each
// stage doubles the blocks along one axis, cycling through axes 0..d-1; after
// d stages of level n every block is a cube of side 2^n * l.
//
// Two blocks are compatible along an axis when their concatenation is
// allowed. While the blocks are still l wide along that axis this is a full
// block_allowed scan; afterwards it is membership of the middle window (second
// half of the first block followed by the first half of the second) in the
// current block set.

#include <cstdint>
#include <vector>

#include "sftmat/core.hpp"
#include "sftmat/reduced.hpp"

namespace sft {

struct DChainState {
  std::size_t dimension = 0;
  std::size_t cube_side = 0;
  unsigned level = 0;
  // Number of axes already doubled at this level, 1..d (level 0 uses d).
  std::size_t stage = 0;
  std::vector<Block> blocks;  // canonical order

  // Axis the next step doubles.
  std::size_t next_axis() const noexcept { return stage == dimension ? 0 : stage; }
  Shape block_shape() const;
};

DChainState d_chain_start(std::vector<Block> allowed_cubes, const CubeSet& cubes);

// Pairs (first, second) of blocks compatible along next_axis().
Relation chain_relation(const DChainState& state, const CubeSet& cubes,
                        const EngineCaps& caps = {});

DChainState d_chain_step(const DChainState& state, const CubeSet& cubes,
                         const EngineCaps& caps = {});
// Same, from an already computed chain_relation(state).
DChainState d_chain_step(const DChainState& state, const Relation& pairs);

// Block shape at (level, stage) for cube side l in d dimensions.
Shape chain_shape(std::size_t dimension, std::size_t cube_side, unsigned level, std::size_t stage);

}  // namespace sft
