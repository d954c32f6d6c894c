#include "sftmat/dchain.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "sftmat/parallel.hpp"

namespace sft {

Shape chain_shape(std::size_t dimension, std::size_t cube_side, unsigned level, std::size_t stage) {
  if (level == 0) return Shape(dimension, cube_side);
  const std::size_t big = cube_side << level;
  Shape shape(dimension, big / 2);
  for (std::size_t i = 0; i < stage; ++i) shape[i] = big;
  return shape;
}

Shape DChainState::block_shape() const {
  return chain_shape(dimension, cube_side, level, stage);
}

DChainState d_chain_start(std::vector<Block> allowed_cubes, const CubeSet& cubes) {
  std::sort(allowed_cubes.begin(), allowed_cubes.end());
  DChainState state;
  state.dimension = cubes.dimension();
  state.cube_side = cubes.side();
  state.level = 0;
  state.stage = cubes.dimension();
  state.blocks = std::move(allowed_cubes);
  return state;
}

namespace {

std::string half_key(const Block& b, std::size_t axis, bool second) {
  const std::size_t half = b.shape()[axis] / 2;
  return std::string(slab(b, axis, second ? half : 0, half).key());
}

}  // namespace

Relation chain_relation(const DChainState& state, const CubeSet& cubes, const EngineCaps& caps) {
  const std::size_t axis = state.next_axis();
  const auto& blocks = state.blocks;
  Relation out;
  if (blocks.empty()) return out;

  if (blocks.front().shape()[axis] == state.cube_side) {
    out = seam_pairs(blocks, axis, cubes, caps);
  } else {
    std::unordered_map<std::string, std::vector<std::uint32_t>> by_first, by_second;
    std::vector<std::string> firsts, seconds;
    for (std::uint32_t i = 0; i < blocks.size(); ++i) {
      firsts.push_back(half_key(blocks[i], axis, false));
      seconds.push_back(half_key(blocks[i], axis, true));
      by_first[firsts.back()].push_back(i);
      by_second[seconds.back()].push_back(i);
    }
    for (std::uint32_t m = 0; m < blocks.size(); ++m) {
      auto before = by_second.find(firsts[m]);
      auto after = by_first.find(seconds[m]);
      if (before == by_second.end() || after == by_first.end()) continue;
      for (auto a : before->second)
        for (auto b : after->second) out.emplace_back(a, b);
      if (out.size() > caps.max_blocks) break;
    }
  }
  if (out.size() > caps.max_blocks)
    throw BudgetError("chain stage exceeded the block cap of " + std::to_string(caps.max_blocks),
                      out.size(), caps.max_blocks, out.size());
  std::sort(out.begin(), out.end());
  return out;
}

DChainState d_chain_step(const DChainState& state, const CubeSet& cubes, const EngineCaps& caps) {
  return d_chain_step(state, chain_relation(state, cubes, caps));
}

DChainState d_chain_step(const DChainState& state, const Relation& pairs) {
  const std::size_t axis = state.next_axis();
  DChainState next;
  next.dimension = state.dimension;
  next.cube_side = state.cube_side;
  next.level = state.stage == state.dimension ? state.level + 1 : state.level;
  next.stage = axis + 1;
  next.blocks.reserve(pairs.size());
  for (const auto& [a, b] : pairs) next.blocks.push_back(concat(state.blocks[a], state.blocks[b], axis));
  std::sort(next.blocks.begin(), next.blocks.end());
  return next;
}

}  // namespace sft
