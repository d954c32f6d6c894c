#include <gtest/gtest.h>

#include "sftmat/dchain.hpp"
#include "sftmat/normalizer.hpp"
#include "sftmat/oracle.hpp"
#include "support.hpp"

using namespace sft;
using namespace sft::testing;

namespace {

DChainState start(const SftSpec& spec, CubeSet& cubes) {
  cubes = normalize_to_cubes(spec);
  return d_chain_start(enumerate_allowed_cubes(spec, cubes), cubes);
}

}  // namespace

TEST(DChain, Shapes) {
  EXPECT_EQ(chain_shape(3, 2, 0, 3), (Shape{2, 2, 2}));
  EXPECT_EQ(chain_shape(3, 2, 1, 1), (Shape{4, 2, 2}));
  EXPECT_EQ(chain_shape(3, 2, 1, 2), (Shape{4, 4, 2}));
  EXPECT_EQ(chain_shape(3, 2, 1, 3), (Shape{4, 4, 4}));
  EXPECT_EQ(chain_shape(1, 2, 2, 1), (Shape{8}));
}

TEST(DChain, GoldenMeanWords) {
  CubeSet cubes(1, 1, 2, {});
  DChainState s = start(golden_mean(), cubes);
  EXPECT_EQ(s.blocks.size(), 3u);
  EXPECT_EQ(s.blocks.size(), golden_mean_words(2));
  for (std::size_t len : {4u, 8u, 16u}) {
    s = d_chain_step(s, cubes);
    EXPECT_EQ(s.block_shape(), (Shape{len}));
    EXPECT_EQ(s.blocks.size(), golden_mean_words(len));
  }
  EXPECT_EQ(s.blocks.size(), 2584u);
}

TEST(DChain, HardCubes) {
  CubeSet cubes(1, 1, 2, {});
  DChainState s = start(hard_cubes(), cubes);
  EXPECT_EQ(cubes.side(), 2u);
  EXPECT_EQ(s.blocks.size(), 35u);
  EXPECT_EQ(s.blocks.size(), cuboid_independent_sets(2, 2, 2));
  EXPECT_EQ(brute_force_allowed(hard_cubes(), {2, 2, 2}).count, 35u);
  s = d_chain_step(s, cubes);
  EXPECT_EQ(s.block_shape(), (Shape{4, 2, 2}));
  EXPECT_EQ(s.blocks.size(), 933u);
  EXPECT_EQ(s.blocks.size(), cuboid_independent_sets(4, 2, 2));
  EXPECT_EQ(brute_force_allowed(hard_cubes(), {4, 2, 2}).count, 933u);
  s = d_chain_step(s, cubes);
  EXPECT_EQ(s.block_shape(), (Shape{4, 4, 2}));
  EXPECT_EQ(s.blocks.size(), cuboid_independent_sets(4, 4, 2));
  for (const auto& b : s.blocks) ASSERT_TRUE(block_allowed(b, cubes));
}

TEST(DChain, TwoDimensionsReproduceSquarePipeline) {
  CubeSet cubes(1, 1, 2, {});
  DChainState s = start(hard_squares(), cubes);
  EXPECT_EQ(s.blocks.size(), 7u);
  EXPECT_EQ(chain_relation(s, cubes).size(), 41u);
  s = d_chain_step(s, cubes);
  EXPECT_EQ(s.block_shape(), (Shape{4, 2}));
  EXPECT_EQ(s.blocks.size(), 41u);
  s = d_chain_step(s, cubes);
  EXPECT_EQ(s.block_shape(), (Shape{4, 4}));
  EXPECT_EQ(s.blocks.size(), 1234u);
  EXPECT_EQ(s.level, 1u);
  EXPECT_EQ(s.next_axis(), 0u);
}

TEST(DChain, MatchesOracleOnRandomSpecs) {
  std::mt19937_64 rng(50);
  for (int trial = 0; trial < 25; ++trial) {
    const SftSpec spec = random_mixed_spec(rng);
    CubeSet cubes(1, 1, 2, {});
    DChainState s = start(spec, cubes);
    OracleOptions keep;
    keep.retain_limit = UINT64_MAX;
    EXPECT_EQ(s.blocks, *brute_force_allowed(spec, s.block_shape(), keep).blocks);
    for (int step = 0; step < 2; ++step) {
      s = d_chain_step(s, cubes);
      EXPECT_EQ(s.blocks, *brute_force_allowed(spec, s.block_shape(), keep).blocks);
    }
  }
}

TEST(DChain, RelationOverloadAgrees) {
  CubeSet cubes(1, 1, 2, {});
  const DChainState s = start(hard_cubes(), cubes);
  const auto a = d_chain_step(s, cubes);
  const auto b = d_chain_step(s, chain_relation(s, cubes, {10'000'000, 3}));
  EXPECT_EQ(a.blocks, b.blocks);
  EXPECT_EQ(a.stage, b.stage);
}

TEST(DChain, CapIsEnforced) {
  CubeSet cubes(1, 1, 2, {});
  const DChainState s = start(hard_cubes(), cubes);
  EXPECT_THROW(d_chain_step(s, cubes, {100, 1}), BudgetError);
}
