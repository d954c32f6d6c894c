#include <gtest/gtest.h>

#include "equivalence.hpp"
#include "sftmat/literal.hpp"
#include "sftmat/normalizer.hpp"
#include "support.hpp"

using namespace sft;
using namespace sft::testing;

namespace {

LiteralOptions wide_index() {
  LiteralOptions o;
  o.max_index = std::uint64_t{1} << 34;
  return o;
}

std::vector<Block> all_cubes(const SftSpec& spec, const CubeSet& cubes) {
  return enumerate_all_cubes(spec, cubes.side());
}

}  // namespace

TEST(Literal, SquareCounts) {
  EXPECT_EQ(literal_square_count(7, 0), 7u);
  EXPECT_EQ(literal_square_count(7, 1), 2401u);
  EXPECT_EQ(literal_square_count(2, 2), 65536u);
  EXPECT_EQ(literal_square_count(16, 2), UINT64_MAX);
}

TEST(Literal, FullShiftIsAllOnes) {
  const SftSpec spec = full_shift();
  const CubeSet cubes = normalize_to_cubes(spec);
  const auto index = all_cubes(spec, cubes);
  const auto lit = build_level0_literal(index, cubes);
  EXPECT_EQ(lit.vertical.ones.size(), 4u);
  EXPECT_EQ(lit.horizontal.ones.size(), 16u);
  const auto pair = step_literal(lit.horizontal, wide_index());
  EXPECT_EQ(pair.vertical.dimension(), 16u);
  EXPECT_EQ(pair.vertical.ones.size(), 256u);
  EXPECT_EQ(pair.vertical.order, OrderTag::vertical());
  EXPECT_EQ(pair.horizontal.order, OrderTag::horizontal());
  EXPECT_EQ(pair.horizontal.ones.size(), 65536u);
}

TEST(Literal, HardSquaresAllowedIndex) {
  const SftSpec spec = hard_squares();
  const CubeSet cubes = normalize_to_cubes(spec);
  const auto index = enumerate_allowed_cubes(spec, cubes);
  const auto lit = build_level0_literal(index, cubes);
  EXPECT_EQ(lit.vertical.ones.size(), 41u);
  EXPECT_EQ(lit.horizontal.ones.size(), 1234u);
  const auto v1 = next_vertical(lit.horizontal);
  EXPECT_EQ(v1.ones.size(), 1095851u);
  EXPECT_EQ(v1.nonzero_rows().size(), 1234u);
  EXPECT_EQ(v1.nonzero_cols().size(), 1234u);
}

TEST(Literal, HardSquaresAllCubeIndexNeedsWideIndex) {
  const SftSpec spec = hard_squares();
  const CubeSet cubes = normalize_to_cubes(spec);
  const auto index = all_cubes(spec, cubes);
  const auto lit = build_level0_literal(index, cubes);
  EXPECT_EQ(lit.vertical.ones.size(), 41u);
  EXPECT_EQ(lit.horizontal.ones.size(), 1234u);
  EXPECT_THROW(next_vertical(lit.horizontal), BudgetError);
  const auto v1 = next_vertical(lit.horizontal, wide_index());
  EXPECT_EQ(v1.dimension(), 65536u);
  EXPECT_EQ(v1.ones.size(), 1095851u);
}

TEST(Literal, OnesBudget) {
  const SftSpec spec = hard_squares();
  const CubeSet cubes = normalize_to_cubes(spec);
  LiteralOptions tight;
  tight.max_ones = 1000;
  const auto lit = build_level0_literal(enumerate_allowed_cubes(spec, cubes), cubes);
  EXPECT_THROW(next_vertical(lit.horizontal, tight), BudgetError);
}

TEST(Literal, RejectsOtherDimensions) {
  const SftSpec spec = golden_mean();
  const CubeSet cubes = normalize_to_cubes(spec);
  EXPECT_THROW(build_level0_literal(enumerate_allowed_cubes(spec, cubes), cubes), UnsupportedError);
}

TEST(Literal, IndexBlocks) {
  const std::vector<Block> index{block2({{0}}), block2({{1}})};
  // [[1,0],[0,1]] read row-wise is (1,0,0,1).
  EXPECT_EQ(literal_square(index, 1, 0b1001), block2({{1, 0}, {0, 1}}));
  EXPECT_EQ(literal_rect(index, 0, 1), block2({{0}, {1}}));
  EXPECT_EQ(literal_rect(index, 1, 0b1001 * 16 + 0b0110), block2({{1, 0}, {0, 1}, {0, 1}, {1, 0}}));
  EXPECT_THROW(literal_square(index, 1, 16), RangeError);
  CompatMatrix v{MatrixKind::vertical, 1, IndexLayout{2, 2, 2}, OrderTag::vertical(), {}};
  // Column-wise (1,0,1,0) is [[1,1],[0,0]].
  EXPECT_EQ(index_block(index, v, 0b1010), block2({{1, 1}, {0, 0}}));
}

// Indices that are not allowed blocks have zero rows and columns, and every
// one stands for an allowed stack or side-by-side pair.
TEST(Literal, OnesAreExactlyTheAllowedPairs) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const SftSpec spec = random_cube_spec(rng);
    const CubeSet cubes = normalize_to_cubes(spec);
    const auto index = all_cubes(spec, cubes);
    const auto lit = build_level0_literal(index, cubes);
    LiteralOptions o = wide_index();
    o.max_ones = 2'000'000;
    std::optional<CompatMatrix> v1;
    try {
      v1 = next_vertical(lit.horizontal, o);
    } catch (const BudgetError&) {
      continue;
    }
    for (const auto& [r, c] : v1->ones) {
      const Block top = index_block(index, *v1, r), bottom = index_block(index, *v1, c);
      ASSERT_TRUE(block_allowed(top, cubes));
      ASSERT_TRUE(block_allowed(bottom, cubes));
      ASSERT_TRUE(block_allowed(stack_vertical(top, bottom), cubes));
    }
    std::uint64_t expected = 0;
    for (const auto& [r, c] : lit.horizontal.ones) {
      const Block left = index_block(index, lit.horizontal, r), right = index_block(index, lit.horizontal, c);
      ASSERT_TRUE(block_allowed(join_horizontal(left, right), cubes));
      ++expected;
    }
    std::uint64_t scanned = 0;
    for (std::uint64_t r = 0; r < lit.horizontal.dimension(); ++r)
      for (std::uint64_t c = 0; c < lit.horizontal.dimension(); ++c)
        scanned += block_allowed(join_horizontal(literal_rect(index, 0, r), literal_rect(index, 0, c)), cubes);
    EXPECT_EQ(scanned, expected);
  }
}

TEST(Literal, CheckerboardSecondLevel) {
  const SftSpec spec = checkerboard();
  const CubeSet cubes = normalize_to_cubes(spec);
  const auto index = all_cubes(spec, cubes);
  const auto lit = build_level0_literal(index, cubes);
  EXPECT_EQ(lit.horizontal.ones.size(), 2u);
  const auto pair = step_literal(lit.horizontal, wide_index());
  EXPECT_EQ(pair.vertical.ones.size(), 2u);
  EXPECT_EQ(pair.horizontal.ones.size(), 2u);
  for (const auto& [r, c] : pair.horizontal.ones) {
    const Block square = join_horizontal(index_block(index, pair.horizontal, r), index_block(index, pair.horizontal, c));
    EXPECT_EQ(square.shape(), (Shape{8, 8}));
    EXPECT_TRUE(block_allowed(square, cubes));
  }
}

TEST(Literal, MatchesReducedOnHardSquares) {
  const auto res = literal_matches_reduced(hard_squares(), wide_index());
  EXPECT_TRUE(res.ok) << res.detail;
  EXPECT_EQ(res.v0, 41u);
  EXPECT_EQ(res.h0, 1234u);
  EXPECT_EQ(res.v1, 1095851u);
}

TEST(Literal, MatchesReducedOnRandomSpecs) {
  std::mt19937_64 rng(32);
  int compared = 0;
  while (compared < 5) {
    const SftSpec spec = random_cube_spec(rng);
    LiteralOptions o = wide_index();
    o.max_ones = 500'000;
    try {
      const auto res = literal_matches_reduced(spec, o);
      EXPECT_TRUE(res.ok) << res.detail;
      ++compared;
    } catch (const BudgetError&) {
    }
  }
}
