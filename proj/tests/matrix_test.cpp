#include <gtest/gtest.h>

#include <set>

#include "sftmat/matrix.hpp"
#include "support.hpp"

using namespace sft;
using namespace sft::testing;

TEST(OrderKey, TwoByTwo) {
  const Block b = block2({{0, 1}, {2, 3}});  // [[a,b],[c,d]]
  EXPECT_EQ(order_key(b, OrderTag::horizontal()), (std::vector<Symbol>{0, 1, 2, 3}));
  EXPECT_EQ(order_key(b, OrderTag::vertical()), (std::vector<Symbol>{0, 2, 1, 3}));
  EXPECT_THROW(order_key(b, OrderTag{2}), ShapeError);
}

TEST(OrderKey, VerticalIsHorizontalOfTranspose) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    const Block b = random_block(rng, {1 + rng() % 4, 1 + rng() % 4}, 3);
    EXPECT_EQ(order_key(b, OrderTag::vertical()), order_key(transpose(b), OrderTag::horizontal()));
  }
}

TEST(OrderKey, GeneralDimensionPutsAxisLast) {
  std::vector<Symbol> data(8);
  for (Symbol i = 0; i < 8; ++i) data[i] = i;
  const Block cube({2, 2, 2}, data);
  EXPECT_EQ(order_key(cube, OrderTag{2}), data);
  // Axis 0 fastest: remaining axes (1, 2) row-major, then axis 0.
  EXPECT_EQ(order_key(cube, OrderTag{0}), (std::vector<Symbol>{0, 4, 1, 5, 2, 6, 3, 7}));
}

TEST(Otimes, IndexFormulaExamples) {
  EXPECT_EQ(otimes_position(1, 1, 1, 1, 2), 1u);
  EXPECT_EQ(otimes_position(2, 2, 2, 2, 2), 16u);
}

TEST(Otimes, IndexFormulaIsABijection) {
  for (std::uint64_t k : {2u, 3u, 4u}) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 1; a <= k; ++a)
      for (std::uint64_t b = 1; b <= k; ++b)
        for (std::uint64_t g = 1; g <= k; ++g)
          for (std::uint64_t d = 1; d <= k; ++d) {
            const auto r = otimes_position(a, b, g, d, k);
            EXPECT_GE(r, 1u);
            EXPECT_LE(r, k * k * k * k);
            seen.insert(r);
            const auto back = otimes_digits(r, k);
            EXPECT_EQ(back.alpha, a);
            EXPECT_EQ(back.beta, b);
            EXPECT_EQ(back.gamma, g);
            EXPECT_EQ(back.delta, d);
          }
    EXPECT_EQ(seen.size(), k * k * k * k);
  }
}

TEST(Otimes, ZeroLeftOperand) {
  BoolMatrix p(3, 3), m(9, 9);
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c < 9; ++c) m.set(r, c);
  const auto row = otimes(p, m);
  EXPECT_EQ(row.size(), 81u);
  EXPECT_TRUE(std::all_of(row.begin(), row.end(), [](auto v) { return v == 0; }));
}

TEST(Otimes, IdentityTimesOnes) {
  BoolMatrix p(2, 2), m(4, 4);
  p.set(0, 0);
  p.set(1, 1);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) m.set(r, c);
  const std::vector<std::uint8_t> expected{1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1};
  EXPECT_EQ(otimes(p, m), expected);
}

TEST(Otimes, ShapeMismatch) {
  EXPECT_THROW(otimes(BoolMatrix(2, 3), BoolMatrix(4, 4)), ShapeError);
  EXPECT_THROW(otimes(BoolMatrix(2, 2), BoolMatrix(4, 5)), ShapeError);
}

TEST(Otimes, AgreesWithDefiningFormula) {
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng() % 4;
    BoolMatrix p(k, k), m(k * k, k * k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) p.set(r, c, rng() & 1);
    for (std::size_t r = 0; r < k * k; ++r)
      for (std::size_t c = 0; c < k * k; ++c) m.set(r, c, rng() % 3 == 0);
    const auto row = otimes(p, m);
    for (std::uint64_t r = 1; r <= k * k * k * k; ++r) {
      const auto [a, b, g, d] = otimes_digits(r, k);
      const bool expected = p(a - 1, b - 1) && m((a - 1) * k + g - 1, (b - 1) * k + d - 1);
      ASSERT_EQ(row[r - 1] != 0, expected) << "trial " << trial << " r " << r;
    }
  }
}

TEST(Otimes, SparseRowMatchesDense) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 1 + rng() % 4;
    BoolMatrix m(k * k, k * k);
    CompatMatrix sparse{MatrixKind::vertical, 0, IndexLayout{k * k, 1, 1}, OrderTag::horizontal(), {}};
    for (std::size_t r = 0; r < k * k; ++r)
      for (std::size_t c = 0; c < k * k; ++c)
        if (rng() % 3 == 0) {
          m.set(r, c);
          sparse.ones.emplace_back(r, c);
        }
    const BlockView view(sparse, k);
    for (std::size_t bi = 0; bi < k; ++bi)
      for (std::size_t bj = 0; bj < k; ++bj) {
        BoolMatrix p(k, k);
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) p.set(a, b, m(bi * k + a, bj * k + b));
        const auto dense = otimes(p, m);
        std::vector<std::uint64_t> expected;
        for (std::size_t r = 0; r < dense.size(); ++r)
          if (dense[r]) expected.push_back(r);
        EXPECT_EQ(otimes_row(view, bi, bj), expected);
      }
  }
}

TEST(IndexLayout, ReadingsAndDigits) {
  const IndexLayout grid{3, 2, 2};
  EXPECT_EQ(grid.size(), 81u);
  EXPECT_EQ(grid.reading(OrderTag::horizontal()), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(grid.reading(OrderTag::vertical()), (std::vector<std::size_t>{0, 2, 1, 3}));
  const std::vector<std::uint64_t> digits{2, 0, 1, 2};  // [[a,b],[c,d]]
  const auto h = grid.position(digits, OrderTag::horizontal());
  const auto v = grid.position(digits, OrderTag::vertical());
  EXPECT_EQ(h, 2u * 27 + 0 * 9 + 1 * 3 + 2);
  EXPECT_EQ(v, 2u * 27 + 1 * 9 + 0 * 3 + 2);
  EXPECT_EQ(grid.digits(h, OrderTag::horizontal()), digits);
  EXPECT_EQ(grid.digits(v, OrderTag::vertical()), digits);
  EXPECT_EQ(grid.convert(h, OrderTag::horizontal(), OrderTag::vertical()), v);
  EXPECT_EQ((IndexLayout{1u << 20, 2, 2}.size()), UINT64_MAX);
}

TEST(IndexLayout, ConvertIsAPermutation) {
  for (const IndexLayout layout : {IndexLayout{2, 2, 2}, IndexLayout{3, 2, 1}, IndexLayout{2, 4, 2}}) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t p = 0; p < layout.size(); ++p) {
      const auto q = layout.convert(p, OrderTag::horizontal(), OrderTag::vertical());
      seen.insert(q);
      EXPECT_EQ(layout.convert(q, OrderTag::vertical(), OrderTag::horizontal()), p);
    }
    EXPECT_EQ(seen.size(), layout.size());
  }
}

TEST(CompatMatrix, ReorderRoundTrip) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    CompatMatrix m{MatrixKind::horizontal, 1, IndexLayout{2 + rng() % 2, 4, 2}, OrderTag::horizontal(), {}};
    const auto n = m.dimension();
    for (int i = 0; i < 200; ++i) m.ones.emplace_back(rng() % n, rng() % n);
    std::sort(m.ones.begin(), m.ones.end());
    m.ones.erase(std::unique(m.ones.begin(), m.ones.end()), m.ones.end());
    const CompatMatrix v = m.reordered(OrderTag::vertical());
    EXPECT_EQ(v.order, OrderTag::vertical());
    EXPECT_EQ(v.ones.size(), m.ones.size());
    EXPECT_TRUE(std::is_sorted(v.ones.begin(), v.ones.end()));
    const CompatMatrix back = v.reordered(OrderTag::horizontal());
    EXPECT_EQ(back.ones, m.ones);
    EXPECT_EQ(back.layout, m.layout);
  }
}

TEST(CompatMatrix, NonzeroRowsAndCols) {
  CompatMatrix m{MatrixKind::vertical, 0, IndexLayout{4, 1, 1}, OrderTag::horizontal(), {{0, 3}, {0, 1}, {2, 1}}};
  std::sort(m.ones.begin(), m.ones.end());
  EXPECT_EQ(m.nonzero_rows(), (std::vector<std::uint64_t>{0, 2}));
  EXPECT_EQ(m.nonzero_cols(), (std::vector<std::uint64_t>{1, 3}));
  EXPECT_TRUE(m.nonzero());
}

TEST(BlockView, RequiresSquareBlocking) {
  CompatMatrix m{MatrixKind::vertical, 0, IndexLayout{5, 1, 1}, OrderTag::horizontal(), {}};
  EXPECT_THROW(BlockView(m, 2), ShapeError);
}
