#pragma once

// Compatibility-matrix primitives: dictionary orders on blocks, the ⊗ row
// constructor, and a sparse boolean matrix whose index is a grid of digits
// that can be read row-wise (O_H) or column-wise (O_V).

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sftmat/core.hpp"

namespace sft {

// Reading order on blocks: entries are read with `fastest_axis` varying
// fastest and the remaining axes in row-major order. In two dimensions
// fastest axis 1 is the row-wise reading O_H and axis 0 the column-wise O_V.
struct OrderTag {
  std::size_t fastest_axis = 1;

  static constexpr OrderTag horizontal() { return {1}; }
  static constexpr OrderTag vertical() { return {0}; }

  friend bool operator==(OrderTag, OrderTag) = default;
};

std::vector<Symbol> order_key(const Block& b, OrderTag tag);

// Dense boolean matrix used for the small-operand form of ⊗ and in tests.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  BoolMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c] != 0; }
  void set(std::size_t r, std::size_t c, bool v = true) { cells_[r * cols_ + c] = v ? 1 : 0; }

  friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

// 1-based position r for 1-based (alpha, beta, gamma, delta):
// r = alpha K^3 + beta K^2 + gamma K + delta - (K^3 + K^2 + K).
std::uint64_t otimes_position(std::uint64_t alpha, std::uint64_t beta, std::uint64_t gamma,
                              std::uint64_t delta, std::uint64_t k);

struct OtimesDigits {
  std::uint64_t alpha, beta, gamma, delta;  // 1-based
};
OtimesDigits otimes_digits(std::uint64_t r, std::uint64_t k);

// Row vector of length K^4 whose entry r is P[alpha,beta] * M_(alpha,beta)[gamma,delta],
// where M is viewed as K x K blocks of size K x K. P must be K x K and M K^2 x K^2.
std::vector<std::uint8_t> otimes(const BoolMatrix& p, const BoolMatrix& m);

// Digit grid behind a matrix index: `rows x cols` slots, each taking one of
// `radix` values. Position under O_H reads the slots row-wise, under O_V
// column-wise; the first slot read is the most significant digit.
struct IndexLayout {
  std::uint64_t radix = 1;
  std::size_t rows = 1;
  std::size_t cols = 1;

  std::size_t slots() const noexcept { return rows * cols; }
  // radix^(rows*cols); UINT64_MAX on overflow.
  std::uint64_t size() const;
  // Row-major slot numbers in reading order.
  std::vector<std::size_t> reading(OrderTag tag) const;
  // Digits in row-major slot order.
  std::vector<std::uint64_t> digits(std::uint64_t position, OrderTag tag) const;
  std::uint64_t position(std::span<const std::uint64_t> digits, OrderTag tag) const;
  std::uint64_t convert(std::uint64_t position, OrderTag from, OrderTag to) const;

  friend bool operator==(const IndexLayout&, const IndexLayout&) = default;
};

enum class MatrixKind { vertical, horizontal };

using Entry = std::pair<std::uint64_t, std::uint64_t>;

// Square sparse boolean matrix: rows and columns share one index, and only
// the positions of ones are stored, sorted.
struct CompatMatrix {
  MatrixKind kind = MatrixKind::vertical;
  unsigned level = 0;
  IndexLayout layout;
  OrderTag order = OrderTag::horizontal();
  std::vector<Entry> ones;

  std::uint64_t dimension() const { return layout.size(); }
  bool nonzero() const noexcept { return !ones.empty(); }
  // Same matrix with its index permuted to `tag`.
  CompatMatrix reordered(OrderTag tag) const;
  std::vector<std::uint64_t> nonzero_rows() const;
  std::vector<std::uint64_t> nonzero_cols() const;
};

// Submatrix view of a K^2 x K^2 matrix as K x K blocks of size K. Entries of
// each block are stored block-locally, sorted.
class BlockView {
 public:
  BlockView(const CompatMatrix& m, std::uint64_t block_size);

  std::uint64_t block_size() const noexcept { return k_; }
  std::span<const Entry> block(std::uint64_t bi, std::uint64_t bj) const;

 private:
  std::uint64_t k_;
  std::unordered_map<std::uint64_t, std::vector<Entry>> blocks_;
};

// Sparse ⊗ of block (bi, bj) of the viewed matrix with the matrix itself:
// sorted 0-based positions of the ones in the K^4 row.
std::vector<std::uint64_t> otimes_row(const BlockView& m, std::uint64_t bi, std::uint64_t bj);

}  // namespace sft
