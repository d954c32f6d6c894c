#pragma once

// Alphabet, pattern and block vocabulary, plus the occurrence checks the rest
// of the toolkit is built on.
//
// Conventions:
//   * Blocks are dense and row-major: axis 0 varies slowest. In two
//     dimensions axis 0 is the row (vertical) axis and axis 1 the column axis.
//   * Symbols are interned as their position in the declared alphabet.
//   * The canonical order on blocks of one shape is the dictionary order of
//     their row-major symbol sequences.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "sftmat/errors.hpp"

namespace sft {

using Symbol = std::uint8_t;
using Shape = std::vector<std::size_t>;
using Coord = std::vector<int>;

inline constexpr std::size_t kMaxAlphabet = 256;

std::size_t shape_volume(const Shape& shape);
std::string shape_to_string(const Shape& shape);

// A finite partial assignment, anchored so every axis has minimum coordinate 0.
class Pattern {
 public:
  Pattern() = default;
  // Translates the cells so that the minimum coordinate on every axis is 0.
  explicit Pattern(std::map<Coord, Symbol> cells);

  const std::map<Coord, Symbol>& cells() const noexcept { return cells_; }
  std::size_t dimension() const noexcept;
  // Bounding-box extent per axis: max coordinate + 1.
  Shape extent() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;
  friend auto operator<=>(const Pattern&, const Pattern&) = default;

 private:
  std::map<Coord, Symbol> cells_;
};

// Largest axis extent of the pattern.
std::size_t pattern_width(const Pattern& p);

class SftSpec {
 public:
  SftSpec(std::size_t dimension, std::vector<std::string> alphabet,
          std::vector<Pattern> forbidden);

  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  const std::vector<Pattern>& forbidden() const noexcept { return forbidden_; }

  friend bool operator==(const SftSpec&, const SftSpec&) = default;

 private:
  std::size_t dimension_;
  std::vector<std::string> alphabet_;
  std::vector<Pattern> forbidden_;
};

class Block {
 public:
  Block() = default;
  Block(Shape shape, std::vector<Symbol> data);

  static Block filled(Shape shape, Symbol s);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t dimension() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<const Symbol> data() const noexcept { return data_; }

  // Row-major linear offset of a multi-index.
  std::size_t linear(std::span<const std::size_t> index) const;
  Symbol at(std::span<const std::size_t> index) const { return data_[linear(index)]; }
  Symbol at(std::size_t row, std::size_t col) const { return data_[row * shape_[1] + col]; }

  std::string_view key() const noexcept {
    return {reinterpret_cast<const char*>(data_.data()), data_.size()};
  }

  friend bool operator==(const Block&, const Block&) = default;
  // Shape first, then dictionary order of the row-major data.
  friend std::strong_ordering operator<=>(const Block& a, const Block& b);

 private:
  Shape shape_;
  std::vector<Symbol> data_;
};

struct BlockHash {
  std::size_t operator()(const Block& b) const noexcept {
    return std::hash<std::string_view>{}(b.key());
  }
};

using BlockSet = std::unordered_set<Block, BlockHash>;

// Pattern covering every cell of a rectangular block.
Pattern pattern_from_block(const Block& b);

// Sub-block at `offset` with the given shape.
Block window(const Block& b, const Shape& offset, const Shape& shape);

// Concatenates a row-major grid of equally shaped blocks. `grid_shape` gives
// the number of blocks along each axis.
Block assemble(std::span<const Block> grid, const Shape& grid_shape);

Block concat(const Block& first, const Block& second, std::size_t axis);
inline Block stack_vertical(const Block& top, const Block& bottom) {
  return concat(top, bottom, 0);
}
inline Block join_horizontal(const Block& left, const Block& right) {
  return concat(left, right, 1);
}

// Layers [from, from + count) of `b` along `axis`.
Block slab(const Block& b, std::size_t axis, std::size_t from, std::size_t count);

Block transpose(const Block& b);

// Base-k code of a cube's row-major symbol sequence, first cell most
// significant, so numeric order equals dictionary order.
std::uint64_t cube_code(std::span<const Symbol> cells, std::size_t alphabet_size);
Block cube_from_code(std::uint64_t code, std::size_t dimension, std::size_t side,
                     std::size_t alphabet_size);

// Number of l-cubes over an alphabet, k^(l^d); UINT64_MAX when it overflows.
std::uint64_t cube_space_size(std::size_t dimension, std::size_t side,
                              std::size_t alphabet_size);

// Forbidden l-cubes of one uniform side.
class CubeSet {
 public:
  CubeSet(std::size_t dimension, std::size_t side, std::size_t alphabet_size,
          std::vector<Block> cubes);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t side() const noexcept { return side_; }
  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  // Sorted in canonical order, duplicate-free.
  const std::vector<Block>& cubes() const noexcept { return cubes_; }
  std::size_t size() const noexcept { return cubes_.size(); }
  bool empty() const noexcept { return cubes_.empty(); }

  bool contains_code(std::uint64_t code) const;
  bool contains(const Block& cube) const;

 private:
  std::size_t dimension_;
  std::size_t side_;
  std::size_t alphabet_size_;
  std::vector<Block> cubes_;
  std::vector<bool> mask_;
  std::unordered_set<std::uint64_t> codes_;
};

struct AllowedCheck {
  bool allowed = true;
  // Some axis is shorter than the cube side, so no cube fits at all.
  bool undersized = false;
};

// Scans every l-cube window of `b` at every offset.
AllowedCheck check_block(const Block& b, const CubeSet& cubes);
inline bool block_allowed(const Block& b, const CubeSet& cubes) {
  return check_block(b, cubes).allowed;
}

// Does `p` occur in `b` with its anchor at `offset`?
bool occurs_at(const Pattern& p, const Block& b, std::span<const std::size_t> offset);
// Does `p` occur anywhere in `b`?
bool occurs_in(const Pattern& p, const Block& b);

// Odometer over all multi-indices below `limits` (row-major order). Calls
// fn(index) for each; no calls if any limit is zero.
void for_each_index(const Shape& limits,
                    const std::function<void(std::span<const std::size_t>)>& fn);

}  // namespace sft
