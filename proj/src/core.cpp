#include "sftmat/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace sft {

std::size_t shape_volume(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

std::string shape_to_string(const Shape& shape) {
  std::string out;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(shape[i]);
  }
  return out;
}

void for_each_index(const Shape& limits,
                    const std::function<void(std::span<const std::size_t>)>& fn) {
  for (auto v : limits)
    if (v == 0) return;
  std::vector<std::size_t> idx(limits.size(), 0);
  while (true) {
    fn(idx);
    std::size_t axis = limits.size();
    while (axis > 0) {
      --axis;
      if (++idx[axis] < limits[axis]) break;
      idx[axis] = 0;
      if (axis == 0) return;
    }
    if (limits.empty()) return;
  }
}

// ---------------------------------------------------------------- Pattern

Pattern::Pattern(std::map<Coord, Symbol> cells) {
  if (cells.empty()) throw SpecError("pattern support must be nonempty");
  const std::size_t d = cells.begin()->first.size();
  if (d == 0) throw SpecError("pattern coordinates must have at least one axis");
  Coord lo(d, std::numeric_limits<int>::max());
  for (const auto& [c, s] : cells) {
    if (c.size() != d) throw SpecError("pattern mixes coordinate dimensions");
    for (std::size_t i = 0; i < d; ++i) lo[i] = std::min(lo[i], c[i]);
  }
  for (const auto& [c, s] : cells) {
    Coord shifted(d);
    for (std::size_t i = 0; i < d; ++i) shifted[i] = c[i] - lo[i];
    cells_.emplace(std::move(shifted), s);
  }
}

std::size_t Pattern::dimension() const noexcept {
  return cells_.empty() ? 0 : cells_.begin()->first.size();
}

Shape Pattern::extent() const {
  Shape ext(dimension(), 0);
  for (const auto& [c, s] : cells_)
    for (std::size_t i = 0; i < c.size(); ++i)
      ext[i] = std::max(ext[i], static_cast<std::size_t>(c[i]) + 1);
  return ext;
}

std::size_t pattern_width(const Pattern& p) {
  const Shape ext = p.extent();
  return ext.empty() ? 0 : *std::max_element(ext.begin(), ext.end());
}

Pattern pattern_from_block(const Block& b) {
  std::map<Coord, Symbol> cells;
  for_each_index(b.shape(), [&](std::span<const std::size_t> idx) {
    cells.emplace(Coord(idx.begin(), idx.end()), b.at(idx));
  });
  return Pattern(std::move(cells));
}

// ---------------------------------------------------------------- SftSpec

SftSpec::SftSpec(std::size_t dimension, std::vector<std::string> alphabet,
                 std::vector<Pattern> forbidden)
    : dimension_(dimension), alphabet_(std::move(alphabet)), forbidden_(std::move(forbidden)) {
  if (dimension_ < 1) throw SpecError("dimension must be at least 1");
  if (alphabet_.empty()) throw SpecError("alphabet must be nonempty");
  if (alphabet_.size() > kMaxAlphabet)
    throw SpecError("alphabet has more than " + std::to_string(kMaxAlphabet) + " symbols");
  std::set<std::string> seen;
  for (const auto& a : alphabet_) {
    if (a.empty()) throw SpecError("alphabet symbols must be nonempty strings");
    if (!seen.insert(a).second) throw SpecError("duplicate alphabet symbol '" + a + "'");
  }
  for (std::size_t i = 0; i < forbidden_.size(); ++i) {
    const auto& p = forbidden_[i];
    if (p.cells().empty())
      throw SpecError("forbidden pattern " + std::to_string(i) + " has empty support");
    if (p.dimension() != dimension_)
      throw SpecError("forbidden pattern " + std::to_string(i) + " has dimension " +
                      std::to_string(p.dimension()) + ", expected " +
                      std::to_string(dimension_));
    for (const auto& [c, s] : p.cells())
      if (s >= alphabet_.size())
        throw SpecError("forbidden pattern " + std::to_string(i) +
                        " uses a symbol outside the alphabet");
  }
  std::sort(forbidden_.begin(), forbidden_.end());
  forbidden_.erase(std::unique(forbidden_.begin(), forbidden_.end()), forbidden_.end());
}

// ---------------------------------------------------------------- Block

Block::Block(Shape shape, std::vector<Symbol> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (shape_.empty()) throw ShapeError("block shape must have at least one axis");
  for (auto v : shape_)
    if (v == 0) throw ShapeError("block extents must be positive");
  if (shape_volume(shape_) != data_.size())
    throw ShapeError("block data length " + std::to_string(data_.size()) +
                     " does not match shape " + shape_to_string(shape_));
}

Block Block::filled(Shape shape, Symbol s) {
  const std::size_t n = shape_volume(shape);
  return Block(std::move(shape), std::vector<Symbol>(n, s));
}

std::size_t Block::linear(std::span<const std::size_t> index) const {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < shape_.size(); ++i) pos = pos * shape_[i] + index[i];
  return pos;
}

std::strong_ordering operator<=>(const Block& a, const Block& b) {
  if (auto c = a.shape_ <=> b.shape_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.data_.begin(), a.data_.end(),
                                                b.data_.begin(), b.data_.end());
}

Block window(const Block& b, const Shape& offset, const Shape& shape) {
  const std::size_t d = b.dimension();
  if (offset.size() != d || shape.size() != d)
    throw RangeError("window rank does not match block dimension");
  for (std::size_t i = 0; i < d; ++i) {
    if (shape[i] == 0) throw RangeError("window extents must be positive");
    if (offset[i] + shape[i] > b.shape()[i])
      throw RangeError("window " + shape_to_string(shape) + " at offset " +
                       shape_to_string(offset) + " exceeds block " +
                       shape_to_string(b.shape()));
  }
  std::vector<Symbol> out;
  out.reserve(shape_volume(shape));
  if (d == 2) {
    for (std::size_t r = 0; r < shape[0]; ++r)
      for (std::size_t c = 0; c < shape[1]; ++c)
        out.push_back(b.at(offset[0] + r, offset[1] + c));
    return Block(shape, std::move(out));
  }
  std::vector<std::size_t> src(d);
  for_each_index(shape, [&](std::span<const std::size_t> idx) {
    for (std::size_t i = 0; i < d; ++i) src[i] = offset[i] + idx[i];
    out.push_back(b.at(src));
  });
  return Block(shape, std::move(out));
}

Block assemble(std::span<const Block> grid, const Shape& grid_shape) {
  if (grid.empty()) throw ShapeError("cannot assemble an empty grid");
  if (shape_volume(grid_shape) != grid.size())
    throw ShapeError("grid shape " + shape_to_string(grid_shape) + " does not match " +
                     std::to_string(grid.size()) + " constituents");
  const Shape& part = grid.front().shape();
  const std::size_t d = part.size();
  if (grid_shape.size() != d) throw ShapeError("grid rank does not match block dimension");
  for (const auto& g : grid)
    if (g.shape() != part)
      throw ShapeError("constituent shapes differ: " + shape_to_string(part) + " vs " +
                       shape_to_string(g.shape()));
  Shape total(d);
  for (std::size_t i = 0; i < d; ++i) total[i] = part[i] * grid_shape[i];
  std::vector<Symbol> out(shape_volume(total));
  Block result(total, std::move(out));
  std::vector<Symbol> buffer(result.size());
  std::vector<std::size_t> cell(d);
  for_each_index(total, [&](std::span<const std::size_t> idx) {
    std::size_t g = 0;
    for (std::size_t i = 0; i < d; ++i) {
      g = g * grid_shape[i] + idx[i] / part[i];
      cell[i] = idx[i] % part[i];
    }
    buffer[result.linear(idx)] = grid[g].at(cell);
  });
  return Block(std::move(total), std::move(buffer));
}

Block concat(const Block& first, const Block& second, std::size_t axis) {
  if (first.shape() != second.shape())
    throw ShapeError("concatenated blocks must share a shape");
  if (axis >= first.dimension()) throw ShapeError("concatenation axis out of range");
  const auto& shape = first.shape();
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= shape[i];
  for (std::size_t i = axis; i < shape.size(); ++i) inner *= shape[i];
  std::vector<Symbol> out;
  out.reserve(2 * first.size());
  const auto a = first.data(), b = second.data();
  for (std::size_t o = 0; o < outer; ++o) {
    out.insert(out.end(), a.begin() + o * inner, a.begin() + (o + 1) * inner);
    out.insert(out.end(), b.begin() + o * inner, b.begin() + (o + 1) * inner);
  }
  Shape joined = shape;
  joined[axis] *= 2;
  return Block(std::move(joined), std::move(out));
}

Block slab(const Block& b, std::size_t axis, std::size_t from, std::size_t count) {
  if (axis >= b.dimension()) throw RangeError("slab axis out of range");
  const auto& shape = b.shape();
  if (count == 0 || from + count > shape[axis])
    throw RangeError("slab layers exceed block " + shape_to_string(shape));
  std::size_t outer = 1, inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= shape[i];
  for (std::size_t i = axis + 1; i < shape.size(); ++i) inner *= shape[i];
  std::vector<Symbol> out;
  out.reserve(outer * count * inner);
  const auto data = b.data();
  for (std::size_t o = 0; o < outer; ++o) {
    const auto begin = data.begin() + (o * shape[axis] + from) * inner;
    out.insert(out.end(), begin, begin + count * inner);
  }
  Shape sub = shape;
  sub[axis] = count;
  return Block(std::move(sub), std::move(out));
}

Block transpose(const Block& b) {
  if (b.dimension() != 2) throw ShapeError("transpose needs a two-dimensional block");
  const std::size_t rows = b.shape()[0], cols = b.shape()[1];
  std::vector<Symbol> out;
  out.reserve(b.size());
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) out.push_back(b.at(r, c));
  return Block({cols, rows}, std::move(out));
}

// ---------------------------------------------------------------- cubes

std::uint64_t cube_code(std::span<const Symbol> cells, std::size_t alphabet_size) {
  std::uint64_t code = 0;
  for (Symbol s : cells) code = code * alphabet_size + s;
  return code;
}

Block cube_from_code(std::uint64_t code, std::size_t dimension, std::size_t side,
                     std::size_t alphabet_size) {
  Shape shape(dimension, side);
  std::vector<Symbol> cells(shape_volume(shape));
  for (std::size_t i = cells.size(); i-- > 0;) {
    cells[i] = static_cast<Symbol>(code % alphabet_size);
    code /= alphabet_size;
  }
  return Block(std::move(shape), std::move(cells));
}

std::uint64_t cube_space_size(std::size_t dimension, std::size_t side,
                              std::size_t alphabet_size) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t cells = 1;
  for (std::size_t i = 0; i < dimension; ++i) {
    if (cells > kMax / side) return kMax;
    cells *= side;
  }
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < cells; ++i) {
    if (total > (kMax - 1) / alphabet_size) return kMax;
    total *= alphabet_size;
  }
  return total;
}

namespace {
constexpr std::uint64_t kDenseMaskLimit = std::uint64_t{1} << 26;
}

CubeSet::CubeSet(std::size_t dimension, std::size_t side, std::size_t alphabet_size,
                 std::vector<Block> cubes)
    : dimension_(dimension), side_(side), alphabet_size_(alphabet_size), cubes_(std::move(cubes)) {
  if (dimension_ < 1 || side_ < 1 || alphabet_size_ < 1 || alphabet_size_ > kMaxAlphabet)
    throw SpecError("cube set needs positive dimension, side and alphabet size");
  const std::uint64_t space = cube_space_size(dimension_, side_, alphabet_size_);
  if (space == std::numeric_limits<std::uint64_t>::max())
    throw SpecError("cube space " + std::to_string(alphabet_size_) + "^(" +
                    std::to_string(side_) + "^" + std::to_string(dimension_) +
                    ") is too large to index");
  const Shape cube_shape(dimension_, side_);
  for (const auto& c : cubes_) {
    if (c.shape() != cube_shape)
      throw ShapeError("cube of shape " + shape_to_string(c.shape()) + " in a set of side " +
                       std::to_string(side_));
    for (Symbol s : c.data())
      if (s >= alphabet_size_) throw SpecError("cube uses a symbol outside the alphabet");
  }
  std::sort(cubes_.begin(), cubes_.end());
  cubes_.erase(std::unique(cubes_.begin(), cubes_.end()), cubes_.end());
  if (space <= kDenseMaskLimit) {
    mask_.assign(space, false);
    for (const auto& c : cubes_) mask_[cube_code(c.data(), alphabet_size_)] = true;
  } else {
    for (const auto& c : cubes_) codes_.insert(cube_code(c.data(), alphabet_size_));
  }
}

bool CubeSet::contains_code(std::uint64_t code) const {
  if (!mask_.empty()) return code < mask_.size() && mask_[code];
  return codes_.contains(code);
}

bool CubeSet::contains(const Block& cube) const {
  if (cube.shape() != Shape(dimension_, side_)) return false;
  return contains_code(cube_code(cube.data(), alphabet_size_));
}

AllowedCheck check_block(const Block& b, const CubeSet& cubes) {
  if (b.dimension() != cubes.dimension())
    throw SpecError("block dimension " + std::to_string(b.dimension()) +
                    " does not match cube dimension " + std::to_string(cubes.dimension()));
  const std::size_t k = cubes.alphabet_size();
  for (Symbol s : b.data())
    if (s >= k) throw SpecError("block uses a symbol outside the alphabet");
  const std::size_t l = cubes.side();
  for (auto v : b.shape())
    if (v < l) return {true, true};
  if (cubes.empty()) return {true, false};

  const auto data = b.data();
  if (b.dimension() == 2) {
    const std::size_t rows = b.shape()[0], cols = b.shape()[1];
    for (std::size_t r = 0; r + l <= rows; ++r)
      for (std::size_t c = 0; c + l <= cols; ++c) {
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < l; ++i) {
          const Symbol* row = data.data() + (r + i) * cols + c;
          for (std::size_t j = 0; j < l; ++j) code = code * k + row[j];
        }
        if (cubes.contains_code(code)) return {false, false};
      }
    return {true, false};
  }

  // Relative linear offsets of the cube cells inside b, in row-major cube order.
  std::vector<std::size_t> rel;
  for_each_index(Shape(b.dimension(), l),
                 [&](std::span<const std::size_t> idx) { rel.push_back(b.linear(idx)); });
  Shape origins(b.shape());
  for (auto& v : origins) v = v - l + 1;
  bool allowed = true;
  for_each_index(origins, [&](std::span<const std::size_t> idx) {
    if (!allowed) return;
    const std::size_t base = b.linear(idx);
    std::uint64_t code = 0;
    for (auto off : rel) code = code * k + data[base + off];
    if (cubes.contains_code(code)) allowed = false;
  });
  return {allowed, false};
}

bool occurs_at(const Pattern& p, const Block& b, std::span<const std::size_t> offset) {
  const std::size_t d = b.dimension();
  std::vector<std::size_t> pos(d);
  for (const auto& [c, s] : p.cells()) {
    for (std::size_t i = 0; i < d; ++i) {
      pos[i] = offset[i] + static_cast<std::size_t>(c[i]);
      if (pos[i] >= b.shape()[i]) return false;
    }
    if (b.at(pos) != s) return false;
  }
  return true;
}

bool occurs_in(const Pattern& p, const Block& b) {
  if (p.dimension() != b.dimension()) throw SpecError("pattern and block dimensions differ");
  const Shape ext = p.extent();
  Shape origins(b.dimension());
  for (std::size_t i = 0; i < origins.size(); ++i) {
    if (ext[i] > b.shape()[i]) return false;
    origins[i] = b.shape()[i] - ext[i] + 1;
  }
  bool found = false;
  for_each_index(origins, [&](std::span<const std::size_t> idx) {
    if (!found && occurs_at(p, b, idx)) found = true;
  });
  return found;
}

}  // namespace sft
