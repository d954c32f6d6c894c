#include "sftmat/literal.hpp"

#include <algorithm>
#include <limits>

#include "sftmat/parallel.hpp"

namespace sft {

namespace {

constexpr auto kOverflow = std::numeric_limits<std::uint64_t>::max();

void check_index(std::uint64_t size, const LiteralOptions& options, const std::string& what) {
  if (size > options.max_index)
    throw BudgetError(what + " would have an index of length " +
                          (size == kOverflow ? std::string(">= 2^64") : std::to_string(size)) +
                          " (cap " + std::to_string(options.max_index) +
                          "); use the reduced engine or raise --max-index",
                      size, options.max_index);
}

void check_ones(std::uint64_t ones, const LiteralOptions& options, const char* what) {
  if (ones > options.max_ones)
    throw BudgetError(std::string(what) + " has more than " + std::to_string(options.max_ones) +
                          " ones; use the reduced engine or raise --max-blocks",
                      ones, options.max_ones, ones);
}

// Rows built in parallel chunks and merged in chunk order, then sorted.
template <typename RowFn>
std::vector<Entry> build_rows(const std::vector<Entry>& sources, const LiteralOptions& options,
                              const char* what, RowFn&& row_fn) {
  const std::size_t chunks = default_chunks(sources.size());
  std::vector<std::vector<Entry>> parts(chunks);
  parallel_chunks(sources.size(), chunks, options.threads,
                  [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                    auto& out = parts[chunk];
                    for (std::size_t i = begin; i < end; ++i) {
                      row_fn(sources[i], out);
                      check_ones(out.size(), options, what);
                    }
                  });
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  check_ones(total, options, what);
  std::vector<Entry> ones;
  ones.reserve(total);
  for (auto& p : parts) ones.insert(ones.end(), p.begin(), p.end());
  std::sort(ones.begin(), ones.end());
  return ones;
}

}  // namespace

std::uint64_t literal_square_count(std::uint64_t k, unsigned level) {
  std::uint64_t count = k;
  for (unsigned i = 0; i < level; ++i) {
    const IndexLayout next{count, 2, 2};
    count = next.size();
    if (count == kOverflow) return kOverflow;
  }
  return count;
}

LiteralLevel0 build_level0_literal(const std::vector<Block>& index, const CubeSet& cubes,
                                   const LiteralOptions& options) {
  if (cubes.dimension() != 2)
    throw UnsupportedError("the literal matrix pipeline is two-dimensional only");
  const std::uint64_t k = index.size();
  check_index(k, options, "V^0");
  const IndexLayout rect_layout{k, 2, 1};
  check_index(rect_layout.size(), options, "H^0");

  LiteralLevel0 out;
  out.vertical = {MatrixKind::vertical, 0, IndexLayout{k, 1, 1}, OrderTag::horizontal(), {}};
  for (std::uint64_t i = 0; i < k; ++i)
    for (std::uint64_t j = 0; j < k; ++j)
      if (block_allowed(stack_vertical(index[i], index[j]), cubes))
        out.vertical.ones.emplace_back(i, j);

  out.horizontal = {MatrixKind::horizontal, 0, rect_layout, OrderTag::horizontal(), {}};
  // A rect that is not an allowed vertical stack contains a forbidden cube,
  // so only pairs of V^0 ones can be nonzero in H^0.
  const auto& rects = out.vertical.ones;
  out.horizontal.ones = build_rows(rects, options, "H^0", [&](const Entry& left, auto& sink) {
    const auto& [i, j] = left;
    for (const auto& [r, s] : rects) {
      const Block quad[4] = {index[i], index[r], index[j], index[s]};
      if (block_allowed(assemble(quad, {2, 2}), cubes)) sink.emplace_back(i * k + j, r * k + s);
    }
  });
  return out;
}

CompatMatrix next_vertical(const CompatMatrix& horizontal, const LiteralOptions& options) {
  if (horizontal.kind != MatrixKind::horizontal)
    throw ShapeError("next_vertical expects a horizontal compatibility matrix");
  const CompatMatrix h = horizontal.order == OrderTag::horizontal()
                             ? horizontal
                             : horizontal.reordered(OrderTag::horizontal());
  const std::uint64_t k = IndexLayout{h.layout.radix, h.layout.slots() / 2, 1}.size();
  const IndexLayout layout{k, 2, 2};
  check_index(layout.size(), options, "V^" + std::to_string(h.level + 1));

  const BlockView view(h, k);
  CompatMatrix v{MatrixKind::vertical, h.level + 1, layout, OrderTag::horizontal(), {}};
  // Allowed indices of V^{n+1} are exactly the ones of H^n.
  v.ones = build_rows(h.ones, options, "V^{n+1}", [&](const Entry& one, auto& sink) {
    const std::uint64_t x = one.first / k, z = one.first % k;
    const std::uint64_t y = one.second / k, w = one.second % k;
    const std::uint64_t row = ((x * k + y) * k + z) * k + w;
    for (auto col : otimes_row(view, z, w)) sink.emplace_back(row, col);
  });
  return v.reordered(OrderTag::vertical());
}

CompatMatrix next_horizontal(const CompatMatrix& vertical, const LiteralOptions& options) {
  if (vertical.kind != MatrixKind::vertical || vertical.layout.rows != 2 ||
      vertical.layout.cols != 2)
    throw ShapeError("next_horizontal expects V^n with n >= 1");
  const CompatMatrix v = vertical.order == OrderTag::vertical()
                             ? vertical
                             : vertical.reordered(OrderTag::vertical());
  const std::uint64_t radix = v.layout.radix;
  const std::uint64_t half = IndexLayout{radix, 2, 1}.size();  // one column of a square
  const IndexLayout layout{radix, 4, 2};
  check_index(layout.size(), options, "H^" + std::to_string(v.level));

  const BlockView view(v, half);
  CompatMatrix h{MatrixKind::horizontal, v.level, layout, OrderTag::vertical(), {}};
  h.ones = build_rows(v.ones, options, "H^{n+1}", [&](const Entry& one, auto& sink) {
    const std::uint64_t left_top = one.first / half, right_top = one.first % half;
    const std::uint64_t left_bottom = one.second / half, right_bottom = one.second % half;
    const std::uint64_t row = ((left_top * half + left_bottom) * half + right_top) * half + right_bottom;
    for (auto col : otimes_row(view, right_top, right_bottom)) sink.emplace_back(row, col);
  });
  return h.reordered(OrderTag::horizontal());
}

LiteralPair step_literal(const CompatMatrix& horizontal, const LiteralOptions& options) {
  LiteralPair out;
  out.vertical = next_vertical(horizontal, options);
  out.horizontal = next_horizontal(out.vertical, options);
  return out;
}

Block literal_square(const std::vector<Block>& index, unsigned level, std::uint64_t position) {
  if (level == 0) {
    if (position >= index.size()) throw RangeError("cube index position out of range");
    return index[position];
  }
  const std::uint64_t k = literal_square_count(index.size(), level - 1);
  const IndexLayout layout{k, 2, 2};
  if (position >= layout.size()) throw RangeError("square index position out of range");
  const auto digits = layout.digits(position, OrderTag::horizontal());
  const Block quad[4] = {literal_square(index, level - 1, digits[0]),
                         literal_square(index, level - 1, digits[1]),
                         literal_square(index, level - 1, digits[2]),
                         literal_square(index, level - 1, digits[3])};
  return assemble(quad, {2, 2});
}

Block literal_rect(const std::vector<Block>& index, unsigned level, std::uint64_t position) {
  const std::uint64_t k = literal_square_count(index.size(), level);
  return stack_vertical(literal_square(index, level, position / k),
                        literal_square(index, level, position % k));
}

Block index_block(const std::vector<Block>& index, const CompatMatrix& m, std::uint64_t position) {
  const std::uint64_t canonical = m.layout.convert(position, m.order, OrderTag::horizontal());
  return m.kind == MatrixKind::vertical ? literal_square(index, m.level, canonical)
                                        : literal_rect(index, m.level, canonical);
}

}  // namespace sft
