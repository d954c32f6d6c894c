#include "sftmat/matrix.hpp"

#include <algorithm>
#include <limits>

namespace sft {

std::vector<Symbol> order_key(const Block& b, OrderTag tag) {
  const std::size_t d = b.dimension();
  if (tag.fastest_axis >= d) throw ShapeError("order tag axis exceeds block dimension");
  std::vector<std::size_t> axes;
  for (std::size_t i = 0; i < d; ++i)
    if (i != tag.fastest_axis) axes.push_back(i);
  axes.push_back(tag.fastest_axis);

  Shape permuted(d);
  for (std::size_t i = 0; i < d; ++i) permuted[i] = b.shape()[axes[i]];
  std::vector<Symbol> key;
  key.reserve(b.size());
  std::vector<std::size_t> idx(d);
  for_each_index(permuted, [&](std::span<const std::size_t> p) {
    for (std::size_t i = 0; i < d; ++i) idx[axes[i]] = p[i];
    key.push_back(b.at(idx));
  });
  return key;
}

std::uint64_t otimes_position(std::uint64_t alpha, std::uint64_t beta, std::uint64_t gamma,
                              std::uint64_t delta, std::uint64_t k) {
  const std::uint64_t k2 = k * k, k3 = k2 * k;
  return alpha * k3 + beta * k2 + gamma * k + delta - (k3 + k2 + k);
}

OtimesDigits otimes_digits(std::uint64_t r, std::uint64_t k) {
  std::uint64_t z = r - 1;
  OtimesDigits out{};
  out.delta = z % k + 1;
  z /= k;
  out.gamma = z % k + 1;
  z /= k;
  out.beta = z % k + 1;
  z /= k;
  out.alpha = z + 1;
  return out;
}

std::vector<std::uint8_t> otimes(const BoolMatrix& p, const BoolMatrix& m) {
  const std::size_t k = p.rows();
  if (p.cols() != k) throw ShapeError("left operand of otimes must be square");
  if (m.rows() != k * k || m.cols() != k * k)
    throw ShapeError("right operand of otimes must be K^2 x K^2 for K = " + std::to_string(k));
  std::vector<std::uint8_t> row(k * k * k * k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (!p(a, b)) continue;
      for (std::size_t g = 0; g < k; ++g)
        for (std::size_t d = 0; d < k; ++d)
          if (m(a * k + g, b * k + d)) row[((a * k + b) * k + g) * k + d] = 1;
    }
  return row;
}

// ---------------------------------------------------------------- IndexLayout

std::uint64_t IndexLayout::size() const {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < slots(); ++i) {
    if (radix != 0 && total > kMax / radix) return kMax;
    total *= radix;
  }
  return total;
}

std::vector<std::size_t> IndexLayout::reading(OrderTag tag) const {
  std::vector<std::size_t> order;
  order.reserve(slots());
  if (tag == OrderTag::horizontal()) {
    for (std::size_t i = 0; i < slots(); ++i) order.push_back(i);
  } else {
    for (std::size_t c = 0; c < cols; ++c)
      for (std::size_t r = 0; r < rows; ++r) order.push_back(r * cols + c);
  }
  return order;
}

std::vector<std::uint64_t> IndexLayout::digits(std::uint64_t position, OrderTag tag) const {
  const auto order = reading(tag);
  std::vector<std::uint64_t> out(slots());
  for (std::size_t i = slots(); i-- > 0;) {
    out[order[i]] = position % radix;
    position /= radix;
  }
  return out;
}

std::uint64_t IndexLayout::position(std::span<const std::uint64_t> digits, OrderTag tag) const {
  std::uint64_t pos = 0;
  for (auto slot : reading(tag)) pos = pos * radix + digits[slot];
  return pos;
}

std::uint64_t IndexLayout::convert(std::uint64_t position, OrderTag from, OrderTag to) const {
  if (from == to) return position;
  const auto d = digits(position, from);
  return this->position(d, to);
}

// ---------------------------------------------------------------- CompatMatrix

CompatMatrix CompatMatrix::reordered(OrderTag tag) const {
  CompatMatrix out = *this;
  out.order = tag;
  if (tag == order) return out;
  for (auto& [r, c] : out.ones) {
    r = layout.convert(r, order, tag);
    c = layout.convert(c, order, tag);
  }
  std::sort(out.ones.begin(), out.ones.end());
  return out;
}

std::vector<std::uint64_t> CompatMatrix::nonzero_rows() const {
  std::vector<std::uint64_t> rows;
  for (const auto& [r, c] : ones)
    if (rows.empty() || rows.back() != r) rows.push_back(r);
  return rows;
}

std::vector<std::uint64_t> CompatMatrix::nonzero_cols() const {
  std::vector<std::uint64_t> cols;
  cols.reserve(ones.size());
  for (const auto& [r, c] : ones) cols.push_back(c);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

BlockView::BlockView(const CompatMatrix& m, std::uint64_t block_size) : k_(block_size) {
  if (k_ == 0 || m.dimension() / k_ != k_ || m.dimension() % k_ != 0)
    throw ShapeError("block view needs a K^2 x K^2 matrix");
  for (const auto& [r, c] : m.ones) blocks_[(r / k_) * k_ + c / k_].emplace_back(r % k_, c % k_);
  // m.ones is sorted by (row, col), so each bucket is already sorted.
}

std::span<const Entry> BlockView::block(std::uint64_t bi, std::uint64_t bj) const {
  auto it = blocks_.find(bi * k_ + bj);
  if (it == blocks_.end()) return {};
  return it->second;
}

std::vector<std::uint64_t> otimes_row(const BlockView& m, std::uint64_t bi, std::uint64_t bj) {
  const std::uint64_t k = m.block_size();
  std::vector<std::uint64_t> out;
  for (const auto& [a, b] : m.block(bi, bj))
    for (const auto& [g, d] : m.block(a, b)) out.push_back(((a * k + b) * k + g) * k + d);
  return out;
}

}  // namespace sft
