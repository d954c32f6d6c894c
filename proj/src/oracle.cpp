#include "sftmat/oracle.hpp"

#include <limits>

#include "sftmat/parallel.hpp"

namespace sft {

namespace {

constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t power(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && out > kMax / base) return kMax;
    out *= base;
  }
  return out;
}

// Every placement of every raw forbidden pattern inside `shape`, as
// (linear cell, symbol) lists.
std::vector<std::vector<std::pair<std::size_t, Symbol>>> raw_placements(const SftSpec& spec,
                                                                        const Shape& shape) {
  const Block probe = Block::filled(shape, 0);
  std::vector<std::vector<std::pair<std::size_t, Symbol>>> out;
  for (const auto& p : spec.forbidden()) {
    const Shape ext = p.extent();
    Shape origins(shape.size());
    bool fits = true;
    for (std::size_t i = 0; i < shape.size(); ++i) {
      if (ext[i] > shape[i]) fits = false;
      else origins[i] = shape[i] - ext[i] + 1;
    }
    if (!fits) continue;
    for_each_index(origins, [&](std::span<const std::size_t> origin) {
      std::vector<std::pair<std::size_t, Symbol>> cells;
      std::vector<std::size_t> pos(shape.size());
      for (const auto& [c, s] : p.cells()) {
        for (std::size_t i = 0; i < shape.size(); ++i) pos[i] = origin[i] + static_cast<std::size_t>(c[i]);
        cells.emplace_back(probe.linear(pos), s);
      }
      out.push_back(std::move(cells));
    });
  }
  return out;
}

void increment(std::vector<Symbol>& cells, std::size_t k) {
  for (std::size_t i = cells.size(); i-- > 0;) {
    if (++cells[i] < k) return;
    cells[i] = 0;
  }
}

}  // namespace

OracleResult brute_force_allowed(const SftSpec& spec, const Shape& shape,
                                 const OracleOptions& options) {
  if (shape.size() != spec.dimension())
    throw ShapeError("oracle shape " + shape_to_string(shape) + " does not have dimension " +
                     std::to_string(spec.dimension()));
  for (auto v : shape)
    if (v == 0) throw ShapeError("oracle shape extents must be positive");
  const std::size_t k = spec.alphabet_size();
  const std::size_t cells = shape_volume(shape);
  const std::uint64_t space = power(k, cells);
  if (space > options.max_candidates)
    throw BudgetError("brute force over " + std::to_string(k) + "^" + std::to_string(cells) +
                          " candidates exceeds the cap of " +
                          std::to_string(options.max_candidates) + "; try profile_count",
                      space, options.max_candidates);

  std::optional<CubeSet> cubes;
  std::vector<std::vector<std::pair<std::size_t, Symbol>>> placements;
  if (options.source == OracleSource::normalized_cubes)
    cubes = normalize_to_cubes(spec);
  else
    placements = raw_placements(spec, shape);

  const std::size_t chunks = default_chunks(space);
  std::vector<std::uint64_t> counts(chunks, 0);
  std::vector<std::vector<Block>> kept(chunks);
  parallel_chunks(space, chunks, options.threads,
                  [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::vector<Symbol> data(cells, 0);
    std::uint64_t code = begin;
    for (std::size_t i = cells; i-- > 0;) {
      data[i] = static_cast<Symbol>(code % k);
      code /= k;
    }
    for (std::size_t c = begin; c < end; ++c, increment(data, k)) {
      bool ok = true;
      if (cubes) {
        ok = block_allowed(Block(shape, data), *cubes);
      } else {
        for (const auto& pl : placements) {
          bool hit = true;
          for (const auto& [pos, s] : pl)
            if (data[pos] != s) {
              hit = false;
              break;
            }
          if (hit) {
            ok = false;
            break;
          }
        }
      }
      if (!ok) continue;
      ++counts[chunk];
      if (kept[chunk].size() < options.retain_limit) kept[chunk].emplace_back(shape, data);
    }
  });

  OracleResult result;
  result.shape = shape;
  for (auto c : counts) result.count += c;
  if (result.count <= options.retain_limit) {
    std::vector<Block> blocks;
    for (auto& part : kept) blocks.insert(blocks.end(), part.begin(), part.end());
    result.blocks = std::move(blocks);
  }
  return result;
}

std::uint64_t profile_count(const SftSpec& spec, std::size_t rows, std::size_t cols,
                            const ProfileOptions& options) {
  if (spec.dimension() != 2) throw UnsupportedError("profile_count is two-dimensional only");
  if (rows == 0 || cols == 0) throw ShapeError("profile_count needs positive extents");
  const CubeSet cubes = normalize_to_cubes(spec);
  const std::size_t k = spec.alphabet_size();
  const std::size_t l = cubes.side();

  if (rows < l || cols < l || cubes.empty()) {
    const std::uint64_t all = power(k, rows * cols);
    if (all == kMax) throw BudgetError("array count overflows 64 bits", all, kMax);
    return all;
  }

  const std::uint64_t row_codes = power(k, cols);
  const std::uint64_t states = power(row_codes, l - 1);
  if (row_codes > options.max_states || states > options.max_states)
    throw BudgetError("profile state space of " + std::to_string(k) + "^(" +
                          std::to_string(cols) + "*" + std::to_string(l - 1) +
                          ") exceeds the cap of " + std::to_string(options.max_states),
                      std::max(row_codes, states), options.max_states);

  // segment[row][c]: base-k code of the l symbols of `row` starting at column c.
  const std::size_t offsets = cols - l + 1;
  std::vector<std::uint64_t> segment(row_codes * offsets);
  for (std::uint64_t row = 0; row < row_codes; ++row) {
    std::vector<Symbol> sym(cols);
    std::uint64_t code = row;
    for (std::size_t i = cols; i-- > 0;) {
      sym[i] = static_cast<Symbol>(code % k);
      code /= k;
    }
    for (std::size_t c = 0; c < offsets; ++c) {
      std::uint64_t seg = 0;
      for (std::size_t j = 0; j < l; ++j) seg = seg * k + sym[c + j];
      segment[row * offsets + c] = seg;
    }
  }
  const std::uint64_t seg_radix = power(k, l);

  // State: the last l-1 rows as a base-row_codes number, oldest first.
  // The first l-1 rows are unconstrained.
  std::vector<std::uint64_t> dp(states, 1);
  std::vector<std::uint64_t> next(states);
  std::vector<std::uint64_t> window_rows(l);
  for (std::size_t r = l - 1; r < rows; ++r) {
    std::fill(next.begin(), next.end(), 0);
    for (std::uint64_t state = 0; state < states; ++state) {
      if (dp[state] == 0) continue;
      std::uint64_t rest = state;
      for (std::size_t i = l - 1; i-- > 0;) {
        window_rows[i] = rest % row_codes;
        rest /= row_codes;
      }
      for (std::uint64_t row = 0; row < row_codes; ++row) {
        window_rows[l - 1] = row;
        bool ok = true;
        for (std::size_t c = 0; c < offsets && ok; ++c) {
          std::uint64_t code = 0;
          for (std::size_t i = 0; i < l; ++i) code = code * seg_radix + segment[window_rows[i] * offsets + c];
          if (cubes.contains_code(code)) ok = false;
        }
        if (!ok) continue;
        const std::uint64_t target = l == 1 ? 0 : (state % (states / row_codes)) * row_codes + row;
        if (__builtin_add_overflow(next[target], dp[state], &next[target]))
          throw BudgetError("array count overflows 64 bits", kMax, kMax);
      }
    }
    dp.swap(next);
  }
  std::uint64_t total = 0;
  for (auto v : dp)
    if (__builtin_add_overflow(total, v, &total))
      throw BudgetError("array count overflows 64 bits", kMax, kMax);
  return total;
}

}  // namespace sft
