#pragma once

// Fixtures, generators and independent reference computations for the tests.
// Nothing here calls the engines; the reference counters below are written
// against the raw problem definitions.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "sftmat/core.hpp"

namespace sft::testing {

inline Pattern make_pattern(std::initializer_list<std::pair<Coord, Symbol>> cells) {
  std::map<Coord, Symbol> m;
  for (const auto& [c, s] : cells) m.emplace(c, s);
  return Pattern(std::move(m));
}

inline Block block2(const std::vector<std::vector<Symbol>>& rows) {
  std::vector<Symbol> data;
  for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
  return Block({rows.size(), rows.empty() ? 0 : rows[0].size()}, std::move(data));
}

inline std::vector<std::string> binary() { return {"0", "1"}; }

inline SftSpec hard_squares() {
  return SftSpec(2, binary(),
                 {make_pattern({{{0, 0}, 1}, {{0, 1}, 1}}), make_pattern({{{0, 0}, 1}, {{1, 0}, 1}})});
}

inline SftSpec checkerboard() {
  std::vector<Pattern> f;
  for (Symbol s : {0, 1}) {
    f.push_back(make_pattern({{{0, 0}, s}, {{0, 1}, s}}));
    f.push_back(make_pattern({{{0, 0}, s}, {{1, 0}, s}}));
  }
  return SftSpec(2, binary(), std::move(f));
}

inline SftSpec full_shift(std::size_t d = 2) { return SftSpec(d, binary(), {}); }

inline SftSpec no_configurations() {
  return SftSpec(2, binary(), {make_pattern({{{0, 0}, 0}}), make_pattern({{{0, 0}, 1}})});
}

inline SftSpec golden_mean() {
  return SftSpec(1, binary(), {make_pattern({{{0}, 1}, {{1}, 1}})});
}

inline SftSpec hard_cubes() {
  return SftSpec(3, binary(),
                 {make_pattern({{{0, 0, 0}, 1}, {{1, 0, 0}, 1}}),
                  make_pattern({{{0, 0, 0}, 1}, {{0, 1, 0}, 1}}),
                  make_pattern({{{0, 0, 0}, 1}, {{0, 0, 1}, 1}})});
}

// Each binary 2x2 block is forbidden with probability 1/2 (at least one).
inline SftSpec random_cube_spec(std::mt19937_64& rng) {
  std::vector<Pattern> f;
  while (f.empty()) {
    for (unsigned code = 0; code < 16; ++code) {
      if (rng() & 1) continue;
      f.push_back(make_pattern({{{0, 0}, Symbol((code >> 3) & 1)},
                                {{0, 1}, Symbol((code >> 2) & 1)},
                                {{1, 0}, Symbol((code >> 1) & 1)},
                                {{1, 1}, Symbol(code & 1)}}));
    }
  }
  return SftSpec(2, binary(), std::move(f));
}

// A handful of small mixed patterns (cells, dominoes, L-shapes, diagonals,
// full 2x2 blocks) over a binary alphabet; width at most 2.
inline SftSpec random_mixed_spec(std::mt19937_64& rng, std::size_t alphabet = 2) {
  static const std::vector<std::vector<Coord>> supports = {
      {{0, 0}, {0, 1}},         {{0, 0}, {1, 0}},         {{0, 0}, {1, 1}},
      {{0, 1}, {1, 0}},         {{0, 0}, {0, 1}, {1, 0}}, {{0, 0}, {1, 0}, {1, 1}},
      {{0, 0}, {0, 1}, {1, 0}, {1, 1}}, {{0, 0}}};
  std::vector<std::string> syms;
  for (std::size_t i = 0; i < alphabet; ++i) syms.push_back(std::to_string(i));
  const std::size_t count = 1 + rng() % 4;
  std::vector<Pattern> f;
  bool wide = false;
  auto add = [&](const std::vector<Coord>& support) {
    std::map<Coord, Symbol> cells;
    for (const auto& c : support) cells.emplace(c, static_cast<Symbol>(rng() % alphabet));
    wide = wide || support.size() > 1;
    f.emplace_back(std::move(cells));
  };
  for (std::size_t i = 0; i < count; ++i) add(supports[rng() % supports.size()]);
  if (!wide) add(supports[rng() % 2]);
  return SftSpec(2, std::move(syms), std::move(f));
}

inline Block random_block(std::mt19937_64& rng, const Shape& shape, std::size_t k) {
  std::vector<Symbol> data(shape_volume(shape));
  for (auto& s : data) s = static_cast<Symbol>(rng() % k);
  return Block(shape, std::move(data));
}

// Straightforward occurrence test for 2-D blocks: four nested loops over
// offsets and pattern cells, no shared code with the library scanner.
inline bool naive_contains(const Block& b, const Pattern& p) {
  const std::size_t rows = b.shape()[0], cols = b.shape()[1];
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      bool hit = true;
      for (const auto& [coord, s] : p.cells()) {
        const std::size_t rr = r + coord[0], cc = c + coord[1];
        if (rr >= rows || cc >= cols || b.at(rr, cc) != s) {
          hit = false;
          break;
        }
      }
      if (hit) return true;
    }
  return false;
}

inline bool naive_allowed(const Block& b, const SftSpec& spec) {
  for (const auto& p : spec.forbidden())
    if (naive_contains(b, p)) return false;
  return true;
}

// Independent sets of the rows x cols grid graph by a row-mask transfer
// count; equals the number of allowed arrays for hard squares.
inline std::uint64_t grid_independent_sets(std::size_t rows, std::size_t cols) {
  std::vector<unsigned> masks;
  for (unsigned m = 0; m < (1u << cols); ++m)
    if ((m & (m >> 1)) == 0) masks.push_back(m);
  std::vector<std::uint64_t> ways(masks.size(), 1);
  for (std::size_t r = 1; r < rows; ++r) {
    std::vector<std::uint64_t> next(masks.size(), 0);
    for (std::size_t i = 0; i < masks.size(); ++i)
      for (std::size_t j = 0; j < masks.size(); ++j)
        if ((masks[i] & masks[j]) == 0) next[j] += ways[i];
    ways.swap(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) total += w;
  return total;
}

// Binary strings of length n without two adjacent 1s.
inline std::uint64_t golden_mean_words(std::size_t n) {
  std::uint64_t end0 = 1, end1 = 1;
  for (std::size_t i = 1; i < n; ++i) {
    const std::uint64_t a = end0 + end1, b = end0;
    end0 = a;
    end1 = b;
  }
  return end0 + end1;
}

// Independent sets of the a x b x c grid graph via layer masks.
inline std::uint64_t cuboid_independent_sets(std::size_t a, std::size_t b, std::size_t c) {
  const std::size_t cells = b * c;
  std::vector<unsigned> masks;
  for (unsigned m = 0; m < (1u << cells); ++m) {
    bool ok = true;
    for (std::size_t i = 0; i < b && ok; ++i)
      for (std::size_t j = 0; j < c && ok; ++j) {
        const bool on = (m >> (i * c + j)) & 1;
        if (!on) continue;
        if (j + 1 < c && ((m >> (i * c + j + 1)) & 1)) ok = false;
        if (i + 1 < b && ((m >> ((i + 1) * c + j)) & 1)) ok = false;
      }
    if (ok) masks.push_back(m);
  }
  std::vector<std::uint64_t> ways(masks.size(), 1);
  for (std::size_t layer = 1; layer < a; ++layer) {
    std::vector<std::uint64_t> next(masks.size(), 0);
    for (std::size_t i = 0; i < masks.size(); ++i)
      for (std::size_t j = 0; j < masks.size(); ++j)
        if ((masks[i] & masks[j]) == 0) next[j] += ways[i];
    ways.swap(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) total += w;
  return total;
}

}  // namespace sft::testing
