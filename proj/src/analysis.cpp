#include "sftmat/analysis.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace sft {

std::string to_string(EngineMode mode) {
  return mode == EngineMode::literal ? "literal" : "reduced";
}

std::string LevelReport::verdict_text() const {
  switch (verdict) {
    case Verdict::empty:
      return "empty";
    case Verdict::nonempty_to_level:
      return "nonempty-to-level-" + std::to_string(certified_level.value_or(0));
    case Verdict::inconclusive:
      break;
  }
  return "inconclusive";
}

namespace {

Shape square_shape(std::size_t side) { return {side, side}; }
Shape rect_shape(std::size_t side) { return {2 * side, side}; }

void run_reduced(Analysis& a, unsigned levels, const AnalyzeOptions& options) {
  auto& report = a.report;
  auto& rows = report.rows;
  LevelState state;
  state.level = 0;
  state.side = a.cubes.side();
  state.squares = a.allowed;
  for (unsigned n = 0;; ++n) {
    report.certified_level = n;
    if (n == levels) {
      const std::uint64_t r = count_vertical_pairs(state, a.cubes);
      rows.push_back({n, "square", square_shape(state.side), state.squares.size(), r});
      rows.push_back({n, "rect", rect_shape(state.side), r, std::nullopt});
      a.levels.push_back(std::move(state));
      report.verdict = Verdict::nonempty_to_level;
      return;
    }
    rows.push_back({n, "square", square_shape(state.side), state.squares.size(), std::nullopt});
    state.vrel = vertical_relation(state, a.cubes, options.caps);
    rows.back().relation_count = state.vrel->size();
    rows.push_back({n, "rect", rect_shape(state.side), state.vrel->size(), std::nullopt});
    state.hrel = horizontal_relation(state, *state.vrel, a.cubes, options.caps);
    rows.back().relation_count = state.hrel->size();
    LevelState next = reduced_step(state, a.cubes, options.caps);
    a.levels.push_back(std::move(state));
    if (next.squares.empty()) {
      rows.push_back({n + 1, "square", square_shape(next.side), 0, 0});
      a.levels.push_back(std::move(next));
      report.verdict = Verdict::empty;
      return;
    }
    state = std::move(next);
  }
}

void run_chain(Analysis& a, unsigned levels, const AnalyzeOptions& options) {
  auto& report = a.report;
  auto& rows = report.rows;
  const std::size_t d = a.cubes.dimension();
  DChainState state = d_chain_start(a.allowed, a.cubes);
  auto label = [](const DChainState& s) {
    return s.level == 0 ? std::string("cube") : "axis-" + std::to_string(s.stage - 1);
  };
  report.certified_level = 0;
  for (;;) {
    rows.push_back({state.level, label(state), state.block_shape(), state.blocks.size(), std::nullopt});
    if (state.blocks.empty()) {
      a.chain.push_back(std::move(state));
      report.verdict = Verdict::empty;
      return;
    }
    if (state.stage == d) report.certified_level = state.level;
    if (state.stage == d && state.level == levels) {
      a.chain.push_back(std::move(state));
      report.verdict = Verdict::nonempty_to_level;
      return;
    }
    const Relation pairs = chain_relation(state, a.cubes, options.caps);
    rows.back().relation_count = pairs.size();
    DChainState next = d_chain_step(state, pairs);
    a.chain.push_back(std::move(state));
    state = std::move(next);
  }
}

void run_literal(Analysis& a, const SftSpec& spec, unsigned levels, const AnalyzeOptions& options) {
  if (a.cubes.dimension() != 2)
    throw UnsupportedError("literal mode is two-dimensional only; use reduced mode");
  auto& report = a.report;
  auto& rows = report.rows;
  const std::size_t l = a.cubes.side();
  a.index = options.literal_allowed_index
                ? a.allowed
                : enumerate_all_cubes(spec, l, options.max_candidates);
  LiteralLevel0 level0 = build_level0_literal(a.index, a.cubes, options.literal);
  std::size_t side = l;
  rows.push_back({0, "square", square_shape(side), a.allowed.size(), level0.vertical.ones.size()});
  a.vertical.push_back(std::move(level0.vertical));
  if (a.allowed.empty()) {
    report.verdict = Verdict::empty;
    return;
  }
  report.certified_level = 0;
  for (unsigned n = 0; n < levels; ++n) {
    CompatMatrix h = n == 0 ? std::move(level0.horizontal)
                            : next_horizontal(a.vertical.back(), options.literal);
    const std::uint64_t squares = h.ones.size();
    rows.push_back({n, "rect", rect_shape(side), a.vertical.back().ones.size(), squares});
    a.horizontal.push_back(std::move(h));
    side *= 2;
    if (squares == 0) {
      rows.push_back({n + 1, "square", square_shape(side), 0, 0});
      report.verdict = Verdict::empty;
      return;
    }
    report.certified_level = n + 1;
    a.vertical.push_back(next_vertical(a.horizontal.back(), options.literal));
    rows.push_back({n + 1, "square", square_shape(side), squares, a.vertical.back().ones.size()});
  }
  rows.push_back({levels, "rect", rect_shape(side), a.vertical.back().ones.size(), std::nullopt});
  report.verdict = Verdict::nonempty_to_level;
}

}  // namespace

Analysis analyze(const SftSpec& spec, unsigned levels, const AnalyzeOptions& options) {
  NormalizeOptions norm;
  norm.mode = options.normalize;
  norm.max_candidates = options.max_candidates;
  norm.threads = options.caps.threads;
  Analysis a{{}, normalize_to_cubes(spec, norm), {}, {}, {}, {}, {}, {}};
  a.allowed = enumerate_allowed_cubes(spec, a.cubes, options.max_candidates);

  auto& report = a.report;
  report.dimension = spec.dimension();
  report.mode = options.mode;
  report.requested_level = levels;
  report.normalization = make_report(a.cubes, options.normalize, a.allowed.size());

  const bool chain = spec.dimension() != 2 || options.force_chain;
  if (a.allowed.empty() && options.mode == EngineMode::reduced) {
    const Shape cube(spec.dimension(), a.cubes.side());
    report.rows.push_back({0, chain ? "cube" : "square", cube, 0, 0});
    report.verdict = Verdict::empty;
    return a;
  }
  try {
    if (options.mode == EngineMode::literal)
      run_literal(a, spec, levels, options);
    else if (chain)
      run_chain(a, levels, options);
    else
      run_reduced(a, levels, options);
  } catch (const BudgetError& e) {
    report.verdict = Verdict::inconclusive;
    report.stop_reason = e.what();
  }
  return a;
}

WitnessResult witness_search(const CubeSet& cubes, const std::vector<Block>& allowed_cubes,
                             unsigned level, const WitnessOptions& options) {
  WitnessResult result;
  if (allowed_cubes.empty()) {
    result.reason = "no allowed cubes";
    return result;
  }
  const std::size_t d = cubes.dimension();
  const std::size_t l = cubes.side();
  const std::size_t k = cubes.alphabet_size();
  if (level >= 16) throw RangeError("witness level too large");
  const std::size_t g = std::size_t{1} << level;
  const std::size_t big = g * l;
  Shape grid_shape(d, g), big_shape(d, big);
  const std::size_t tiles = shape_volume(grid_shape);

  // Z-order: interleave coordinate bits, axis 0 most significant in each group.
  std::vector<Shape> order(tiles, Shape(d, 0));
  for (std::size_t t = 0; t < tiles; ++t)
    for (unsigned b = 0; b < level; ++b)
      for (std::size_t ax = 0; ax < d; ++ax)
        if ((t >> (b * d + (d - 1 - ax))) & 1) order[t][ax] |= std::size_t{1} << b;

  auto linear = [&](const Shape& idx, std::size_t extent) {
    std::size_t pos = 0;
    for (auto v : idx) pos = pos * extent + v;
    return pos;
  };

  std::vector<Symbol> data(shape_volume(big_shape), 0);
  std::vector<char> placed(tiles, 0);
  std::vector<std::size_t> choice(tiles, 0);
  const Shape cube_shape(d, l);

  auto place = [&](std::size_t t, const Block& cube) {
    const Shape& tile = order[t];
    Shape cell(d);
    for_each_index(cube_shape, [&](std::span<const std::size_t> off) {
      for (std::size_t ax = 0; ax < d; ++ax) cell[ax] = tile[ax] * l + off[ax];
      data[linear(cell, big)] = cube.at(off);
    });
    placed[linear(tile, g)] = 1;
  };

  // Checks every l-window that overlaps tile t and lies in placed tiles.
  auto consistent = [&](std::size_t t) {
    const Shape& tile = order[t];
    Shape lo(d), span(d);
    for (std::size_t ax = 0; ax < d; ++ax) {
      const std::size_t o = tile[ax] * l;
      lo[ax] = o >= l - 1 ? o - (l - 1) : 0;
      const std::size_t hi = std::min(o + l - 1, big - l);
      span[ax] = hi - lo[ax] + 1;
    }
    bool ok = true;
    Shape w(d), t0(d), cell(d);
    for_each_index(span, [&](std::span<const std::size_t> off) {
      if (!ok) return;
      for (std::size_t ax = 0; ax < d; ++ax) w[ax] = lo[ax] + off[ax];
      Shape tile_lo(d), tile_n(d);
      for (std::size_t ax = 0; ax < d; ++ax) {
        tile_lo[ax] = w[ax] / l;
        tile_n[ax] = (w[ax] + l - 1) / l - tile_lo[ax] + 1;
      }
      bool complete = true;
      for_each_index(tile_n, [&](std::span<const std::size_t> dt) {
        for (std::size_t ax = 0; ax < d; ++ax) t0[ax] = tile_lo[ax] + dt[ax];
        if (!placed[linear(t0, g)]) complete = false;
      });
      if (!complete) return;
      std::uint64_t code = 0;
      for_each_index(cube_shape, [&](std::span<const std::size_t> c) {
        for (std::size_t ax = 0; ax < d; ++ax) cell[ax] = w[ax] + c[ax];
        code = code * k + data[linear(cell, big)];
      });
      if (cubes.contains_code(code)) ok = false;
    });
    return ok;
  };

  std::size_t t = 0;
  while (true) {
    if (t == tiles) {
      result.block = Block(big_shape, data);
      return result;
    }
    bool advanced = false;
    while (choice[t] < allowed_cubes.size()) {
      if (result.nodes >= options.max_nodes) {
        result.reason = "node budget of " + std::to_string(options.max_nodes) + " exhausted";
        return result;
      }
      ++result.nodes;
      place(t, allowed_cubes[choice[t]]);
      if (consistent(t)) {
        advanced = true;
        break;
      }
      placed[linear(order[t], g)] = 0;
      ++choice[t];
    }
    if (advanced) {
      ++t;
      continue;
    }
    choice[t] = 0;
    if (t == 0) {
      result.reason = "no arrangement of allowed cubes found";
      return result;
    }
    --t;
    placed[linear(order[t], g)] = 0;
    ++choice[t];
  }
}

Block sample_block(const std::vector<Block>& blocks, std::uint64_t seed) {
  if (blocks.empty()) throw EmptinessError("cannot sample from an empty block set");
  std::mt19937_64 rng(seed);
  // Rejection keeps the draw uniform and independent of the library's
  // distribution implementation.
  const std::uint64_t n = blocks.size();
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % n + 1) % n;
  std::uint64_t x;
  do x = rng();
  while (x > limit);
  return blocks[x % n];
}

Block sample_patch(const LevelState& state, std::uint64_t seed) {
  if (state.squares.empty())
    throw EmptinessError("S_" + std::to_string(state.level) + " is empty");
  return sample_block(state.squares, seed);
}

namespace {

bool pipeline_shape(const Shape& shape, std::size_t l, bool chain) {
  auto power_of_two_multiple = [l](std::size_t v) {
    if (v < l || v % l != 0) return false;
    const std::size_t q = v / l;
    return (q & (q - 1)) == 0;
  };
  if (!chain) {
    const std::size_t s = shape[1];
    return power_of_two_multiple(s) && (shape[0] == s || shape[0] == 2 * s);
  }
  // Chain stages: a prefix of axes at 2s, the rest at s, or every axis at l.
  const std::size_t hi = *std::max_element(shape.begin(), shape.end());
  if (!power_of_two_multiple(hi)) return false;
  bool low = false;
  for (auto v : shape) {
    if (v == hi && low) return false;
    if (v != hi) {
      if (2 * v != hi) return false;
      low = true;
    }
  }
  return true;
}

}  // namespace

std::uint64_t engine_count(const SftSpec& spec, const Shape& shape, const AnalyzeOptions& options) {
  if (shape.size() != spec.dimension())
    throw ShapeError("shape " + shape_to_string(shape) + " has the wrong dimension");
  const std::size_t l = normalized_side(spec);
  const bool chain = spec.dimension() != 2 || options.force_chain;
  const std::size_t largest = *std::max_element(shape.begin(), shape.end());
  unsigned need = 0;
  while ((l << need) < largest) ++need;
  if (!chain && shape[0] == 2 * shape[1] && shape[0] > l) need = need > 0 ? need - 1 : 0;
  const Analysis a = analyze(spec, need, options);
  for (const auto& row : a.report.rows) {
    if (row.shape == shape) return row.block_count;
  }
  if (a.report.verdict == Verdict::inconclusive)
    throw BudgetError(a.report.stop_reason, 0, 0);
  if (a.report.verdict == Verdict::empty) {
    // Later pipeline shapes contain an empty level's blocks.
    const auto& last = a.report.rows.back();
    bool later = true;
    for (std::size_t i = 0; i < shape.size(); ++i)
      if (shape[i] < last.shape[i]) later = false;
    if (later && pipeline_shape(shape, l, chain)) return 0;
  }
  throw UnsupportedError("shape " + shape_to_string(shape) +
                         " is not produced by the doubling pipeline (l = " + std::to_string(l) + ")");
}

}  // namespace sft
