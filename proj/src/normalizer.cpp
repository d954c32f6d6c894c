#include "sftmat/normalizer.hpp"

#include <algorithm>

#include "sftmat/parallel.hpp"

namespace sft {

std::string to_string(NormalizeMode mode) {
  return mode == NormalizeMode::all_extensions ? "all" : "nonproper";
}

std::size_t normalized_side(const SftSpec& spec) {
  std::size_t l = 1;
  for (const auto& p : spec.forbidden()) l = std::max(l, pattern_width(p));
  return l;
}

namespace {

// One placement of a forbidden pattern inside the l-cube.
struct Placement {
  std::vector<std::pair<std::size_t, Symbol>> cells;  // (linear cube index, symbol)
  bool touches_boundary = false;
};

std::vector<Placement> placements(const SftSpec& spec, std::size_t l) {
  const std::size_t d = spec.dimension();
  const Shape cube_shape(d, l);
  const Block probe = Block::filled(cube_shape, 0);
  std::vector<Placement> out;
  for (const auto& p : spec.forbidden()) {
    const Shape ext = p.extent();
    Shape origins(d);
    for (std::size_t i = 0; i < d; ++i) origins[i] = l - ext[i] + 1;
    for_each_index(origins, [&](std::span<const std::size_t> origin) {
      Placement pl;
      std::vector<std::size_t> pos(d);
      for (const auto& [c, s] : p.cells()) {
        for (std::size_t i = 0; i < d; ++i) {
          pos[i] = origin[i] + static_cast<std::size_t>(c[i]);
          if (pos[i] == 0 || pos[i] + 1 == l) pl.touches_boundary = true;
        }
        pl.cells.emplace_back(probe.linear(pos), s);
      }
      out.push_back(std::move(pl));
    });
  }
  return out;
}

void check_budget(std::uint64_t space, std::uint64_t cap, const SftSpec& spec, std::size_t l) {
  if (space > cap)
    throw BudgetError("enumerating " + std::to_string(spec.alphabet_size()) + "^(" +
                          std::to_string(l) + "^" + std::to_string(spec.dimension()) +
                          ") candidate cubes needs a cap of at least " +
                          (space == UINT64_MAX ? std::string("2^64") : std::to_string(space)) +
                          " (configured " + std::to_string(cap) + ")",
                      space, cap);
}

void increment(std::vector<Symbol>& cells, std::size_t k) {
  for (std::size_t i = cells.size(); i-- > 0;) {
    if (++cells[i] < k) return;
    cells[i] = 0;
  }
}

}  // namespace

CubeSet normalize_to_cubes(const SftSpec& spec, const NormalizeOptions& options) {
  const std::size_t d = spec.dimension();
  const std::size_t k = spec.alphabet_size();
  const std::size_t l = normalized_side(spec);
  if (spec.forbidden().empty()) return CubeSet(d, l, k, {});

  const std::uint64_t space = cube_space_size(d, l, k);
  check_budget(space, options.max_candidates, spec, l);

  auto all = placements(spec, l);
  if (options.mode == NormalizeMode::non_proper_only)
    std::erase_if(all, [](const Placement& p) { return !p.touches_boundary; });

  const std::size_t chunks = default_chunks(space);
  std::vector<std::vector<std::uint64_t>> found(chunks);
  parallel_chunks(space, chunks, options.threads,
                  [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                    Block start = cube_from_code(begin, d, l, k);
                    std::vector<Symbol> cells(start.data().begin(), start.data().end());
                    for (std::size_t code = begin; code < end; ++code) {
                      for (const auto& pl : all) {
                        bool hit = true;
                        for (const auto& [pos, s] : pl.cells)
                          if (cells[pos] != s) {
                            hit = false;
                            break;
                          }
                        if (hit) {
                          found[chunk].push_back(code);
                          break;
                        }
                      }
                      increment(cells, k);
                    }
                  });

  std::vector<Block> cubes;
  for (const auto& part : found)
    for (auto code : part) cubes.push_back(cube_from_code(code, d, l, k));
  return CubeSet(d, l, k, std::move(cubes));
}

std::vector<Block> enumerate_all_cubes(const SftSpec& spec, std::size_t side,
                                       std::uint64_t max_candidates) {
  const std::uint64_t space = cube_space_size(spec.dimension(), side, spec.alphabet_size());
  check_budget(space, max_candidates, spec, side);
  std::vector<Block> out;
  out.reserve(space);
  for (std::uint64_t code = 0; code < space; ++code)
    out.push_back(cube_from_code(code, spec.dimension(), side, spec.alphabet_size()));
  return out;
}

std::vector<Block> enumerate_allowed_cubes(const SftSpec& spec, const CubeSet& cubes,
                                           std::uint64_t max_candidates) {
  if (cubes.dimension() != spec.dimension() || cubes.alphabet_size() != spec.alphabet_size())
    throw SpecError("cube set does not belong to this spec");
  const std::uint64_t space =
      cube_space_size(spec.dimension(), cubes.side(), spec.alphabet_size());
  check_budget(space, max_candidates, spec, cubes.side());
  std::vector<Block> out;
  for (std::uint64_t code = 0; code < space; ++code)
    if (!cubes.contains_code(code))
      out.push_back(cube_from_code(code, spec.dimension(), cubes.side(), spec.alphabet_size()));
  return out;
}

NormalizationReport make_report(const CubeSet& cubes, NormalizeMode mode,
                                std::uint64_t allowed_count) {
  return {cubes.side(), cubes.size(), mode, allowed_count};
}

}  // namespace sft
