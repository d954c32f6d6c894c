#include "sftmat/reduced.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "sftmat/parallel.hpp"

namespace sft {

namespace {

void check_cap(std::uint64_t count, const EngineCaps& caps, const std::string& what) {
  if (count > caps.max_blocks)
    throw BudgetError(what + " exceeded the block cap of " + std::to_string(caps.max_blocks) +
                          " (stopped after " + std::to_string(count) + ")",
                      count, caps.max_blocks, count);
}

std::string_view top_half(const Block& sq) {
  return sq.key().substr(0, sq.size() / 2);
}

std::string_view bottom_half(const Block& sq) {
  return sq.key().substr(sq.size() / 2);
}

std::string side_half(const Block& sq, bool right) {
  const std::size_t s = sq.shape()[0], h = s / 2;
  std::string out;
  out.reserve(s * h);
  const auto key = sq.key();
  for (std::size_t r = 0; r < s; ++r) out.append(key.substr(r * s + (right ? h : 0), h));
  return out;
}

template <typename Key>
using Groups = std::unordered_map<Key, std::vector<std::uint32_t>>;

void require_square_2d(const LevelState& state) {
  if (!state.squares.empty() && state.squares.front().dimension() != 2)
    throw UnsupportedError("the reduced square pipeline is two-dimensional; use the d-chain");
}

}  // namespace

Block LevelState::rect(std::uint32_t r) const {
  const auto& [top, bottom] = vrel.value().at(r);
  return stack_vertical(squares[top], squares[bottom]);
}

BlockIndex::BlockIndex(const std::vector<Block>& blocks) {
  map_.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i)
    map_.emplace(blocks[i].key(), static_cast<std::uint32_t>(i));
}

std::optional<std::uint32_t> BlockIndex::find(std::string_view key) const {
  auto it = map_.find(key);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

LevelState build_level0_reduced(std::vector<Block> allowed_cubes, const CubeSet& cubes,
                                const EngineCaps& caps) {
  if (cubes.dimension() != 2)
    throw UnsupportedError("the reduced square pipeline is two-dimensional; use the d-chain");
  std::sort(allowed_cubes.begin(), allowed_cubes.end());
  check_cap(allowed_cubes.size(), caps, "S_0");
  LevelState state;
  state.level = 0;
  state.side = cubes.side();
  state.squares = std::move(allowed_cubes);
  return close_level(std::move(state), cubes, caps);
}

Relation seam_pairs(const std::vector<Block>& blocks, std::size_t axis, const CubeSet& cubes,
                    const EngineCaps& caps) {
  const std::size_t n = blocks.size();
  Relation out;
  if (n == 0) return out;
  const std::size_t t = cubes.side() - 1;
  if (t == 0) {
    check_cap(static_cast<std::uint64_t>(n) * n, caps, "relation");
    out.reserve(n * n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) out.emplace_back(i, j);
    return out;
  }
  const std::size_t e = blocks.front().shape().at(axis);
  if (e < t) throw ShapeError("blocks are thinner than the seam");

  struct Faces {
    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<Block> faces;
    std::vector<std::vector<std::uint32_t>> members;
    void add(Block face, std::uint32_t i) {
      auto [it, fresh] = ids.try_emplace(std::string(face.key()), static_cast<std::uint32_t>(faces.size()));
      if (fresh) {
        faces.push_back(std::move(face));
        members.emplace_back();
      }
      members[it->second].push_back(i);
    }
  } last, first;
  for (std::uint32_t i = 0; i < n; ++i) {
    last.add(slab(blocks[i], axis, e - t, t), i);
    first.add(slab(blocks[i], axis, 0, t), i);
  }

  const std::size_t u_count = last.faces.size();
  const std::size_t chunks = default_chunks(u_count);
  std::vector<std::vector<IndexPair>> fits(chunks);
  parallel_chunks(u_count, chunks, caps.threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u)
      for (std::size_t v = 0; v < first.faces.size(); ++v)
        if (block_allowed(concat(last.faces[u], first.faces[v], axis), cubes))
          fits[chunk].emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  });
  for (const auto& part : fits)
    for (const auto& [u, v] : part) {
      for (auto a : last.members[u])
        for (auto b : first.members[v]) out.emplace_back(a, b);
      check_cap(out.size(), caps, "relation");
    }
  std::sort(out.begin(), out.end());
  return out;
}

Relation vertical_relation(const LevelState& state, const CubeSet& cubes, const EngineCaps& caps) {
  require_square_2d(state);
  if (state.level == 0) return seam_pairs(state.squares, 0, cubes, caps);

  Groups<std::string_view> by_top, by_bottom;
  for (std::uint32_t i = 0; i < state.squares.size(); ++i) {
    by_top[top_half(state.squares[i])].push_back(i);
    by_bottom[bottom_half(state.squares[i])].push_back(i);
  }
  Relation out;
  for (const auto& middle : state.squares) {
    auto above = by_bottom.find(top_half(middle));
    auto below = by_top.find(bottom_half(middle));
    if (above == by_bottom.end() || below == by_top.end()) continue;
    for (auto a : above->second)
      for (auto b : below->second) out.emplace_back(a, b);
    check_cap(out.size(), caps, "vertical relation at level " + std::to_string(state.level));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Relation horizontal_square_pairs(const LevelState& state, const CubeSet& cubes,
                                 const EngineCaps& caps) {
  require_square_2d(state);
  if (state.level == 0) return seam_pairs(state.squares, 1, cubes, caps);

  Groups<std::string> by_left, by_right;
  std::vector<std::string> lefts, rights;
  for (std::uint32_t i = 0; i < state.squares.size(); ++i) {
    lefts.push_back(side_half(state.squares[i], false));
    rights.push_back(side_half(state.squares[i], true));
    by_left[lefts.back()].push_back(i);
    by_right[rights.back()].push_back(i);
  }
  Relation out;
  for (std::uint32_t m = 0; m < state.squares.size(); ++m) {
    auto before = by_right.find(lefts[m]);
    auto after = by_left.find(rights[m]);
    if (before == by_right.end() || after == by_left.end()) continue;
    for (auto a : before->second)
      for (auto b : after->second) out.emplace_back(a, b);
    check_cap(out.size(), caps, "horizontal pairs at level " + std::to_string(state.level));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Relation horizontal_relation(const LevelState& state, const Relation& vrel, const CubeSet& cubes,
                             const EngineCaps& caps) {
  require_square_2d(state);
  const auto& squares = state.squares;
  const Relation pairs = horizontal_square_pairs(state, cubes, caps);
  std::unordered_set<std::uint64_t> pair_set;
  pair_set.reserve(pairs.size());
  for (const auto& [a, b] : pairs) pair_set.insert((std::uint64_t{a} << 32) | b);

  // vrel is sorted by top square, so the rects under square a are contiguous.
  std::vector<std::size_t> first(squares.size() + 1, 0);
  for (const auto& [top, bottom] : vrel) ++first[top + 1];
  for (std::size_t i = 0; i < squares.size(); ++i) first[i + 1] += first[i];

  const BlockIndex index(squares);
  const std::size_t s = state.side, h = s / 2;
  const std::size_t chunks = default_chunks(pairs.size());
  std::vector<Relation> parts(chunks);
  parallel_chunks(pairs.size(), chunks, caps.threads,
                  [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::string center(s * s, '\0');
    auto& out = parts[chunk];
    for (std::size_t p = begin; p < end; ++p) {
      const auto [a, b] = pairs[p];
      for (std::size_t r1 = first[a]; r1 < first[a + 1]; ++r1) {
        const std::uint32_t c = vrel[r1].second;
        for (std::size_t r2 = first[b]; r2 < first[b + 1]; ++r2) {
          const std::uint32_t d = vrel[r2].second;
          if (!pair_set.contains((std::uint64_t{c} << 32) | d)) continue;
          const Block* quad[4] = {&squares[a], &squares[b], &squares[c], &squares[d]};
          bool ok;
          if (state.level == 0) {
            const Block parts4[4] = {*quad[0], *quad[1], *quad[2], *quad[3]};
            ok = block_allowed(assemble(parts4, {2, 2}), cubes);
          } else {
            for (std::size_t r = 0; r < s; ++r) {
              const std::size_t gr = h + r;
              for (std::size_t col = 0; col < s; ++col) {
                const std::size_t gc = h + col;
                const Block& q = *quad[(gr / s) * 2 + gc / s];
                center[r * s + col] = static_cast<char>(q.at(gr % s, gc % s));
              }
            }
            ok = index.contains(center);
          }
          if (ok) out.emplace_back(static_cast<std::uint32_t>(r1), static_cast<std::uint32_t>(r2));
        }
      }
      check_cap(out.size(), caps, "square set S_" + std::to_string(state.level + 1));
    }
  });
  Relation out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  check_cap(out.size(), caps, "square set S_" + std::to_string(state.level + 1));
  std::sort(out.begin(), out.end());
  return out;
}

LevelState close_level(LevelState state, const CubeSet& cubes, const EngineCaps& caps) {
  if (!state.vrel) state.vrel = vertical_relation(state, cubes, caps);
  if (!state.hrel) state.hrel = horizontal_relation(state, *state.vrel, cubes, caps);
  return state;
}

LevelState reduced_step(const LevelState& state, const CubeSet& cubes, const EngineCaps& caps) {
  const LevelState closed = state.closed() ? state : close_level(state, cubes, caps);
  const auto& vrel = *closed.vrel;
  LevelState next;
  next.level = state.level + 1;
  next.side = state.side * 2;
  next.squares.reserve(closed.hrel->size());
  for (const auto& [left, right] : *closed.hrel) {
    const Block quad[4] = {closed.squares[vrel[left].first], closed.squares[vrel[right].first],
                           closed.squares[vrel[left].second], closed.squares[vrel[right].second]};
    next.squares.push_back(assemble(quad, {2, 2}));
  }
  std::sort(next.squares.begin(), next.squares.end());
  return next;
}

std::uint64_t count_vertical_pairs(const LevelState& state, const CubeSet& cubes) {
  if (state.vrel) return state.vrel->size();
  require_square_2d(state);
  if (state.level == 0)
    return vertical_relation(state, cubes, EngineCaps{UINT64_MAX, 1}).size();
  std::unordered_map<std::string_view, std::uint64_t> tops, bottoms;
  for (const auto& sq : state.squares) {
    ++tops[top_half(sq)];
    ++bottoms[bottom_half(sq)];
  }
  std::uint64_t total = 0;
  for (const auto& middle : state.squares) {
    auto above = bottoms.find(top_half(middle));
    auto below = tops.find(bottom_half(middle));
    if (above != bottoms.end() && below != tops.end()) total += above->second * below->second;
  }
  return total;
}

}  // namespace sft
