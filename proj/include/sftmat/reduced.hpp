#pragma once

// Reduced doubling pipeline for d = 2: matrices indexed by allowed squares
// only, with compatibility decided by set membership of aligned windows.
//
// A level-n state holds S_n, the allowed squares of side 2^n * l. Its
// relations are
//   vrel  pairs (top, bottom) of squares whose vertical stack is allowed;
//         these are the rects R_n of size 2s x s,
//   hrel  pairs (left, right) of rects whose side-by-side square is allowed;
//         each such pair is one member of S_{n+1}.
// At level 0 both relations come from full block_allowed scans. From level 1
// on, the stack (A over B) is allowed iff the middle square (bottom half of A
// over top half of B) is in S_n, and a 2x2 arrangement is allowed iff all nine
// aligned half-step windows are in S_n.

#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sftmat/core.hpp"

namespace sft {

struct EngineCaps {
  // Largest block set or relation any step may materialize.
  std::uint64_t max_blocks = 10'000'000;
  unsigned threads = 1;
};

using IndexPair = std::pair<std::uint32_t, std::uint32_t>;
using Relation = std::vector<IndexPair>;

struct LevelState {
  unsigned level = 0;
  std::size_t side = 0;
  std::vector<Block> squares;   // S_n in canonical order
  std::optional<Relation> vrel; // positions into squares, sorted
  std::optional<Relation> hrel; // positions into *vrel, sorted

  bool closed() const noexcept { return vrel.has_value() && hrel.has_value(); }
  Block rect(std::uint32_t r) const;  // the stack behind vrel entry r
  friend bool operator==(const LevelState&, const LevelState&) = default;
};

// Hash index from block contents to position in a canonical block list.
class BlockIndex {
 public:
  BlockIndex() = default;
  explicit BlockIndex(const std::vector<Block>& blocks);
  std::optional<std::uint32_t> find(std::string_view key) const;
  bool contains(std::string_view key) const { return find(key).has_value(); }

 private:
  std::unordered_map<std::string_view, std::uint32_t> map_;
};

// Level 0: S_0 = the allowed cubes, with vrel and hrel from full scans.
LevelState build_level0_reduced(std::vector<Block> allowed_cubes, const CubeSet& cubes,
                                const EngineCaps& caps = {});

// Pairs (i, j) of blocks, each allowed and at least l - 1 thick along
// `axis`, whose concatenation along `axis` is allowed. Only windows crossing
// the seam can fail and they all lie in the l - 1 layers on either side, so
// blocks are grouped by boundary layers and each pair of distinct boundaries
// is scanned once, at every offset.
Relation seam_pairs(const std::vector<Block>& blocks, std::size_t axis, const CubeSet& cubes,
                    const EngineCaps& caps = {});

Relation vertical_relation(const LevelState& state, const CubeSet& cubes,
                           const EngineCaps& caps = {});
// Pairs (left, right) of squares whose side-by-side rect is allowed.
Relation horizontal_square_pairs(const LevelState& state, const CubeSet& cubes,
                                 const EngineCaps& caps = {});
Relation horizontal_relation(const LevelState& state, const Relation& vrel,
                             const CubeSet& cubes, const EngineCaps& caps = {});

// Fills in vrel and hrel.
LevelState close_level(LevelState state, const CubeSet& cubes, const EngineCaps& caps = {});

// S_{n+1} from a level-n state (closing it first if needed). The returned
// state carries squares only.
LevelState reduced_step(const LevelState& state, const CubeSet& cubes,
                        const EngineCaps& caps = {});

// |R_n| without materializing vrel.
std::uint64_t count_vertical_pairs(const LevelState& state, const CubeSet& cubes);

}  // namespace sft
