#pragma once

// Problem documents, level-state archives, reports and ASCII rendering.
//
// A problem document is JSON:
//   {
//     "name": "hard squares",            (optional)
//     "dimension": 2,
//     "symbols": ["0", "1"],
//     "forbidden": [
//       [["1", "1"]],                    dense: nested arrays, "*" = no cell
//       [[[0, 0], "1"], [[1, 0], "1"]]   sparse: [coordinate, symbol] cells
//     ]
//   }
// Any other top-level field is rejected.

#include <string>
#include <string_view>
#include <vector>

#include "sftmat/analysis.hpp"
#include "sftmat/core.hpp"
#include "sftmat/normalizer.hpp"
#include "sftmat/reduced.hpp"

namespace sft {

inline constexpr std::string_view kFillMarker = "*";

SftSpec parse_spec(std::string_view text);
SftSpec load_spec_file(const std::string& path);
// Canonical document: every pattern dense over its bounding box.
std::string serialize_spec(const SftSpec& spec);

// d = 1: one line; d = 2: one line per row, top first; d = 3: the axis-0
// slices separated by blank lines. Symbols longer than one character are
// separated by spaces. No trailing newline.
std::string render_block(const Block& b, const std::vector<std::string>& alphabet);

inline constexpr std::string_view kArchiveVersion = "1.1";

struct StateArchive {
  SftSpec spec;
  NormalizationReport normalization;
  std::vector<Block> index;  // allowed cubes, canonical order
  std::vector<LevelState> levels;
  std::string verdict;
  // Filled on load when an older version was migrated; never saved.
  std::vector<std::string> notes;

  bool same_state(const StateArchive& other) const;
};

StateArchive make_archive(const SftSpec& spec, const Analysis& analysis);
std::string save_state(const StateArchive& archive);
// Throws IntegrityError on checksum or consistency failures and VersionError
// for versions that cannot be migrated.
StateArchive load_state(std::string_view text);

std::string format_report_csv(const LevelReport& report);
std::string format_report_table(const LevelReport& report);

}  // namespace sft
