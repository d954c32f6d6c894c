// Command-line front end.
//
// Exit codes: 0 success (nonempty to the requested level), 1 compare
// mismatch, 2 certified empty, 3 inconclusive (a budget ran out), 4 input
// error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sftmat/analysis.hpp"
#include "sftmat/io.hpp"
#include "sftmat/oracle.hpp"

namespace {

using namespace sft;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kEmpty = 2;
constexpr int kInconclusive = 3;
constexpr int kInputError = 4;

struct Common {
  unsigned threads = 1;
  std::uint64_t max_blocks = 10'000'000;
  std::uint64_t max_index = 10'000;
  std::uint64_t max_candidates = 1'000'000;
  std::string format = "table";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  cmd->add_option("--max-blocks", c.max_blocks, "Cap on any materialized block set or relation");
  cmd->add_option("--max-index", c.max_index, "Cap on literal matrix index length");
  cmd->add_option("--max-candidates", c.max_candidates, "Cap on enumerated candidate cubes");
  cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"table", "csv"}));
}

Shape parse_shape(const std::string& text) {
  Shape shape;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, 'x')) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size() || part.empty() || v == 0)
      throw ShapeError("bad shape \"" + text + "\"; expected extents like 4x4");
    shape.push_back(v);
  }
  if (shape.empty()) throw ShapeError("bad shape \"" + text + "\"");
  return shape;
}

AnalyzeOptions analyze_options(const Common& c) {
  AnalyzeOptions o;
  o.max_candidates = c.max_candidates;
  o.caps.max_blocks = c.max_blocks;
  o.caps.threads = c.threads;
  o.literal.max_index = c.max_index;
  o.literal.threads = c.threads;
  return o;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::empty:
      return kEmpty;
    case Verdict::inconclusive:
      return kInconclusive;
    case Verdict::nonempty_to_level:
      break;
  }
  return kOk;
}

void print_report(const LevelReport& report, const std::string& format) {
  std::cout << (format == "csv" ? format_report_csv(report) : format_report_table(report));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t oracle_count(const SftSpec& spec, const Shape& shape, const Common& c, bool raw,
                           std::string& engine_used) {
  OracleOptions o;
  o.threads = c.threads;
  o.source = raw ? OracleSource::raw_patterns : OracleSource::normalized_cubes;
  try {
    engine_used = "oracle";
    return brute_force_allowed(spec, shape, o).count;
  } catch (const BudgetError&) {
    if (spec.dimension() != 2) throw;
  }
  engine_used = "dp";
  return profile_count(spec, shape[0], shape[1]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shift-of-finite-type analysis by block doubling"};
  app.require_subcommand(1);
  Common common;
  std::string spec_path;
  unsigned levels = 1;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "Check a problem document");
  validate->add_option("spec", spec_path, "Problem document (JSON)")->required();

  std::string norm_mode = "all";
  bool list_cubes = false;
  auto* normalize = app.add_subcommand("normalize", "Rewrite the forbidden set as uniform cubes");
  normalize->add_option("spec", spec_path)->required();
  normalize->add_option("--mode", norm_mode, "all | nonproper")->check(CLI::IsMember({"all", "nonproper"}));
  normalize->add_flag("--list", list_cubes, "Print every forbidden cube");
  add_common(normalize, common);

  std::string engine_mode = "reduced", index_mode = "all";
  bool chain = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run the doubling construction to a level");
  analyze_cmd->add_option("spec", spec_path)->required();
  analyze_cmd->add_option("--levels", levels, "Level budget N")->required();
  analyze_cmd->add_option("--mode", engine_mode)->check(CLI::IsMember({"literal", "reduced"}));
  analyze_cmd->add_option("--index", index_mode, "Literal index: all | allowed cubes")
      ->check(CLI::IsMember({"all", "allowed"}));
  analyze_cmd->add_flag("--chain", chain, "Use the axis-by-axis chain for d = 2 as well");
  add_common(analyze_cmd, common);

  std::string shape_text, count_engine = "oracle";
  bool raw = false;
  auto* count = app.add_subcommand("count", "Count allowed blocks of one shape");
  count->add_option("spec", spec_path)->required();
  count->add_option("--shape", shape_text, "Extents, e.g. 4x4")->required();
  count->add_option("--engine", count_engine)->check(CLI::IsMember({"oracle", "dp", "matrix"}));
  count->add_flag("--raw", raw, "Oracle scans the raw forbidden patterns");
  add_common(count, common);

  auto* sample = app.add_subcommand("sample", "Print a random allowed square of a level");
  sample->add_option("spec", spec_path)->required();
  sample->add_option("--level", levels)->required();
  sample->add_option("--seed", seed)->required();
  add_common(sample, common);

  std::uint64_t max_nodes = 1'000'000;
  auto* witness = app.add_subcommand("witness", "Search for one allowed square of a level");
  witness->add_option("spec", spec_path)->required();
  witness->add_option("--level", levels)->required();
  witness->add_option("--max-nodes", max_nodes, "Backtracking node budget");
  add_common(witness, common);

  std::vector<std::string> shapes;
  auto* compare = app.add_subcommand("compare", "Engine counts against the oracle");
  compare->add_option("spec", spec_path)->required();
  compare->add_option("--shapes", shapes, "Shapes such as 2x2 4x2 4x4")->required()->delimiter(',');
  add_common(compare, common);

  std::string archive_path;
  auto* export_state = app.add_subcommand("export-state", "Analyze and save the level states");
  export_state->add_option("spec", spec_path)->required();
  export_state->add_option("--levels", levels)->required();
  export_state->add_option("--out", archive_path, "Archive file")->required();
  add_common(export_state, common);

  auto* import_state = app.add_subcommand("import-state", "Load and summarize a saved archive");
  import_state->add_option("archive", archive_path)->required();
  add_common(import_state, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*validate) {
      const SftSpec spec = load_spec_file(spec_path);
      std::cout << "ok: dimension " << spec.dimension() << ", " << spec.alphabet_size()
                << " symbols, " << spec.forbidden().size() << " forbidden patterns, cube side "
                << normalized_side(spec) << '\n';
      return kOk;
    }

    if (*normalize) {
      const SftSpec spec = load_spec_file(spec_path);
      NormalizeOptions o;
      o.mode = norm_mode == "all" ? NormalizeMode::all_extensions : NormalizeMode::non_proper_only;
      o.max_candidates = common.max_candidates;
      o.threads = common.threads;
      const CubeSet cubes = normalize_to_cubes(spec, o);
      const auto allowed = enumerate_allowed_cubes(spec, cubes, common.max_candidates);
      const auto r = make_report(cubes, o.mode, allowed.size());
      if (common.format == "csv") {
        std::cout << "side,cube_count,mode,allowed_count\n"
                  << r.side << ',' << r.cube_count << ',' << to_string(r.mode) << ','
                  << r.allowed_count << '\n';
      } else {
        std::cout << "cube side: " << r.side << "\nforbidden cubes: " << r.cube_count
                  << "\nallowed cubes: " << r.allowed_count << "\nmode: " << to_string(r.mode) << '\n';
      }
      if (list_cubes)
        for (const auto& c : cubes.cubes()) std::cout << '\n' << render_block(c, spec.alphabet()) << '\n';
      return allowed.empty() ? kEmpty : kOk;
    }

    if (*analyze_cmd) {
      const SftSpec spec = load_spec_file(spec_path);
      AnalyzeOptions o = analyze_options(common);
      o.mode = engine_mode == "literal" ? EngineMode::literal : EngineMode::reduced;
      o.literal_allowed_index = index_mode == "allowed";
      o.force_chain = chain;
      const Analysis a = analyze(spec, levels, o);
      print_report(a.report, common.format);
      return verdict_code(a.report.verdict);
    }

    if (*count) {
      const SftSpec spec = load_spec_file(spec_path);
      const Shape shape = parse_shape(shape_text);
      std::uint64_t n = 0;
      if (count_engine == "oracle") {
        OracleOptions o;
        o.threads = common.threads;
        o.source = raw ? OracleSource::raw_patterns : OracleSource::normalized_cubes;
        n = brute_force_allowed(spec, shape, o).count;
      } else if (count_engine == "dp") {
        if (shape.size() != 2) throw UnsupportedError("the dp engine counts two-dimensional shapes");
        n = profile_count(spec, shape[0], shape[1]);
      } else {
        n = engine_count(spec, shape, analyze_options(common));
      }
      std::cout << n << '\n';
      return kOk;
    }

    if (*sample) {
      const SftSpec spec = load_spec_file(spec_path);
      const Analysis a = analyze(spec, levels, analyze_options(common));
      if (a.report.verdict == Verdict::empty) {
        std::cerr << "empty: no allowed squares at level " << a.report.rows.back().level << '\n';
        return kEmpty;
      }
      if (a.report.verdict == Verdict::inconclusive) {
        std::cerr << "inconclusive: " << a.report.stop_reason << '\n';
        return kInconclusive;
      }
      const Block b = a.chain.empty() ? sample_patch(a.levels.back(), seed)
                                      : sample_block(a.chain.back().blocks, seed);
      std::cout << render_block(b, spec.alphabet()) << '\n';
      return kOk;
    }

    if (*witness) {
      const SftSpec spec = load_spec_file(spec_path);
      NormalizeOptions o;
      o.max_candidates = common.max_candidates;
      const CubeSet cubes = normalize_to_cubes(spec, o);
      const auto allowed = enumerate_allowed_cubes(spec, cubes, common.max_candidates);
      const WitnessResult w = witness_search(cubes, allowed, levels, {max_nodes});
      if (!w.block) {
        std::cout << "absent: " << w.reason << " (" << w.nodes << " nodes)\n";
        return allowed.empty() ? kEmpty : kInconclusive;
      }
      std::cout << render_block(*w.block, spec.alphabet()) << '\n';
      return kOk;
    }

    if (*compare) {
      const SftSpec spec = load_spec_file(spec_path);
      const bool csv = common.format == "csv";
      std::cout << (csv ? "shape,engine,oracle,oracle_engine,match\n" : "");
      bool all_match = true;
      for (const auto& text : shapes) {
        const Shape shape = parse_shape(text);
        const std::uint64_t e = engine_count(spec, shape, analyze_options(common));
        std::string used;
        const std::uint64_t o = oracle_count(spec, shape, common, false, used);
        const bool match = e == o;
        all_match = all_match && match;
        if (csv)
          std::cout << text << ',' << e << ',' << o << ',' << used << ',' << (match ? "yes" : "no") << '\n';
        else
          std::cout << text << ": engine " << e << ", " << used << ' ' << o
                    << (match ? "  ok" : "  MISMATCH") << '\n';
      }
      return all_match ? kOk : kMismatch;
    }

    if (*export_state) {
      const SftSpec spec = load_spec_file(spec_path);
      const Analysis a = analyze(spec, levels, analyze_options(common));
      const std::string text = save_state(make_archive(spec, a));
      std::ofstream out(archive_path, std::ios::binary);
      if (!out) throw ParseError(archive_path, "cannot write file");
      out << text;
      print_report(a.report, common.format);
      return verdict_code(a.report.verdict);
    }

    if (*import_state) {
      const StateArchive a = load_state(read_file(archive_path));
      for (const auto& note : a.notes) std::cerr << "note: " << note << '\n';
      const bool csv = common.format == "csv";
      std::cout << (csv ? "level,side,squares,vrel,hrel\n" : "");
      for (const auto& level : a.levels) {
        const std::string v = level.vrel ? std::to_string(level.vrel->size()) : "";
        const std::string h = level.hrel ? std::to_string(level.hrel->size()) : "";
        if (csv)
          std::cout << level.level << ',' << level.side << ',' << level.squares.size() << ',' << v
                    << ',' << h << '\n';
        else
          std::cout << "level " << level.level << ": " << level.squares.size() << " squares of side "
                    << level.side << (v.empty() ? "" : ", " + v + " rects")
                    << (h.empty() ? "" : ", " + h + " next squares") << '\n';
      }
      std::cout << "verdict: " << a.verdict << '\n';
      if (a.verdict == "empty") return kEmpty;
      if (a.verdict == "inconclusive") return kInconclusive;
      return kOk;
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kInconclusive;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity error: " << e.what() << '\n';
    return kInputError;
  } catch (const VersionError& e) {
    std::cerr << "version error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
