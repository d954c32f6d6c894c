#include "sftmat/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace sft {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n');
  return "line " + std::to_string(line);
}

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

bool is_sparse(const json& p) {
  if (!p.is_array() || p.empty()) return false;
  const json& first = p.front();
  return first.is_array() && first.size() == 2 && first[0].is_array() &&
         (first[0].empty() || first[0][0].is_number());
}

class PatternReader {
 public:
  PatternReader(std::size_t dimension, const std::map<std::string, Symbol>& symbols)
      : d_(dimension), symbols_(symbols) {}

  Pattern read(const json& p, const std::string& path) const {
    if (!p.is_array() || p.empty()) throw ParseError(path, "pattern must be a nonempty array");
    std::map<Coord, Symbol> cells;
    if (is_sparse(p)) {
      for (std::size_t i = 0; i < p.size(); ++i) {
        const json& cell = p[i];
        const std::string where = at(path, i);
        if (!cell.is_array() || cell.size() != 2 || !cell[0].is_array() || !cell[1].is_string())
          throw ParseError(where, "sparse cell must be [coordinate, symbol]");
        if (cell[0].size() != d_)
          throw ParseError(where, "coordinate must have " + std::to_string(d_) + " entries");
        Coord c;
        for (const auto& v : cell[0]) {
          if (!v.is_number_integer()) throw ParseError(where, "coordinates must be integers");
          c.push_back(v.get<int>());
        }
        const Symbol s = symbol(cell[1].get<std::string>(), where);
        if (!cells.emplace(c, s).second) throw ParseError(where, "duplicate coordinate");
      }
    } else {
      Coord c;
      dense(p, 0, c, cells, path);
      if (cells.empty()) throw ParseError(path, "pattern has no cells outside the fill marker");
    }
    return Pattern(std::move(cells));
  }

 private:
  Symbol symbol(const std::string& name, const std::string& where) const {
    auto it = symbols_.find(name);
    if (it == symbols_.end()) throw ParseError(where, "unknown symbol \"" + name + "\"");
    return it->second;
  }

  void dense(const json& node, std::size_t depth, Coord& c, std::map<Coord, Symbol>& cells,
             const std::string& path) const {
    if (depth == d_) {
      if (!node.is_string()) throw ParseError(path, "dense pattern is nested too deeply");
      const auto name = node.get<std::string>();
      if (name != kFillMarker) cells.emplace(c, symbol(name, path));
      return;
    }
    if (!node.is_array() || node.empty())
      throw ParseError(path, "dense pattern needs " + std::to_string(d_) + " levels of nonempty arrays");
    if (depth > 0) {
      // Rectangularity: every array at this depth matches the first one seen.
      auto [it, fresh] = extents_.try_emplace(depth, node.size());
      if (!fresh && it->second != node.size()) throw ParseError(path, "dense pattern is ragged");
    }
    for (std::size_t i = 0; i < node.size(); ++i) {
      c.push_back(static_cast<int>(i));
      dense(node[i], depth + 1, c, cells, at(path, i));
      c.pop_back();
    }
  }

  std::size_t d_;
  const std::map<std::string, Symbol>& symbols_;
  mutable std::map<std::size_t, std::size_t> extents_;
};

ordered_json dense_json(const Pattern& p, const std::vector<std::string>& alphabet) {
  const Shape ext = p.extent();
  const auto& cells = p.cells();
  Coord c;
  std::function<ordered_json(std::size_t)> build = [&](std::size_t depth) -> ordered_json {
    if (depth == ext.size()) {
      auto it = cells.find(c);
      return it == cells.end() ? std::string(kFillMarker) : alphabet[it->second];
    }
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < ext[depth]; ++i) {
      c.push_back(static_cast<int>(i));
      arr.push_back(build(depth + 1));
      c.pop_back();
    }
    return arr;
  };
  return build(0);
}

ordered_json spec_json(const SftSpec& spec) {
  ordered_json doc;
  doc["dimension"] = spec.dimension();
  doc["symbols"] = spec.alphabet();
  ordered_json forbidden = ordered_json::array();
  for (const auto& p : spec.forbidden()) forbidden.push_back(dense_json(p, spec.alphabet()));
  doc["forbidden"] = std::move(forbidden);
  return doc;
}

SftSpec spec_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("document", "top level must be an object");
  for (const auto& [key, value] : doc.items())
    if (key != "name" && key != "dimension" && key != "symbols" && key != "forbidden")
      throw ParseError(key, "unknown field");
  if (doc.contains("name") && !doc["name"].is_string())
    throw ParseError("name", "must be a string");

  if (!doc.contains("dimension")) throw ParseError("dimension", "missing");
  const json& dim = doc["dimension"];
  if (!dim.is_number_integer() || dim.get<long long>() < 1)
    throw ParseError("dimension", "must be an integer >= 1");
  const auto d = static_cast<std::size_t>(dim.get<long long>());

  if (!doc.contains("symbols")) throw ParseError("symbols", "missing");
  const json& syms = doc["symbols"];
  if (!syms.is_array() || syms.empty()) throw ParseError("symbols", "alphabet must be a nonempty array");
  if (syms.size() > kMaxAlphabet)
    throw ParseError("symbols", "at most " + std::to_string(kMaxAlphabet) + " symbols are supported");
  std::vector<std::string> alphabet;
  std::map<std::string, Symbol> lookup;
  for (std::size_t i = 0; i < syms.size(); ++i) {
    if (!syms[i].is_string() || syms[i].get<std::string>().empty())
      throw ParseError(at("symbols", i), "symbols must be nonempty strings");
    auto name = syms[i].get<std::string>();
    if (name == kFillMarker) throw ParseError(at("symbols", i), "\"*\" is reserved as the fill marker");
    if (!lookup.emplace(name, static_cast<Symbol>(i)).second)
      throw ParseError(at("symbols", i), "duplicate symbol \"" + name + "\"");
    alphabet.push_back(std::move(name));
  }

  std::vector<Pattern> forbidden;
  if (doc.contains("forbidden")) {
    const json& list = doc["forbidden"];
    if (!list.is_array()) throw ParseError("forbidden", "must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      PatternReader reader(d, lookup);
      forbidden.push_back(reader.read(list[i], at("forbidden", i)));
    }
  }
  try {
    return SftSpec(d, std::move(alphabet), std::move(forbidden));
  } catch (const SpecError& e) {
    throw ParseError("document", e.what());
  }
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    // Drop the library prefix ("[json.exception.parse_error.101] ").
    if (auto pos = msg.find("] "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ParseError(line_of(text, e.byte == 0 ? 0 : e.byte - 1), msg);
  }
}

}  // namespace

SftSpec parse_spec(std::string_view text) { return spec_from_json(parse_json(text)); }

SftSpec load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_spec(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.location(), std::string(e.what()).substr(e.location().size() + 2));
  }
}

std::string serialize_spec(const SftSpec& spec) { return spec_json(spec).dump(2) + "\n"; }

std::string render_block(const Block& b, const std::vector<std::string>& alphabet) {
  const std::size_t d = b.dimension();
  if (d == 0 || d > 3) throw UnsupportedError("cannot render a " + std::to_string(d) + "-dimensional block");
  const bool wide = std::any_of(alphabet.begin(), alphabet.end(),
                                [](const std::string& s) { return s.size() != 1; });
  const auto cells = b.data();
  auto row = [&](std::size_t begin, std::size_t n) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
      if (wide && i > 0) out += ' ';
      out += alphabet.at(cells[begin + i]);
    }
    return out;
  };
  const std::size_t width = b.shape().back();
  const std::size_t height = d >= 2 ? b.shape()[d - 2] : 1;
  const std::size_t slices = d == 3 ? b.shape()[0] : 1;
  std::string out;
  for (std::size_t s = 0; s < slices; ++s) {
    if (s > 0) out += "\n\n";
    for (std::size_t r = 0; r < height; ++r) {
      if (r > 0) out += '\n';
      out += row((s * height + r) * width, width);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Archives

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

class BlockCodec {
 public:
  explicit BlockCodec(const std::vector<std::string>& alphabet) : alphabet_(alphabet) {
    wide_ = std::any_of(alphabet.begin(), alphabet.end(),
                        [](const std::string& s) { return s.size() != 1; });
    for (std::size_t i = 0; i < alphabet.size(); ++i) lookup_[alphabet[i]] = static_cast<Symbol>(i);
  }

  std::string encode(const Block& b) const {
    std::string out;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (wide_ && i > 0) out += ',';
      out += alphabet_[b.data()[i]];
    }
    return out;
  }

  Block decode(const std::string& text, const Shape& shape, const std::string& where) const {
    std::vector<Symbol> data;
    auto push = [&](const std::string& name) {
      auto it = lookup_.find(name);
      if (it == lookup_.end()) throw IntegrityError(where + ": unknown symbol \"" + name + "\"");
      data.push_back(it->second);
    };
    if (wide_) {
      std::string cur;
      for (char c : text) {
        if (c == ',') {
          push(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      if (!text.empty()) push(cur);
    } else {
      for (char c : text) push(std::string(1, c));
    }
    if (data.size() != shape_volume(shape))
      throw IntegrityError(where + ": block has " + std::to_string(data.size()) + " cells, expected " +
                           std::to_string(shape_volume(shape)));
    return Block(shape, std::move(data));
  }

 private:
  const std::vector<std::string>& alphabet_;
  bool wide_ = false;
  std::unordered_map<std::string, Symbol> lookup_;
};

json relation_json(const std::optional<Relation>& rel) {
  if (!rel) return nullptr;
  json arr = json::array();
  for (const auto& [a, b] : *rel) arr.push_back({a, b});
  return arr;
}

std::optional<Relation> relation_from(const json& j, std::size_t bound, const std::string& where) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_array()) throw IntegrityError(where + ": relation must be an array");
  Relation rel;
  rel.reserve(j.size());
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) throw IntegrityError(where + ": malformed pair");
    const auto a = p[0].get<std::uint64_t>(), b = p[1].get<std::uint64_t>();
    if (a >= bound || b >= bound) throw IntegrityError(where + ": pair out of range");
    rel.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
  }
  return rel;
}

NormalizeMode mode_from(const std::string& s) {
  if (s == to_string(NormalizeMode::all_extensions)) return NormalizeMode::all_extensions;
  if (s == to_string(NormalizeMode::non_proper_only)) return NormalizeMode::non_proper_only;
  throw IntegrityError("unknown normalization mode \"" + s + "\"");
}

std::string derived_verdict(const StateArchive& a) {
  if (a.index.empty()) return "empty";
  for (const auto& level : a.levels)
    if (level.squares.empty()) return "empty";
  if (a.levels.empty()) return "nonempty-to-level-0";
  return "nonempty-to-level-" + std::to_string(a.levels.back().level);
}

}  // namespace

bool StateArchive::same_state(const StateArchive& other) const {
  return spec == other.spec && normalization == other.normalization && index == other.index &&
         levels == other.levels && verdict == other.verdict;
}

StateArchive make_archive(const SftSpec& spec, const Analysis& analysis) {
  if (spec.dimension() != 2 || !analysis.chain.empty() || analysis.report.mode != EngineMode::reduced)
    throw UnsupportedError("state archives hold reduced two-dimensional level states");
  return {spec, analysis.report.normalization, analysis.allowed, analysis.levels,
          analysis.report.verdict_text(), {}};
}

std::string save_state(const StateArchive& archive) {
  const BlockCodec codec(archive.spec.alphabet());
  json payload;
  payload["spec"] = json::parse(spec_json(archive.spec).dump());
  const auto& n = archive.normalization;
  payload["normalization"] = {{"side", n.side},
                              {"cube_count", n.cube_count},
                              {"mode", to_string(n.mode)},
                              {"allowed_count", n.allowed_count}};
  payload["verdict"] = archive.verdict;
  json index = json::array();
  for (const auto& b : archive.index) index.push_back(codec.encode(b));
  payload["index"] = std::move(index);
  json levels = json::array();
  for (const auto& level : archive.levels) {
    json squares = json::array();
    for (const auto& b : level.squares) squares.push_back(codec.encode(b));
    levels.push_back({{"level", level.level},
                      {"side", level.side},
                      {"squares", std::move(squares)},
                      {"vrel", relation_json(level.vrel)},
                      {"hrel", relation_json(level.hrel)}});
  }
  payload["levels"] = std::move(levels);

  const std::string body = payload.dump();
  json doc;
  doc["format"] = "sftmat-state";
  doc["version"] = kArchiveVersion;
  doc["checksum"] = hex64(fnv1a(body));
  doc["payload"] = std::move(payload);
  return doc.dump() + "\n";
}

StateArchive load_state(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw IntegrityError(std::string("archive is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "sftmat-state")
    throw IntegrityError("not a state archive");
  const std::string version = doc.value("version", "");
  std::vector<std::string> notes;
  if (version == "1.0") {
    notes.push_back("migrated archive from version 1.0: verdict derived from stored levels");
  } else if (version != kArchiveVersion) {
    throw VersionError("archive version \"" + version + "\" is not supported (current " +
                       std::string(kArchiveVersion) + ")");
  }
  if (!doc.contains("payload") || !doc["payload"].is_object())
    throw IntegrityError("archive has no payload");
  const json& payload = doc["payload"];
  if (hex64(fnv1a(payload.dump())) != doc.value("checksum", ""))
    throw IntegrityError("archive checksum mismatch");

  try {
    SftSpec spec = [&] {
      try {
        return spec_from_json(payload.at("spec"));
      } catch (const ParseError& e) {
        throw IntegrityError(std::string("stored spec: ") + e.what());
      }
    }();
    const BlockCodec codec(spec.alphabet());
    const json& nj = payload.at("normalization");
    NormalizationReport norm;
    norm.side = nj.at("side").get<std::size_t>();
    norm.cube_count = nj.at("cube_count").get<std::uint64_t>();
    norm.mode = mode_from(nj.at("mode").get<std::string>());
    norm.allowed_count = nj.at("allowed_count").get<std::uint64_t>();

    StateArchive out{std::move(spec), norm, {}, {}, {}, std::move(notes)};
    const Shape cube(out.spec.dimension(), norm.side);
    const json& index = payload.at("index");
    for (std::size_t i = 0; i < index.size(); ++i)
      out.index.push_back(codec.decode(index[i].get<std::string>(), cube, at("index", i)));
    if (out.index.size() != norm.allowed_count)
      throw IntegrityError("index holds " + std::to_string(out.index.size()) +
                           " cubes but allowed_count is " + std::to_string(norm.allowed_count));

    const json& levels = payload.at("levels");
    for (std::size_t li = 0; li < levels.size(); ++li) {
      const json& lj = levels[li];
      const std::string where = at("levels", li);
      LevelState state;
      state.level = lj.at("level").get<unsigned>();
      state.side = lj.at("side").get<std::size_t>();
      if (state.side != (norm.side << state.level))
        throw IntegrityError(where + ": side does not match the level");
      const Shape shape(out.spec.dimension(), state.side);
      const json& squares = lj.at("squares");
      for (std::size_t i = 0; i < squares.size(); ++i)
        state.squares.push_back(codec.decode(squares[i].get<std::string>(), shape, at(where, i)));
      state.vrel = relation_from(lj.at("vrel"), state.squares.size(), where + ".vrel");
      if (state.vrel)
        state.hrel = relation_from(lj.at("hrel"), state.vrel->size(), where + ".hrel");
      else if (!lj.at("hrel").is_null())
        throw IntegrityError(where + ": hrel without vrel");
      out.levels.push_back(std::move(state));
    }
    if (payload.contains("verdict"))
      out.verdict = payload["verdict"].get<std::string>();
    else
      out.verdict = derived_verdict(out);
    return out;
  } catch (const json::exception& e) {
    throw IntegrityError(std::string("malformed archive: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

std::string format_report_csv(const LevelReport& report) {
  std::ostringstream out;
  const std::string verdict = report.verdict_text();
  out << "level,stage,block_count,relation_count,verdict\n";
  for (const auto& row : report.rows) {
    out << row.level << ',' << row.stage << ',' << row.block_count << ',';
    if (row.relation_count) out << *row.relation_count;
    out << ',' << verdict << '\n';
  }
  return out.str();
}

std::string format_report_table(const LevelReport& report) {
  std::ostringstream out;
  const auto& n = report.normalization;
  out << "engine: " << to_string(report.mode) << "  dimension: " << report.dimension
      << "  cube side: " << n.side << "  forbidden cubes: " << n.cube_count
      << "  allowed cubes: " << n.allowed_count << " (" << to_string(n.mode) << ")\n";
  out << std::left << std::setw(6) << "level" << std::setw(8) << "stage" << std::setw(12) << "shape"
      << std::right << std::setw(16) << "blocks" << std::setw(16) << "relations" << '\n';
  for (const auto& row : report.rows) {
    out << std::left << std::setw(6) << row.level << std::setw(8) << row.stage << std::setw(12)
        << shape_to_string(row.shape) << std::right << std::setw(16) << row.block_count
        << std::setw(16) << (row.relation_count ? std::to_string(*row.relation_count) : "-") << '\n';
  }
  out << "verdict: " << report.verdict_text() << '\n';
  if (!report.stop_reason.empty()) out << "stopped: " << report.stop_reason << '\n';
  return out.str();
}

}  // namespace sft
