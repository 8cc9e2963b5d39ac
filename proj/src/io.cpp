#include "gbk/io.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace gbk {

namespace {

int get_int(const json& params, const char* key, int fallback) {
  if (!params.contains(key)) return fallback;
  const json& v = params.at(key);
  if (!v.is_number_integer()) throw ValidationError(std::string("parameter '") + key + "' must be an integer");
  return v.get<int>();
}

int sign_from_json(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    const int s = v.get<int>();
    if (s == 1 || s == -1) return s;
  }
  throw ValidationError(where + ": sign must be +1 or -1");
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string current;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (ch != '\r' && ch != ' ' && ch != '\t') {
      current.push_back(ch);
    }
  }
  lines.push_back(current);
  // Drop blank lines around the grid.
  std::erase_if(lines, [](const std::string& l) { return l.empty(); });
  return lines;
}

}  // namespace

Instance make_instance(const BoardSpec& board_spec, const SwitchSpec& switch_spec) {
  Board board = make_board(board_spec);
  SwitchFamily family = make_switches(board, switch_spec);
  return Instance{std::move(board), std::move(family), board_spec, switch_spec};
}

json cell_to_json(const Cell& cell) {
  json out = json::array();
  for (int d = 0; d < cell.dim; ++d) out.push_back(cell.coords[d]);
  return out;
}

Cell cell_from_json(const json& doc) {
  if (!doc.is_array() || (doc.size() != 2 && doc.size() != 3)) {
    throw ValidationError("a cell must be an array of 2 or 3 integers, got " + doc.dump());
  }
  for (const json& v : doc) {
    if (!v.is_number_integer()) throw ValidationError("cell coordinates must be integers, got " + doc.dump());
  }
  if (doc.size() == 2) return Cell(doc[0].get<int>(), doc[1].get<int>());
  return Cell(doc[0].get<int>(), doc[1].get<int>(), doc[2].get<int>());
}

BoardSpec board_spec_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("kind")) throw ValidationError("board spec needs a \"kind\"");
  const json params = doc.value("params", json::object());
  BoardSpec spec;
  spec.kind = parse_board_kind(doc.at("kind").get<std::string>());
  spec.n = get_int(params, "n", 0);
  if (spec.n < 1) throw ValidationError("board spec needs params.n >= 1");
  return spec;
}

SwitchSpec switch_spec_from_json(const json& doc) {
  SwitchSpec spec;
  if (doc.is_string()) {
    spec.kind = parse_switch_kind(doc.get<std::string>());
    return spec;
  }
  if (!doc.is_object() || !doc.contains("kind")) throw ValidationError("switch spec needs a \"kind\"");
  spec.kind = parse_switch_kind(doc.at("kind").get<std::string>());
  const json params = doc.value("params", json::object());
  spec.t = get_int(params, "t", 0);
  spec.a = get_int(params, "a", 0);
  spec.b = get_int(params, "b", 0);
  return spec;
}

json spec_to_json(const BoardSpec& board, const SwitchSpec& switches) {
  json params = {{"n", board.n}, {"switches", std::string(to_string(switches.kind))}};
  if (switches.kind == SwitchKind::slanted_plus_rows) params["t"] = switches.t;
  if (switches.kind == SwitchKind::restricted) {
    params["a"] = switches.a;
    params["b"] = switches.b;
  }
  return {{"kind", std::string(to_string(board.kind))}, {"params", params}};
}

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("board file must be a JSON object");
  if (doc.contains("kind")) {
    const BoardSpec board = board_spec_from_json(doc);
    const json params = doc.value("params", json::object());
    SwitchSpec switches = default_switches(board.kind);
    if (params.contains("switches")) {
      const json& sw = params.at("switches");
      switches = sw.is_string() ? SwitchSpec{parse_switch_kind(sw.get<std::string>())} : switch_spec_from_json(sw);
      if (sw.is_string()) {
        switches.t = get_int(params, "t", 0);
        switches.a = get_int(params, "a", 0);
        switches.b = get_int(params, "b", 0);
      }
    }
    return make_instance(board, switches);
  }
  if (!doc.contains("cells")) throw ValidationError("board file needs \"kind\" or \"cells\"");
  std::vector<Cell> cells;
  for (const json& c : doc.at("cells")) cells.push_back(cell_from_json(c));
  Board board(std::move(cells));
  std::vector<std::pair<std::string, std::vector<Cell>>> lines;
  for (const json& sw : doc.value("switches", json::array())) {
    if (!sw.contains("id") || !sw.at("id").is_string()) throw ValidationError("every switch needs a string \"id\"");
    std::vector<Cell> members;
    for (const json& c : sw.value("cells", json::array())) members.push_back(cell_from_json(c));
    lines.emplace_back(sw.at("id").get<std::string>(), std::move(members));
  }
  SwitchFamily family(board, std::move(lines));
  return Instance{std::move(board), std::move(family), std::nullopt, std::nullopt};
}

json instance_to_json(const Board& board, const SwitchFamily& family) {
  json cells = json::array();
  for (const Cell& c : board.cells()) cells.push_back(cell_to_json(c));
  json switches = json::array();
  for (const Switch& sw : family.switches()) {
    json members = json::array();
    for (std::size_t c : sw.cells) members.push_back(cell_to_json(board.cell(c)));
    switches.push_back({{"id", sw.id}, {"cells", std::move(members)}});
  }
  return {{"cells", std::move(cells)}, {"switches", std::move(switches)}};
}

Configuration configuration_from_json(const json& doc, const Board& board) {
  if (!doc.is_object() || !doc.contains("cells")) throw ValidationError("configuration needs \"cells\"");
  Configuration config(board.area());
  std::vector<bool> seen(board.area(), false);
  for (const json& entry : doc.at("cells")) {
    if (!entry.is_array() || entry.size() != static_cast<std::size_t>(board.dim()) + 1) {
      throw ValidationError("configuration entry must be [coords..., sign], got " + entry.dump());
    }
    json coords = entry;
    coords.erase(coords.size() - 1);
    const Cell cell = cell_from_json(coords);
    const std::size_t c = board.require_index(cell);
    if (seen[c]) throw ValidationError("configuration lists cell " + to_string(cell) + " twice");
    seen[c] = true;
    config.signs.set(c, sign_from_json(entry.back(), "cell " + to_string(cell)));
  }
  for (std::size_t c = 0; c < board.area(); ++c) {
    if (!seen[c]) throw ValidationError("configuration is missing cell " + to_string(board.cell(c)));
  }
  return config;
}

json configuration_to_json(const Configuration& config, const Board& board) {
  json cells = json::array();
  for (std::size_t c = 0; c < board.area(); ++c) {
    json entry = cell_to_json(board.cell(c));
    entry.push_back(config[c]);
    cells.push_back(std::move(entry));
  }
  return {{"cells", std::move(cells)}};
}

Configuration configuration_from_grid(std::string_view text, const Board& board) {
  if (board.dim() != 2) throw UnsupportedDimension("grid configurations are planar only");
  const std::vector<std::string> lines = split_lines(text);
  Configuration config(board.area());
  std::vector<bool> seen(board.area(), false);
  const int rows = static_cast<int>(lines.size());
  for (int line = 0; line < rows; ++line) {
    const int i = rows - line;
    for (std::size_t pos = 0; pos < lines[line].size(); ++pos) {
      const char ch = lines[line][pos];
      const Cell cell(i, static_cast<int>(pos) + 1);
      if (ch == '.') {
        if (board.contains(cell)) throw ValidationError("grid marks board cell " + to_string(cell) + " as absent");
        continue;
      }
      if (ch != '+' && ch != '-') throw ValidationError(std::string("unexpected grid character '") + ch + "'");
      const std::size_t c = board.require_index(cell);
      seen[c] = true;
      config.signs.set(c, ch == '+' ? 1 : -1);
    }
  }
  for (std::size_t c = 0; c < board.area(); ++c) {
    if (!seen[c]) throw ValidationError("configuration is missing cell " + to_string(board.cell(c)));
  }
  return config;
}

std::string configuration_to_grid(const Configuration& config, const Board& board) {
  if (board.dim() != 2) throw UnsupportedDimension("grid configurations are planar only");
  int rows = 0;
  int cols = 0;
  for (const Cell& c : board.cells()) {
    rows = std::max(rows, c.row());
    cols = std::max(cols, c.col());
  }
  std::string out;
  for (int i = rows; i >= 1; --i) {
    std::string line;
    for (int j = 1; j <= cols; ++j) {
      const auto c = board.index_of(Cell(i, j));
      line.push_back(!c ? '.' : (config[*c] > 0 ? '+' : '-'));
    }
    // Trailing absent cells carry no information.
    while (!line.empty() && line.back() == '.') line.pop_back();
    out += line + "\n";
  }
  return out;
}

Configuration parse_configuration(std::string_view text, const Board& board) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("configuration is not valid JSON: ") + e.what());
    }
    return configuration_from_json(doc, board);
  }
  return configuration_from_grid(text, board);
}

Assignment assignment_from_json(const json& doc, const SwitchFamily& family) {
  if (!doc.is_object()) throw ValidationError("assignment must be a JSON object of switch id -> sign");
  Assignment assignment(family.size());
  std::vector<bool> seen(family.size(), false);
  for (const auto& [id, value] : doc.items()) {
    const std::size_t s = family.require_index(id);
    seen[s] = true;
    assignment.signs.set(s, sign_from_json(value, "switch '" + id + "'"));
  }
  for (std::size_t s = 0; s < family.size(); ++s) {
    if (!seen[s]) throw ValidationError("assignment is missing switch '" + family[s].id + "'");
  }
  return assignment;
}

json assignment_to_json(const Assignment& assignment, const SwitchFamily& family) {
  json out = json::object();
  for (std::size_t s = 0; s < family.size(); ++s) out[family[s].id] = assignment[s];
  return out;
}

json stats_to_json(const TrialStats& stats) {
  json out = {{"trials", stats.trials},
              {"mean", stats.mean},
              {"std", stats.sample_std},
              {"stderr", stats.std_err},
              {"ci95", {stats.ci95.first, stats.ci95.second}}};
  if (!stats.dispersion_defined) out["stderr_defined"] = false;
  return out;
}

json solve_result_to_json(const SolveResult& result, const SwitchFamily& family) {
  return {{"value", result.value},
          {"assignment", assignment_to_json(result.assignment, family)},
          {"nodes_explored", result.nodes_explored}};
}

json minimax_to_json(const MinimaxResult& result, const Board& board) {
  return {{"value", result.value},
          {"witness_config", configuration_to_json(result.witness_config, board)},
          {"configs_scanned", result.configs_scanned},
          {"canonical", result.canonical}};
}

json certificate_to_json(const HardConfigCertificate& cert, const Board& board) {
  return {{"config", configuration_to_json(cert.config, board)},
          {"certified_max", cert.certified_max},
          {"lambda", cert.lambda},
          {"tries", cert.tries}};
}

}  // namespace gbk
