#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "gbk/adversary.hpp"
#include "gbk/analysis.hpp"
#include "gbk/core.hpp"
#include "gbk/gallery.hpp"
#include "gbk/solvers.hpp"

namespace gbk {

using json = nlohmann::json;

// A board together with its switches, and the generator specs when it was
// built from one.
struct Instance {
  Board board;
  SwitchFamily family;
  std::optional<BoardSpec> board_spec;
  std::optional<SwitchSpec> switch_spec;
};

Instance make_instance(const BoardSpec& board, const SwitchSpec& switches);

// Board+family file: {"kind": ..., "params": {...}} or the explicit
// {"cells": [[i,j],...], "switches": [{"id": ..., "cells": [...]}, ...]}.
Instance instance_from_json(const json& doc);
json instance_to_json(const Board& board, const SwitchFamily& family);

BoardSpec board_spec_from_json(const json& doc);
// Accepts "rows_cols" or {"kind": "restricted", "params": {"a": 3, "b": 2}}.
SwitchSpec switch_spec_from_json(const json& doc);
json spec_to_json(const BoardSpec& board, const SwitchSpec& switches);

json cell_to_json(const Cell& cell);
Cell cell_from_json(const json& doc);

// {"cells": [[i,j,±1], ...]}; every board cell must appear exactly once.
Configuration configuration_from_json(const json& doc, const Board& board);
json configuration_to_json(const Configuration& config, const Board& board);

// Text grid of '+'/'-' (and '.' for cells not on the board), highest row
// first so that row 1 is printed last.
Configuration configuration_from_grid(std::string_view text, const Board& board);
std::string configuration_to_grid(const Configuration& config, const Board& board);

// JSON when the text starts with '{', grid otherwise.
Configuration parse_configuration(std::string_view text, const Board& board);

// {"<switch-id>": ±1, ...}; every switch must appear.
Assignment assignment_from_json(const json& doc, const SwitchFamily& family);
json assignment_to_json(const Assignment& assignment, const SwitchFamily& family);

json stats_to_json(const TrialStats& stats);
json solve_result_to_json(const SolveResult& result, const SwitchFamily& family);
json minimax_to_json(const MinimaxResult& result, const Board& board);
json certificate_to_json(const HardConfigCertificate& cert, const Board& board);

}  // namespace gbk
