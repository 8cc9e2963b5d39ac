#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gbk/core.hpp"

namespace gbk {

enum class BoardKind { square, x_board, rotated_square, disk, hyperbola, cube };
enum class SwitchKind { rows_cols, diag_plus_cols, slanted_plus_rows, restricted, cube_lines };

struct BoardSpec {
  BoardKind kind = BoardKind::square;
  int n = 1;
};

struct SwitchSpec {
  SwitchKind kind = SwitchKind::rows_cols;
  int t = 0;  // slope, slanted_plus_rows only
  int a = 0;  // column switches, restricted only
  int b = 0;  // row switches, restricted only
};

std::string_view to_string(BoardKind kind);
std::string_view to_string(SwitchKind kind);
BoardKind parse_board_kind(std::string_view name);
SwitchKind parse_switch_kind(std::string_view name);

// The family a board kind is played with unless told otherwise.
SwitchSpec default_switches(BoardKind kind);

Board make_board(const BoardSpec& spec);
SwitchFamily make_switches(const Board& board, const SwitchSpec& spec);

// Side length of the smallest G_n containing the board.
int bounding_side(const Board& board);
bool is_full_square(const Board& board);
bool is_x_board(const Board& board);

// Nested 4-cycles of an X board, outermost first, then the centre for odd n.
std::vector<std::vector<Cell>> x_cycles(const Board& board);

// Switch ids used by the generators.
std::string row_id(int i);
std::string col_id(int j);

}  // namespace gbk
