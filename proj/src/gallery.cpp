#include "gbk/gallery.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace gbk {

namespace {

constexpr std::pair<BoardKind, std::string_view> kBoardNames[] = {
    {BoardKind::square, "square"},         {BoardKind::x_board, "x_board"},
    {BoardKind::rotated_square, "rotated_square"}, {BoardKind::disk, "disk"},
    {BoardKind::hyperbola, "hyperbola"},   {BoardKind::cube, "cube"},
};

constexpr std::pair<SwitchKind, std::string_view> kSwitchNames[] = {
    {SwitchKind::rows_cols, "rows_cols"},
    {SwitchKind::diag_plus_cols, "diag_plus_cols"},
    {SwitchKind::slanted_plus_rows, "slanted_plus_rows"},
    {SwitchKind::restricted, "restricted"},
    {SwitchKind::cube_lines, "cube_lines"},
};

using Lines = std::vector<std::pair<std::string, std::vector<Cell>>>;

void require_full_square(const Board& board, std::string_view what) {
  if (!is_full_square(board)) throw ValidationError(std::string(what) + " switches need a full square board");
}

Lines rows_and_columns(const Board& board) {
  std::map<int, std::vector<Cell>> rows;
  std::map<int, std::vector<Cell>> cols;
  for (const Cell& c : board.cells()) {
    rows[c.row()].push_back(c);
    cols[c.col()].push_back(c);
  }
  Lines lines;
  for (auto& [i, cells] : rows) lines.emplace_back(row_id(i), std::move(cells));
  for (auto& [j, cells] : cols) lines.emplace_back(col_id(j), std::move(cells));
  return lines;
}

Lines columns_of_square(int n, int count) {
  Lines lines;
  for (int j = 1; j <= count; ++j) {
    std::vector<Cell> cells;
    for (int i = 1; i <= n; ++i) cells.emplace_back(i, j);
    lines.emplace_back(col_id(j), std::move(cells));
  }
  return lines;
}

Lines rows_of_square(int n, int count) {
  Lines lines;
  for (int i = 1; i <= count; ++i) {
    std::vector<Cell> cells;
    for (int j = 1; j <= n; ++j) cells.emplace_back(i, j);
    lines.emplace_back(row_id(i), std::move(cells));
  }
  return lines;
}

}  // namespace

std::string_view to_string(BoardKind kind) {
  for (const auto& [k, name] : kBoardNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::string_view to_string(SwitchKind kind) {
  for (const auto& [k, name] : kSwitchNames) {
    if (k == kind) return name;
  }
  return "?";
}

BoardKind parse_board_kind(std::string_view name) {
  for (const auto& [k, n] : kBoardNames) {
    if (n == name) return k;
  }
  throw ValidationError("unknown board kind '" + std::string(name) +
                        "' (expected square, x_board, rotated_square, disk, hyperbola or cube)");
}

SwitchKind parse_switch_kind(std::string_view name) {
  for (const auto& [k, n] : kSwitchNames) {
    if (n == name) return k;
  }
  throw ValidationError("unknown switch kind '" + std::string(name) +
                        "' (expected rows_cols, diag_plus_cols, slanted_plus_rows, restricted or cube_lines)");
}

SwitchSpec default_switches(BoardKind kind) {
  return {kind == BoardKind::cube ? SwitchKind::cube_lines : SwitchKind::rows_cols};
}

std::string row_id(int i) { return "row:" + std::to_string(i); }
std::string col_id(int j) { return "col:" + std::to_string(j); }

Board make_board(const BoardSpec& spec) {
  const int n = spec.n;
  if (n < 1) throw ValidationError("board side n must be at least 1");
  std::vector<Cell> cells;
  // Offsets from the centre, doubled so that they stay integral.
  auto dx = [n](int x) { return 2 * x - n - 1; };
  switch (spec.kind) {
    case BoardKind::square:
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) cells.emplace_back(i, j);
      break;
    case BoardKind::x_board:
      for (int i = 1; i <= n; ++i) {
        cells.emplace_back(i, i);
        if (n + 1 - i != i) cells.emplace_back(i, n + 1 - i);
      }
      break;
    case BoardKind::rotated_square:
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          if (std::abs(dx(i)) + std::abs(dx(j)) <= n) cells.emplace_back(i, j);
      break;
    case BoardKind::disk:
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          if (dx(i) * dx(i) + dx(j) * dx(j) <= n * n) cells.emplace_back(i, j);
      break;
    case BoardKind::hyperbola:
      for (int i = 1; i <= n; ++i)
        for (int j = 1; i * j <= n; ++j) cells.emplace_back(i, j);
      break;
    case BoardKind::cube:
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int k = 1; k <= n; ++k) cells.emplace_back(i, j, k);
      break;
  }
  return Board(std::move(cells));
}

int bounding_side(const Board& board) {
  int side = 0;
  for (const Cell& c : board.cells()) {
    for (int d = 0; d < c.dim; ++d) side = std::max(side, c.coords[d]);
  }
  return side;
}

bool is_full_square(const Board& board) {
  const auto n = static_cast<std::size_t>(bounding_side(board));
  return board.dim() == 2 && board.area() == n * n;
}

bool is_x_board(const Board& board) {
  if (board.dim() != 2) return false;
  return board == make_board({BoardKind::x_board, bounding_side(board)});
}

SwitchFamily make_switches(const Board& board, const SwitchSpec& spec) {
  const int n = bounding_side(board);
  Lines lines;
  switch (spec.kind) {
    case SwitchKind::rows_cols:
      if (board.dim() != 2) throw ValidationError("rows_cols switches need a planar board");
      lines = rows_and_columns(board);
      break;
    case SwitchKind::diag_plus_cols: {
      require_full_square(board, "diag_plus_cols");
      lines = columns_of_square(n, n);
      for (int d = 1 - n; d <= n - 1; ++d) {
        std::vector<Cell> cells;
        for (int i = 1; i <= n; ++i) {
          const int j = i + d;
          if (j >= 1 && j <= n) cells.emplace_back(i, j);
        }
        lines.emplace_back("diag:" + std::to_string(d), std::move(cells));
      }
      break;
    }
    case SwitchKind::slanted_plus_rows: {
      require_full_square(board, "slanted_plus_rows");
      const int t = spec.t;
      if (t < 1 || t >= n) throw ValidationError("slope t must satisfy 1 <= t < n");
      lines = rows_of_square(n, n);
      // Line (x, t*x + c), clipped to G_n.
      for (int c = 1 - t * n; c <= n - t; ++c) {
        std::vector<Cell> cells;
        for (int x = 1; x <= n; ++x) {
          const int y = t * x + c;
          if (y >= 1 && y <= n) cells.emplace_back(x, y);
        }
        lines.emplace_back("slant:" + std::to_string(c), std::move(cells));
      }
      break;
    }
    case SwitchKind::restricted: {
      require_full_square(board, "restricted");
      if (spec.a < 0 || spec.a > n || spec.b < 0 || spec.b > n) {
        throw ValidationError("restricted switches need 0 <= a, b <= n");
      }
      lines = columns_of_square(n, spec.a);
      for (auto& row : rows_of_square(n, spec.b)) lines.push_back(std::move(row));
      break;
    }
    case SwitchKind::cube_lines: {
      if (board.dim() != 3 || board.area() != static_cast<std::size_t>(n) * n * n) {
        throw ValidationError("cube_lines switches need a full cube board");
      }
      auto line = [&](std::string prefix, int p, int q, auto cell_at) {
        std::vector<Cell> cells;
        for (int r = 1; r <= n; ++r) cells.push_back(cell_at(r));
        lines.emplace_back(prefix + std::to_string(p) + "," + std::to_string(q), std::move(cells));
      };
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) line("lij:", i, j, [&](int k) { return Cell(i, j, k); });
      for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k) line("lik:", i, k, [&](int j) { return Cell(i, j, k); });
      for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) line("ljk:", j, k, [&](int i) { return Cell(i, j, k); });
      break;
    }
  }
  return SwitchFamily(board, std::move(lines));
}

std::vector<std::vector<Cell>> x_cycles(const Board& board) {
  if (!is_x_board(board)) throw ValidationError("x_cycles needs an X-shaped board");
  const int n = bounding_side(board);
  std::vector<std::vector<Cell>> groups;
  for (int g = 1; g <= n / 2; ++g) {
    const int h = n + 1 - g;
    groups.push_back({Cell(g, g), Cell(g, h), Cell(h, g), Cell(h, h)});
  }
  if (n % 2 == 1) groups.push_back({Cell(n / 2 + 1, n / 2 + 1)});
  return groups;
}

}  // namespace gbk
