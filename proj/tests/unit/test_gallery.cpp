#include "doctest.h"

#include <cmath>
#include <numbers>
#include <set>

#include "support.hpp"

using namespace gbk;
using namespace gbk::testing;

namespace {

std::vector<int> cover_counts(const Board& board, const SwitchFamily& family, std::string_view prefix) {
  std::vector<int> count(board.area(), 0);
  for (const Switch& s : family.switches()) {
    if (!s.id.starts_with(prefix)) continue;
    for (std::size_t c : s.cells) ++count[c];
  }
  return count;
}

std::size_t count_prefix(const SwitchFamily& family, std::string_view prefix) {
  std::size_t k = 0;
  for (const Switch& s : family.switches()) k += s.id.starts_with(prefix);
  return k;
}

}  // namespace

TEST_CASE("board sizes") {
  CHECK(make_board({BoardKind::square, 3}).area() == 9);
  CHECK(make_board({BoardKind::cube, 3}).area() == 27);
  CHECK(make_board({BoardKind::x_board, 5}).area() == 9);
  CHECK(make_board({BoardKind::x_board, 4}).area() == 8);
  CHECK_THROWS_AS(make_board({BoardKind::square, 0}), ValidationError);
}

TEST_CASE("hyperbola(4) cells") {
  const Board h = make_board({BoardKind::hyperbola, 4});
  const std::vector<Cell> expected{Cell(1, 1), Cell(1, 2), Cell(1, 3), Cell(1, 4),
                                   Cell(2, 1), Cell(2, 2), Cell(3, 1), Cell(4, 1)};
  CHECK(std::vector<Cell>(h.cells().begin(), h.cells().end()) == expected);
}

TEST_CASE("disk(4) drops exactly the four corners") {
  const Board d = make_board({BoardKind::disk, 4});
  CHECK(d.area() == 12);
  for (Cell corner : {Cell(1, 1), Cell(1, 4), Cell(4, 1), Cell(4, 4)}) CHECK_FALSE(d.contains(corner));
}

TEST_CASE("board membership matches the defining inequalities") {
  for (int n : {5, 8, 11}) {
    const Board rot = make_board({BoardKind::rotated_square, n});
    const Board disk = make_board({BoardKind::disk, n});
    const Board hyp = make_board({BoardKind::hyperbola, n});
    for (int x = 1; x <= n; ++x) {
      for (int y = 1; y <= n; ++y) {
        const int dx = 2 * x - n - 1;
        const int dy = 2 * y - n - 1;
        CHECK(rot.contains(Cell(x, y)) == (std::abs(dx) + std::abs(dy) <= n));
        CHECK(disk.contains(Cell(x, y)) == (dx * dx + dy * dy <= n * n));
        CHECK(hyp.contains(Cell(x, y)) == (x * y <= n));
      }
    }
  }
}

TEST_CASE("area asymptotics") {
  for (int n : {32, 64, 128}) {
    const double n2 = static_cast<double>(n) * n;
    CHECK(std::abs(make_board({BoardKind::rotated_square, n}).area() / n2 - 0.5) <= 3.0 / n);
    CHECK(std::abs(make_board({BoardKind::disk, n}).area() / n2 - std::numbers::pi / 4) <= 3.0 / n);
  }
  for (int n : {10, 100, 1000}) {
    std::size_t expected = 0;
    for (int i = 1; i <= n; ++i) expected += n / i;
    const std::size_t area = make_board({BoardKind::hyperbola, n}).area();
    CHECK(area == expected);
    CHECK(area >= n * std::log(n));
    CHECK(area <= n * (std::log(n) + 1));
  }
}

TEST_CASE("switch counts") {
  CHECK(square(5, {SwitchKind::slanted_plus_rows, 3}).family.size() == 22);
  CHECK(make_instance({BoardKind::cube, 2}, {SwitchKind::cube_lines}).family.size() == 12);
  CHECK(square(4, {SwitchKind::diag_plus_cols}).family.size() == 11);
  CHECK(square(6).family.size() == 12);
  const Instance r = square(5, {SwitchKind::restricted, 0, 3, 2});
  CHECK(r.family.size() == 5);
  CHECK(r.family[0].id == "col:1");
  CHECK(r.family[3].id == "row:1");
  // rows_cols on a ragged board: one per nonempty line
  const Instance h = make_instance({BoardKind::hyperbola, 4}, {});
  CHECK(h.family.size() == 8);
}

TEST_CASE("slanted counts and partition") {
  for (int n = 2; n <= 64; ++n) {
    for (int t = 1; t < n; ++t) {
      const Board board = make_board({BoardKind::square, n});
      const SwitchFamily family = make_switches(board, {SwitchKind::slanted_plus_rows, t});
      CHECK(count_prefix(family, "slant:") == static_cast<std::size_t>(n * t + n - t));
      if (n <= 12) {
        for (int c : cover_counts(board, family, "slant:")) CHECK(c == 1);
        for (int c : cover_counts(board, family, "row:")) CHECK(c == 1);
        for (const Switch& s : family.switches()) CHECK_FALSE(s.cells.empty());
      }
    }
  }
  CHECK_THROWS_AS(square(4, {SwitchKind::slanted_plus_rows, 4}), ValidationError);
  CHECK_THROWS_AS(square(4, {SwitchKind::slanted_plus_rows, 0}), ValidationError);
}

TEST_CASE("slanted lines have the stated slope") {
  const Instance sq = square(6, {SwitchKind::slanted_plus_rows, 2});
  const std::size_t s = sq.family.require_index("slant:-3");
  std::vector<Cell> cells;
  for (std::size_t c : sq.family[s].cells) cells.push_back(sq.board.cell(c));
  CHECK(cells == std::vector<Cell>{Cell(2, 1), Cell(3, 3), Cell(4, 5)});
}

TEST_CASE("cube lines partition the cube three ways") {
  const Instance cube = make_instance({BoardKind::cube, 3}, {SwitchKind::cube_lines});
  CHECK(cube.family.size() == 27);
  for (std::string_view prefix : {"lij:", "lik:", "ljk:"}) {
    for (int c : cover_counts(cube.board, cube.family, prefix)) CHECK(c == 1);
  }
  const std::size_t s = cube.family.require_index("lik:2,3");
  for (std::size_t c : cube.family[s].cells) {
    CHECK(cube.board.cell(c).row() == 2);
    CHECK(cube.board.cell(c).layer() == 3);
  }
}

TEST_CASE("diagonals have constant j - i") {
  const Instance sq = square(4, {SwitchKind::diag_plus_cols});
  for (const Switch& s : sq.family.switches()) {
    if (!s.id.starts_with("diag:")) continue;
    std::set<int> offsets;
    for (std::size_t c : s.cells) offsets.insert(sq.board.cell(c).col() - sq.board.cell(c).row());
    CHECK(offsets.size() == 1);
  }
  for (int c : cover_counts(sq.board, sq.family, "diag:")) CHECK(c == 1);
}

TEST_CASE("incompatible switch specs are rejected") {
  CHECK_THROWS_AS(make_instance({BoardKind::disk, 5}, {SwitchKind::diag_plus_cols}), ValidationError);
  CHECK_THROWS_AS(make_instance({BoardKind::square, 3}, {SwitchKind::cube_lines}), ValidationError);
  CHECK_THROWS_AS(make_instance({BoardKind::cube, 3}, {SwitchKind::rows_cols}), ValidationError);
  CHECK_THROWS_AS(square(3, {SwitchKind::restricted, 0, 4, 0}), ValidationError);
  CHECK_THROWS_AS(parse_board_kind("triangle"), ValidationError);
}

TEST_CASE("x_cycles") {
  const auto five = x_cycles(make_board({BoardKind::x_board, 5}));
  REQUIRE(five.size() == 3);
  CHECK(five[0].size() == 4);
  CHECK(five[1].size() == 4);
  CHECK(five[2] == std::vector<Cell>{Cell(3, 3)});
  const std::set<Cell> outer(five[0].begin(), five[0].end());
  CHECK(outer == std::set<Cell>{Cell(1, 1), Cell(1, 5), Cell(5, 1), Cell(5, 5)});

  const auto four = x_cycles(make_board({BoardKind::x_board, 4}));
  REQUIRE(four.size() == 2);
  CHECK(four[0].size() == 4);
  CHECK(four[1].size() == 4);

  CHECK(x_cycles(make_board({BoardKind::x_board, 1})).size() == 1);
  CHECK_THROWS_AS(x_cycles(make_board({BoardKind::square, 3})), ValidationError);

  for (int n = 1; n <= 9; ++n) {
    const Board x = make_board({BoardKind::x_board, n});
    std::set<Cell> seen;
    for (const auto& group : x_cycles(x)) {
      for (const Cell& c : group) CHECK(seen.insert(c).second);
    }
    CHECK(seen.size() == x.area());
  }
}
