#include "doctest.h"

#include <cmath>

#include "gbk/adversary.hpp"
#include "gbk/rng.hpp"
#include "support.hpp"

using namespace gbk;
using namespace gbk::testing;

namespace {

std::int64_t plain_sum(const Configuration& config) {
  std::int64_t s = 0;
  for (std::size_t c = 0; c < config.size(); ++c) s += config[c];
  return s;
}

int cell_sign(const Configuration& config, int n, int i, int j) {
  return config[static_cast<std::size_t>((i - 1) * n + (j - 1))];
}

}  // namespace

TEST_CASE("minimax small squares") {
  CHECK(minimax(square(1).board, square(1).family).value == 1);
  const std::int64_t table[] = {0, 1, 2, 5, 8};
  const std::uint64_t scans[] = {0, 1, 2, 16, 512};
  for (int n = 2; n <= 4; ++n) {
    const Instance sq = square(n);
    const MinimaxResult r = minimax(sq.board, sq.family);
    CHECK(r.value == table[n]);
    CHECK(r.canonical);
    CHECK(r.configs_scanned == scans[n]);
    CHECK(exact_max(sq.board, sq.family, r.witness_config).value == r.value);
  }
}

TEST_CASE("minimax canonical and full scans agree") {
  for (int n : {2, 3}) {
    const Instance sq = square(n);
    MinimaxOptions full;
    full.canonicalize = false;
    const MinimaxResult a = minimax(sq.board, sq.family);
    const MinimaxResult b = minimax(sq.board, sq.family, full);
    CHECK(a.value == b.value);
    CHECK_FALSE(b.canonical);
    CHECK(b.configs_scanned == (std::uint64_t{1} << (n * n)));
  }
  const Instance two = square(2);
  CHECK(minimax(two.board, two.family).value == naive_minimax(two.board, two.family));
}

TEST_CASE("minimax on X boards") {
  for (int n : {3, 5}) {
    const Board x = make_board({BoardKind::x_board, n});
    const SwitchFamily family = make_switches(x, {});
    const MinimaxResult r = minimax(x, family);
    CHECK(r.value == n);
    CHECK(r.value == naive_minimax(x, family));
  }
}

TEST_CASE("minimax budget") {
  const Instance sq = square(5);
  MinimaxOptions options;
  options.config_cap = 1000;
  try {
    minimax(sq.board, sq.family, options);
    FAIL("expected a budget error");
  } catch (const BudgetError& e) {
    CHECK(e.required() == 65536);
  }
}

TEST_CASE("zero switch note") {
  const Instance cols = square(2, {SwitchKind::restricted, 0, 2, 0});
  const Configuration zero = Configuration::from_values(std::vector<int>{1, -1, -1, 1});
  CHECK(exact_max(cols.board, cols.family, zero).value == 0);
  CHECK(zero_sum_columns(2) == zero);
  CHECK(minimax(cols.board, cols.family).value == 0);
  CHECK(naive_minimax(cols.board, cols.family) == 0);
  const Instance wide = square(4, {SwitchKind::restricted, 0, 4, 0});
  CHECK(exact_max(wide.board, wide.family, zero_sum_columns(4)).value == 0);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CHECK(exact_max(wide.board, wide.family, random_configuration(16, CounterRng(seed))).value >= 0);
  }
}

TEST_CASE("sample_hard_config") {
  const Instance three = square(3);
  const HardConfigOutcome ok = sample_hard_config(three.board, three.family, 1.6651 * std::pow(3.0, 1.5), 50, 1);
  CHECK(ok.found);
  CHECK(ok.best.certified_max <= 8);
  CHECK(exact_max(three.board, three.family, ok.best.config).value == ok.best.certified_max);

  const HardConfigOutcome never = sample_hard_config(three.board, three.family, 4, 30, 1);
  CHECK_FALSE(never.found);
  CHECK(never.best.tries == 30);
  CHECK(never.best.certified_max >= 5);

  const Instance four = square(4);
  const HardConfigOutcome four_ok = sample_hard_config(four.board, four.family, 1.6651 * 8, 50, 2);
  CHECK(four_ok.found);
  CHECK(four_ok.best.certified_max <= 13);
}

TEST_CASE("build_remove_ii") {
  const Configuration c = build_remove_ii(4, 3, 3, 5);
  CHECK(cell_sign(c, 4, 4, 4) == -1);
  for (int n = 2; n <= 8; ++n) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const int a = static_cast<int>(CounterRng(seed).word(0) % (n + 1));
      const int b = static_cast<int>(CounterRng(seed).word(1) % (n + 1));
      const Configuration config = build_remove_ii(n, a, b, seed);
      for (int i = b + 1; i <= n; ++i) {
        for (int j = a + 1; j <= n; ++j) CHECK(cell_sign(config, n, i, j) == -1);
      }
    }
  }
  CHECK(build_remove_ii(6, 3, 3, 1) == build_remove_ii(6, 3, 3, 1));
  CHECK(build_remove_ii_delta(10, 0.3, 4) == build_remove_ii(10, 7, 7, 4));
  CHECK_THROWS_AS(build_remove_ii(4, 5, 1, 0), ValidationError);
}

TEST_CASE("remove-ii decomposition identity") {
  for (int n = 2; n <= 6; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const int a = n - 1;
      const int b = n / 2;
      const Instance r = square(n, {SwitchKind::restricted, 0, a, b});
      const Configuration config = build_remove_ii(n, a, b, seed);
      std::vector<bool> keep(r.board.area());
      for (std::size_t c = 0; c < r.board.area(); ++c) {
        keep[c] = !(r.board.cell(c).row() > b && r.board.cell(c).col() > a);
      }
      const auto [sub_board, sub_family] = restrict_board(r.board, r.family, keep);
      Configuration sub(sub_board.area());
      for (std::size_t c = 0; c < sub_board.area(); ++c) {
        sub.signs.set(c, config[r.board.require_index(sub_board.cell(c))]);
      }
      CHECK(exact_max(r.board, r.family, config).value ==
            naive_max(sub_board, sub_family, values_of(sub)) - (n - a) * (n - b));
    }
  }
}

TEST_CASE("build_remove_iii") {
  const Configuration four = build_remove_iii(4, 2, 2);
  CHECK(plain_sum(four) == -8);
  const Instance r = square(4, {SwitchKind::restricted, 0, 2, 2});
  // flipping both columns turns the doubly switched -1 block into +4,
  // cancelling the fixed -4 block
  CHECK(exact_max(r.board, r.family, four).value == 0);
  CHECK(exact_max(r.board, r.family, four).value == naive_max(r.board, r.family, values_of(four)));

  // Independent count: chessboard blocks contribute the surplus of their
  // (-1)^(i+j) entries, the other blocks are all -1.
  for (int n = 2; n <= 10; ++n) {
    for (int b = 1; b <= n / 2; ++b) {
      const int a = n - b;
      std::int64_t expected = -2 * static_cast<std::int64_t>(a) * b;
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          const bool chess = (i > b && j <= a) || (i <= b && j > a);
          if (chess) expected += ((i + j) % 2 == 0) ? 1 : -1;
        }
      }
      const Configuration config = build_remove_iii(n, a, b);
      CHECK(plain_sum(config) == expected);
      if ((a * (n - b)) % 2 == 0 && (b * (n - a)) % 2 == 0) CHECK(plain_sum(config) == -2 * b * (n - b));
      for (int i = 1; i <= b; ++i) {
        for (int j = 1; j <= a; ++j) CHECK(cell_sign(config, n, i, j) == -1);
      }
    }
  }
  CHECK_THROWS_AS(build_remove_iii(4, 1, 2), ValidationError);
  CHECK_THROWS_AS(build_remove_iii(4, 2, 1), ValidationError);
  CHECK_THROWS_AS(build_remove_iii(4, 4, 0), ValidationError);
}

TEST_CASE("restricted switches cannot push the maximum down to -ab") {
  // cells outside the switched rows and columns are fixed, the rest has
  // mean zero over the switches and is not identically zero
  for (int n = 3; n <= 5; ++n) {
    for (int b = 1; b <= n / 2; ++b) {
      const int a = n - b;
      const Instance r = square(n, {SwitchKind::restricted, 0, a, b});
      for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Configuration config = random_configuration(r.board.area(), CounterRng(seed));
        CHECK(exact_max(r.board, r.family, config).value > -a * b);
      }
      CHECK(exact_max(r.board, r.family, build_remove_iii(n, a, b)).value > -a * b);
    }
  }
}
