#pragma once

// Naive reference implementations used as oracles by the tests. They share
// no code with the solvers beyond the data model.

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "gbk/core.hpp"
#include "gbk/gallery.hpp"
#include "gbk/io.hpp"
#include "gbk/rng.hpp"

namespace gbk::testing {

// f = sum over cells of a_c times the product of the signs of every switch
// whose member list contains the cell, found by linear scan.
inline std::int64_t naive_evaluate(const Board& board, const SwitchFamily& family, const std::vector<int>& a,
                                   const std::vector<int>& sigma) {
  std::int64_t total = 0;
  for (std::size_t c = 0; c < board.area(); ++c) {
    int value = a[c];
    for (std::size_t s = 0; s < family.size(); ++s) {
      for (std::size_t member : family[s].cells) {
        if (member == c) value *= sigma[s];
      }
    }
    total += value;
  }
  return total;
}

inline std::vector<int> values_of(const Configuration& config) {
  std::vector<int> out(config.size());
  for (std::size_t c = 0; c < config.size(); ++c) out[c] = config[c];
  return out;
}

inline std::vector<int> values_of(const Assignment& assignment) {
  std::vector<int> out(assignment.size());
  for (std::size_t s = 0; s < assignment.size(); ++s) out[s] = assignment[s];
  return out;
}

inline std::vector<int> signs_from_mask(std::uint64_t mask, std::size_t count) {
  std::vector<int> out(count);
  for (std::size_t s = 0; s < count; ++s) out[s] = ((mask >> s) & 1) ? -1 : 1;
  return out;
}

inline std::int64_t naive_max(const Board& board, const SwitchFamily& family, const std::vector<int>& a) {
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << family.size()); ++mask) {
    best = std::max(best, naive_evaluate(board, family, a, signs_from_mask(mask, family.size())));
  }
  return best;
}

// Lexicographically smallest maximiser with +1 < -1 in switch order.
inline std::vector<int> naive_argmax(const Board& board, const SwitchFamily& family, const std::vector<int>& a) {
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  std::vector<int> arg;
  const std::size_t s_count = family.size();
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << s_count); ++k) {
    // k read most-significant-first as switch 0, 1, ... gives lexicographic order.
    std::vector<int> sigma(s_count);
    for (std::size_t s = 0; s < s_count; ++s) sigma[s] = ((k >> (s_count - 1 - s)) & 1) ? -1 : 1;
    const std::int64_t v = naive_evaluate(board, family, a, sigma);
    if (v > best) {
      best = v;
      arg = sigma;
    }
  }
  return arg;
}

// Every configuration of the board enumerated; smallest naive maximum.
inline std::int64_t naive_minimax(const Board& board, const SwitchFamily& family) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << board.area()); ++mask) {
    best = std::min(best, naive_max(board, family, signs_from_mask(mask, board.area())));
  }
  return best;
}

inline Configuration config_from_grid(const std::string& grid, const Board& board) {
  return configuration_from_grid(grid, board);
}

// 5x5 sample scoring 5 with no switch pulled, highest row first.
inline const char* kScoredFive =
    "-++-+\n"
    "++-++\n"
    "-++-+\n"
    "-----\n"
    "+++++\n";

// Sample on x_board(5) as (row, col, sign).
inline std::vector<std::array<int, 3>> x_five_sample_cells() {
  return {{1, 1, 1},  {2, 2, 1},  {3, 3, -1}, {4, 4, 1}, {5, 5, -1},
          {5, 1, -1}, {4, 2, -1}, {2, 4, 1},  {1, 5, -1}};
}

inline Configuration x_five_sample(const Board& board) {
  Configuration config(board.area());
  for (const auto& [i, j, s] : x_five_sample_cells()) config.signs.set(board.require_index(Cell(i, j)), s);
  return config;
}

inline std::vector<std::size_t> index_range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (std::size_t s = lo; s < hi; ++s) out.push_back(s);
  return out;
}

// Random explicit instance: up to 12 cells, switches drawn as random subsets
// of two kinds so the family has a valid split.
inline Instance random_split_instance(std::uint64_t seed, std::vector<std::size_t>& enum_group,
                               std::vector<std::size_t>& greedy_group) {
  const CounterRng rng(seed);
  const int rows = 2 + static_cast<int>(rng.word(0) % 3);  // 2..4
  const int cols = 2 + static_cast<int>(rng.word(1) % 2);  // 2..3
  std::vector<Cell> cells;
  for (int i = 1; i <= rows; ++i) {
    for (int j = 1; j <= cols; ++j) {
      if (rng.uniform(10 + i * 7 + j) < 0.85) cells.emplace_back(i, j);
    }
  }
  if (cells.empty()) cells.emplace_back(1, 1);
  const Board board(cells);
  std::vector<std::pair<std::string, std::vector<Cell>>> switches;
  // Greedy part: random disjoint blocks from a random partition of the cells.
  const int blocks = 1 + static_cast<int>(rng.word(2) % 4);
  std::vector<std::vector<Cell>> parts(blocks);
  std::uint64_t k = 100;
  for (const Cell& c : board.cells()) {
    const std::uint64_t pick = rng.word(k++) % (blocks + 1);
    if (pick < static_cast<std::uint64_t>(blocks)) parts[pick].push_back(c);
  }
  for (int b = 0; b < blocks; ++b) switches.push_back({"g" + std::to_string(b), parts[b]});
  // Enumerated part: arbitrary overlapping subsets.
  const int free_switches = 1 + static_cast<int>(rng.word(3) % 5);
  for (int e = 0; e < free_switches; ++e) {
    std::vector<Cell> members;
    for (const Cell& c : board.cells()) {
      if (rng.uniform(k++) < 0.4) members.push_back(c);
    }
    switches.push_back({"e" + std::to_string(e), members});
  }
  SwitchFamily family(board, switches);
  greedy_group = index_range(0, blocks);
  enum_group = index_range(blocks, family.size());
  return Instance{board, std::move(family), std::nullopt, std::nullopt};
}

inline Instance square(int n, SwitchSpec switches = {}) { return make_instance({BoardKind::square, n}, switches); }

}  // namespace gbk::testing
