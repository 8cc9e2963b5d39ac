#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gbk/core.hpp"

namespace gbk {

struct SolveResult {
  std::int64_t value = 0;
  Assignment assignment;
  std::uint64_t nodes_explored = 0;
};

struct SolverOptions {
  int cap = 30;  // maximum number of enumerated switches
  int jobs = 1;  // worker threads; <= 0 means hardware concurrency
};

// Default worker count: GBK_JOBS if set, else hardware concurrency.
int default_jobs();

// Global maximum over all 2^S assignments (Gray-code order). Among maximisers
// the lexicographically smallest assignment (+1 < -1, switch order) wins.
SolveResult exact_max(const Board& board, const SwitchFamily& family, const Configuration& config,
                      const SolverOptions& options = {});

// Global maximum enumerating only enum_group; every switch in greedy_group is
// then set independently (sign +1 on a zero sum). greedy_group must be
// pairwise cell-disjoint and the two groups must partition the family.
SolveResult exact_max_split(const Board& board, const SwitchFamily& family, const Configuration& config,
                            std::span<const std::size_t> enum_group, std::span<const std::size_t> greedy_group,
                            const SolverOptions& options = {});

// Picks the cheapest exact route: the split solver when the family admits a
// disjoint two-group split, plain enumeration otherwise.
SolveResult solve_exact(const Board& board, const SwitchFamily& family, const Configuration& config,
                        const SolverOptions& options = {});

// Scramble-and-greedy: scramble_group signs uniform from the seed, each
// greedy switch then made to cover a non-negative sum; others stay +1.
SolveResult scramble_greedy(const Board& board, const SwitchFamily& family, const Configuration& config,
                            std::span<const std::size_t> scramble_group, std::span<const std::size_t> greedy_group,
                            std::uint64_t rng_seed);

// Deterministic second phase: the signs of `fixed` on scramble_group are kept,
// greedy_group is set as above, every other switch is +1.
SolveResult greedy_complete(const Board& board, const SwitchFamily& family, const Configuration& config,
                            const Assignment& fixed, std::span<const std::size_t> scramble_group,
                            std::span<const std::size_t> greedy_group);

// Best-improvement single-flip hill climbing; ties broken by smallest id.
SolveResult local_search(const Board& board, const SwitchFamily& family, const Configuration& config,
                         const Assignment& start);

// Best single flip from a playfield: (switch index, gain). Ties go to the
// lexicographically smallest id. Requires a non-empty family.
std::pair<std::size_t, std::int64_t> best_flip(const SwitchFamily& family, const Playfield& field);

// Per-4-cycle optimum on an X board played with its rows and columns.
// The returned assignment is over make_switches(board, rows_cols).
SolveResult x_cycle_solve(const Board& board, const Configuration& config);

// Row 1 (n cells) turned all +1 through the columns, every other row made
// non-negative. Assignment is over make_switches(hyperbola(n), rows_cols).
SolveResult hyperbola_solve(int n, const Configuration& config);

}  // namespace gbk
