#pragma once

#include <cstdint>
#include <optional>

#include "gbk/core.hpp"
#include "gbk/solvers.hpp"

namespace gbk {

struct MinimaxResult {
  std::int64_t value = 0;
  Configuration witness_config;
  std::uint64_t configs_scanned = 0;
  bool canonical = false;
};

struct MinimaxOptions {
  bool canonicalize = true;
  std::uint64_t config_cap = std::uint64_t{1} << 25;
  SolverOptions solver{};
};

// Whether fixing the first row and column to +1 is a valid reduction: the
// board is a full rectangle and every row and column carries a switch.
bool supports_canonical_form(const Board& board, const SwitchFamily& family);

// min over configurations of the exact inner maximum. With canonicalize set
// (and supported) only configurations with first row and column +1 are
// scanned. Ties resolve to the lexicographically smallest configuration.
MinimaxResult minimax(const Board& board, const SwitchFamily& family, const MinimaxOptions& options = {});

struct HardConfigCertificate {
  Configuration config;
  std::int64_t certified_max = 0;
  double lambda = 0;
  std::uint64_t tries = 0;
};

struct HardConfigOutcome {
  bool found = false;
  // On success, the certificate with certified_max <= lambda; otherwise the
  // smallest maximum seen over all tries.
  HardConfigCertificate best;
};

HardConfigOutcome sample_hard_config(const Board& board, const SwitchFamily& family, double lambda,
                                     std::uint64_t max_tries, std::uint64_t rng_seed,
                                     const SolverOptions& options = {});

// Rows b+1..n x columns a+1..n fixed to -1, every other cell uniform from
// the seed. Intended for square(n) with restricted(a, b) switches.
Configuration build_remove_ii(int n, int a, int b, std::uint64_t rng_seed);
Configuration build_remove_ii_delta(int n, double delta, std::uint64_t rng_seed);

// Chessboard signs (-1)^(i+j) on rows b+1..n x cols 1..a and rows 1..b x
// cols a+1..n, -1 elsewhere. Requires a + b = n and a >= b >= 1.
Configuration build_remove_iii(int n, int a, int b);

// Configuration of square(n), n even, whose columns all sum to zero; with
// column switches only its maximum discrepancy is 0.
Configuration zero_sum_columns(int n);

}  // namespace gbk
