#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gbk/core.hpp"
#include "gbk/gallery.hpp"

namespace gbk {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(unsigned n, unsigned k);

// E|S_n| = n 2^(1-n) C(n-1, floor((n-1)/2)), exactly.
Rational expected_abs_sum(int n);

// sqrt(2/pi) sqrt(n).
double expected_abs_sum_asymptotic(int n);

// exp(-lambda^2 / 2n), the deviation bound on Pr[S_n > lambda].
double chernoff_bound(int n, double lambda);

double gamma(double s);

struct NamedConstant {
  std::string_view name;
  double value;
  std::string_view meaning;
};

double theorem_constant(std::string_view name);
std::vector<NamedConstant> theorem_constants();

struct TrialStats {
  std::uint64_t trials = 0;
  double mean = 0;
  double sample_std = 0;
  double std_err = 0;
  std::pair<double, double> ci95{0, 0};
  // False when trials < 2: sample_std and std_err are then reported as 0.
  bool dispersion_defined = false;
};

TrialStats summarize(const std::vector<double>& values);

enum class StrategyKind {
  scramble_greedy,  // random first group, greedy second group
  hyperbola,        // deterministic row-1 strategy on hyperbola boards
  local_search,     // hill climbing from the identity
};

// A repeatable randomized strategy over a fixed board and family.
struct TrialStrategy {
  std::string name;
  StrategyKind kind = StrategyKind::scramble_greedy;
  BoardSpec board_spec{};
  SwitchSpec switch_spec{};
  Board board;
  SwitchFamily family;
  std::vector<std::size_t> scramble_group;
  std::vector<std::size_t> greedy_group;
  std::optional<Configuration> fixed_config;
};

// The (scramble, greedy) groups the scramble-and-greedy strategy uses for a
// switch kind; without a kind, the family's disjoint split (second group
// scrambled). Throws when neither applies.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> scramble_groups(
    const Board& board, const SwitchFamily& family, const std::optional<SwitchKind>& kind);

// Named strategies: "scramble-greedy" (groups chosen per switch kind: columns
// then rows for rows_cols and restricted, rows then slanted lines, columns
// then diagonals, l_jk then l_ik on the cube), "hyperbola", "local-search".
TrialStrategy make_strategy(std::string_view name, const BoardSpec& board, const SwitchSpec& switches);

// Value of one trial: fresh random configuration (unless fixed) and
// strategy randomness, both derived from (seed, trial).
std::int64_t run_trial(const TrialStrategy& strategy, std::uint64_t seed, std::uint64_t trial);

TrialStats run_trials(const TrialStrategy& strategy, std::uint64_t trials, std::uint64_t seed, int jobs = 1);

// Fraction of `samples` draws of S_n exceeding each lambda.
std::vector<double> empirical_tail(int n, const std::vector<double>& lambdas, std::uint64_t samples,
                                   std::uint64_t seed);

}  // namespace gbk
