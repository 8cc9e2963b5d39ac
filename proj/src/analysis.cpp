#include "gbk/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <tuple>

#include "gbk/rng.hpp"
#include "gbk/solvers.hpp"
#include "parallel.hpp"

namespace gbk {

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

Rational expected_abs_sum(int n) {
  if (n < 1) throw ValidationError("E|S_n| needs n >= 1");
  const auto m = static_cast<unsigned>(n - 1);
  BigInt numerator = BigInt(n) * binomial(m, m / 2);
  BigInt denominator = BigInt(1) << m;  // 2^(n-1)
  return Rational(numerator, denominator);
}

double expected_abs_sum_asymptotic(int n) {
  if (n < 1) throw ValidationError("E|S_n| needs n >= 1");
  return std::sqrt(2.0 / std::numbers::pi) * std::sqrt(static_cast<double>(n));
}

double chernoff_bound(int n, double lambda) {
  if (n < 1) throw ValidationError("n must be at least 1");
  if (!(lambda > 0)) throw ValidationError("lambda must be positive");
  return std::exp(-lambda * lambda / (2.0 * n));
}

double gamma(double s) {
  if (s <= 0 && std::floor(s) == s) throw ValidationError("gamma has a pole at " + std::to_string(s));
  return std::tgamma(s);
}

std::vector<NamedConstant> theorem_constants() {
  using std::numbers::pi;
  const double ln2 = std::numbers::ln2;
  const double root_2_over_pi = std::sqrt(2.0 / pi);
  return {
      {"square_lower", root_2_over_pi, "square board, scramble-and-greedy lower bound"},
      {"square_upper", 2.0 * std::sqrt(ln2), "square board, random-configuration upper bound"},
      {"rotated_square_lower", 2.0 / 3.0 * root_2_over_pi, "rotated square, lower bound"},
      {"rotated_square_upper", std::sqrt(2.0 * ln2), "rotated square, upper bound"},
      {"disk_lower", pi / (std::abs(gamma(-0.25)) * gamma(1.75)), "inscribed disk, lower bound"},
      {"disk_upper", std::pow(pi, 0.25) * std::sqrt(ln2), "inscribed disk, upper bound"},
      {"diagonal_factor", 4.0 / 3.0, "gain from diagonal plus column switches"},
      {"cube_lower", root_2_over_pi, "cube with line switches, lower bound (n^(5/2))"},
      {"cube_upper", std::sqrt(6.0 * ln2), "cube with line switches, upper bound (n^(5/2))"},
  };
}

double theorem_constant(std::string_view name) {
  std::string valid;
  for (const NamedConstant& c : theorem_constants()) {
    if (c.name == name) return c.value;
    valid += (valid.empty() ? "" : ", ") + std::string(c.name);
  }
  throw ValidationError("unknown constant '" + std::string(name) + "'; valid names: " + valid);
}

TrialStats summarize(const std::vector<double>& values) {
  TrialStats stats;
  stats.trials = values.size();
  if (values.empty()) throw ValidationError("no trials to summarize");
  double sum = 0;
  for (double v : values) sum += v;
  stats.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double squares = 0;
    for (double v : values) squares += (v - stats.mean) * (v - stats.mean);
    stats.sample_std = std::sqrt(squares / static_cast<double>(values.size() - 1));
    stats.std_err = stats.sample_std / std::sqrt(static_cast<double>(values.size()));
    stats.dispersion_defined = true;
  }
  stats.ci95 = {stats.mean - 1.96 * stats.std_err, stats.mean + 1.96 * stats.std_err};
  return stats;
}

namespace {

std::vector<std::size_t> with_prefix(const SwitchFamily& family, std::string_view prefix) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < family.size(); ++s) {
    if (family[s].id.starts_with(prefix)) out.push_back(s);
  }
  return out;
}

}  // namespace

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> scramble_groups(
    const Board& board, const SwitchFamily& family, const std::optional<SwitchKind>& kind) {
  if (!kind) {
    const CoverageReport report = coverage_check(board, family);
    if (!report.disjoint_groups) throw ValidationError("switch family has no disjoint two-group split");
    return {report.disjoint_groups->second, report.disjoint_groups->first};
  }
  switch (*kind) {
    case SwitchKind::rows_cols:
    case SwitchKind::restricted:
      return {with_prefix(family, "col:"), with_prefix(family, "row:")};
    case SwitchKind::slanted_plus_rows:
      return {with_prefix(family, "row:"), with_prefix(family, "slant:")};
    case SwitchKind::diag_plus_cols:
      return {with_prefix(family, "col:"), with_prefix(family, "diag:")};
    case SwitchKind::cube_lines:
      return {with_prefix(family, "ljk:"), with_prefix(family, "lik:")};
  }
  return {};
}

TrialStrategy make_strategy(std::string_view name, const BoardSpec& board_spec, const SwitchSpec& switch_spec) {
  Board board = make_board(board_spec);
  SwitchFamily family = make_switches(board, switch_spec);
  std::vector<std::size_t> scramble;
  std::vector<std::size_t> greedy;
  StrategyKind kind;
  if (name == "scramble-greedy") {
    kind = StrategyKind::scramble_greedy;
    std::tie(scramble, greedy) = scramble_groups(board, family, switch_spec.kind);
  } else if (name == "hyperbola") {
    if (board_spec.kind != BoardKind::hyperbola || switch_spec.kind != SwitchKind::rows_cols) {
      throw ValidationError("the hyperbola strategy needs a hyperbola board with rows_cols switches");
    }
    kind = StrategyKind::hyperbola;
  } else if (name == "local-search") {
    kind = StrategyKind::local_search;
  } else {
    throw ValidationError("unknown strategy '" + std::string(name) +
                          "' (expected scramble-greedy, hyperbola or local-search)");
  }
  return TrialStrategy{std::string(name), kind,          board_spec,        switch_spec,
                       std::move(board),  std::move(family), std::move(scramble), std::move(greedy),
                       std::nullopt};
}

std::int64_t run_trial(const TrialStrategy& strategy, std::uint64_t seed, std::uint64_t trial) {
  const CounterRng rng = CounterRng(seed).derive(trial);
  const Configuration config =
      strategy.fixed_config ? *strategy.fixed_config : random_configuration(strategy.board.area(), rng.derive(1));
  switch (strategy.kind) {
    case StrategyKind::scramble_greedy:
      return scramble_greedy(strategy.board, strategy.family, config, strategy.scramble_group,
                             strategy.greedy_group, rng.derive(2).key())
          .value;
    case StrategyKind::hyperbola:
      return hyperbola_solve(strategy.board_spec.n, config).value;
    case StrategyKind::local_search:
      return local_search(strategy.board, strategy.family, config, Assignment::identity(strategy.family.size()))
          .value;
  }
  return 0;
}

TrialStats run_trials(const TrialStrategy& strategy, std::uint64_t trials, std::uint64_t seed, int jobs) {
  if (trials < 1) throw ValidationError("at least one trial is required");
  std::vector<double> values(trials);
  jobs = detail::resolve_jobs(jobs);
  const std::size_t chunks = jobs <= 1 ? 1 : static_cast<std::size_t>(std::min<std::uint64_t>(trials, jobs * 4ULL));
  detail::parallel_chunks(trials, chunks, jobs, [&](std::size_t, std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t t = lo; t < hi; ++t) values[t] = static_cast<double>(run_trial(strategy, seed, t));
  });
  return summarize(values);
}

std::vector<double> empirical_tail(int n, const std::vector<double>& lambdas, std::uint64_t samples,
                                   std::uint64_t seed) {
  if (n < 1) throw ValidationError("n must be at least 1");
  if (samples < 1) throw ValidationError("at least one sample is required");
  const CounterRng rng(seed);
  std::vector<std::uint64_t> hits(lambdas.size(), 0);
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  for (std::uint64_t k = 0; k < samples; ++k) {
    const CounterRng draw = rng.derive(k);
    int negatives = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t bits = draw.word(w);
      const std::size_t used = std::min<std::size_t>(64, static_cast<std::size_t>(n) - w * 64);
      if (used < 64) bits &= (std::uint64_t{1} << used) - 1;
      negatives += std::popcount(bits);
    }
    const double sum = n - 2.0 * negatives;
    for (std::size_t l = 0; l < lambdas.size(); ++l) {
      if (sum > lambdas[l]) ++hits[l];
    }
  }
  std::vector<double> freq(lambdas.size());
  for (std::size_t l = 0; l < lambdas.size(); ++l) {
    freq[l] = static_cast<double>(hits[l]) / static_cast<double>(samples);
  }
  return freq;
}

}  // namespace gbk
