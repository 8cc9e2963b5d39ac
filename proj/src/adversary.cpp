#include "gbk/adversary.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "gbk/gallery.hpp"
#include "gbk/rng.hpp"
#include "parallel.hpp"

namespace gbk {

namespace {

// Single-threaded inner maximum with reusable scratch, for scanning many
// configurations. Uses the disjoint split when the family has one.
class InnerMax {
 public:
  InnerMax(const Board& board, const SwitchFamily& family, int cap) : family_(&family) {
    const CoverageReport report = coverage_check(board, family);
    if (report.disjoint_groups) {
      const auto& [first, second] = *report.disjoint_groups;
      const bool first_smaller = first.size() <= second.size();
      enumerated_ = first_smaller ? first : second;
      const auto& greedy = first_smaller ? second : first;
      greedy_count_ = greedy.size();
      greedy_of_.assign(board.area(), kNone);
      for (std::size_t g = 0; g < greedy.size(); ++g) {
        for (std::size_t c : family[greedy[g]].cells) greedy_of_[c] = g;
      }
    } else {
      enumerated_.resize(family.size());
      for (std::size_t s = 0; s < family.size(); ++s) enumerated_[s] = s;
      greedy_of_.assign(board.area(), kNone);
    }
    if (static_cast<int>(enumerated_.size()) > cap || enumerated_.size() > 62) {
      throw BudgetError("inner maximisation needs 2^" + std::to_string(enumerated_.size()) +
                            " assignments per configuration; cap is " + std::to_string(cap) + " switches",
                        enumerated_.size() >= 64 ? std::numeric_limits<std::uint64_t>::max()
                                                 : std::uint64_t{1} << enumerated_.size(),
                        static_cast<std::uint64_t>(cap));
    }
    eff_.resize(board.area());
    sums_.resize(greedy_count_);
  }

  // Maximum over assignments, or any value >= stop_at once one is found.
  std::int64_t value(std::span<const std::int8_t> base, std::int64_t stop_at) {
    std::copy(base.begin(), base.end(), eff_.begin());
    std::fill(sums_.begin(), sums_.end(), 0);
    std::int64_t fixed = 0;
    for (std::size_t c = 0; c < eff_.size(); ++c) {
      if (greedy_of_[c] == kNone) {
        fixed += eff_[c];
      } else {
        sums_[greedy_of_[c]] += eff_[c];
      }
    }
    std::int64_t current = fixed;
    for (std::int64_t r : sums_) current += r >= 0 ? r : -r;
    std::int64_t best = current;
    const std::size_t width = enumerated_.size();
    const std::uint64_t total = std::uint64_t{1} << width;
    for (std::uint64_t i = 1; i < total && best < stop_at; ++i) {
      const auto bit = static_cast<unsigned>(std::countr_zero(i));
      for (std::size_t c : (*family_)[enumerated_[bit]].cells) {
        const std::int64_t delta = -2 * eff_[c];
        eff_[c] = static_cast<std::int8_t>(-eff_[c]);
        const std::size_t g = greedy_of_[c];
        if (g == kNone) {
          current += delta;
        } else {
          std::int64_t& r = sums_[g];
          current -= r >= 0 ? r : -r;
          r += delta;
          current += r >= 0 ? r : -r;
        }
      }
      best = std::max(best, current);
    }
    return best;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  const SwitchFamily* family_;
  std::vector<std::size_t> enumerated_;
  std::size_t greedy_count_ = 0;
  std::vector<std::size_t> greedy_of_;
  std::vector<std::int8_t> eff_;
  std::vector<std::int64_t> sums_;
};

struct Candidate {
  std::int64_t value = std::numeric_limits<std::int64_t>::max();
  std::uint64_t mask = 0;
  bool valid = false;

  void offer(std::int64_t v, std::uint64_t m) {
    if (!valid || v < value || (v == value && m < mask)) {
      value = v;
      mask = m;
      valid = true;
    }
  }
};

Configuration square_config(int n, auto&& sign_at) {
  Configuration config(static_cast<std::size_t>(n) * n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      config.signs.set(static_cast<std::size_t>(i - 1) * n + (j - 1), sign_at(i, j));
    }
  }
  return config;
}

}  // namespace

bool supports_canonical_form(const Board& board, const SwitchFamily& family) {
  if (board.dim() != 2) return false;
  std::map<int, std::vector<std::size_t>> rows;
  std::map<int, std::vector<std::size_t>> cols;
  for (std::size_t c = 0; c < board.area(); ++c) {
    rows[board.cell(c).row()].push_back(c);
    cols[board.cell(c).col()].push_back(c);
  }
  if (board.area() != rows.size() * cols.size()) return false;
  std::set<std::vector<std::size_t>> lines;
  for (const Switch& sw : family.switches()) lines.insert(sw.cells);
  for (const auto& [i, cells] : rows) {
    if (!lines.contains(cells)) return false;
  }
  for (const auto& [j, cells] : cols) {
    if (!lines.contains(cells)) return false;
  }
  return true;
}

MinimaxResult minimax(const Board& board, const SwitchFamily& family, const MinimaxOptions& options) {
  if (family.area() != board.area()) throw ValidationError("switch family was built for a different board");
  const bool canonical = options.canonicalize && supports_canonical_form(board, family);

  std::vector<std::size_t> free_cells;
  const int first_row = board.cell(0).row();
  const int first_col = std::min_element(board.cells().begin(), board.cells().end(), [](const Cell& a, const Cell& b) {
                          return a.col() < b.col();
                        })->col();
  for (std::size_t c = 0; c < board.area(); ++c) {
    if (canonical && (board.cell(c).row() == first_row || board.cell(c).col() == first_col)) continue;
    free_cells.push_back(c);
  }
  const std::size_t width = free_cells.size();
  const std::uint64_t required =
      width >= 64 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{1} << width;
  if (width > 62 || required > options.config_cap) {
    throw BudgetError("minimax needs " + (width >= 64 ? "2^" + std::to_string(width) : std::to_string(required)) +
                          " configuration scans; cap is " + std::to_string(options.config_cap),
                      required, options.config_cap);
  }
  // Touch the inner solver once up front so budget errors surface before any scan.
  InnerMax probe(board, family, options.solver.cap);

  const int jobs = detail::resolve_jobs(options.solver.jobs);
  const std::size_t chunks =
      jobs <= 1 || required < 64 ? 1 : static_cast<std::size_t>(std::min<std::uint64_t>(required / 16, jobs * 8ULL));
  std::vector<Candidate> best(chunks);
  // Free cell p carries bit (width-1-p), so ascending masks are ascending
  // lexicographic configurations.
  detail::parallel_chunks(required, chunks, jobs, [&](std::size_t k, std::uint64_t lo, std::uint64_t hi) {
    InnerMax inner(board, family, options.solver.cap);
    std::vector<std::int8_t> base(board.area(), 1);
    Candidate local;
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      for (std::size_t p = 0; p < width; ++p) {
        base[free_cells[p]] = ((mask >> (width - 1 - p)) & 1u) ? -1 : 1;
      }
      const std::int64_t stop_at = local.valid ? local.value : std::numeric_limits<std::int64_t>::max();
      const std::int64_t v = inner.value(base, stop_at);
      if (v < stop_at) local.offer(v, mask);
    }
    best[k] = local;
  });

  Candidate overall;
  for (const Candidate& c : best) {
    if (c.valid) overall.offer(c.value, c.mask);
  }
  MinimaxResult result;
  result.value = overall.value;
  result.witness_config = Configuration(board.area());
  for (std::size_t p = 0; p < width; ++p) {
    if ((overall.mask >> (width - 1 - p)) & 1u) result.witness_config.signs.negate(free_cells[p]);
  }
  result.configs_scanned = required;
  result.canonical = canonical;
  return result;
}

HardConfigOutcome sample_hard_config(const Board& board, const SwitchFamily& family, double lambda,
                                     std::uint64_t max_tries, std::uint64_t rng_seed,
                                     const SolverOptions& options) {
  const CounterRng rng(rng_seed);
  HardConfigOutcome outcome;
  bool have_best = false;
  for (std::uint64_t t = 0; t < max_tries; ++t) {
    Configuration config = random_configuration(board.area(), rng.derive(t));
    const std::int64_t value = solve_exact(board, family, config, options).value;
    if (!have_best || value < outcome.best.certified_max) {
      outcome.best.config = std::move(config);
      outcome.best.certified_max = value;
      have_best = true;
    }
    outcome.best.tries = t + 1;
    if (static_cast<double>(value) <= lambda) {
      outcome.found = true;
      break;
    }
  }
  outcome.best.lambda = lambda;
  return outcome;
}

Configuration build_remove_ii(int n, int a, int b, std::uint64_t rng_seed) {
  if (n < 1) throw ValidationError("n must be at least 1");
  if (a < 0 || a > n || b < 0 || b > n) throw ValidationError("remove-ii needs 0 <= a, b <= n");
  const CounterRng rng(rng_seed);
  return square_config(n, [&](int i, int j) {
    if (i > b && j > a) return -1;
    return rng.sign(static_cast<std::uint64_t>(i - 1) * n + (j - 1));
  });
}

Configuration build_remove_ii_delta(int n, double delta, std::uint64_t rng_seed) {
  if (!(delta > 0 && delta < 1)) throw ValidationError("delta must lie in (0, 1)");
  const int side = static_cast<int>(std::lround((1.0 - delta) * n));
  return build_remove_ii(n, side, side, rng_seed);
}

Configuration build_remove_iii(int n, int a, int b) {
  if (a + b != n || a < b || b < 1) throw ValidationError("remove-iii needs a + b = n and a >= b >= 1");
  return square_config(n, [&](int i, int j) {
    const bool chessboard = (i > b && j <= a) || (i <= b && j > a);
    if (!chessboard) return -1;
    return (i + j) % 2 == 0 ? 1 : -1;
  });
}

Configuration zero_sum_columns(int n) {
  if (n < 2 || n % 2 != 0) throw ValidationError("zero-sum columns need an even n >= 2");
  return square_config(n, [](int i, int j) { return (i + j) % 2 == 0 ? 1 : -1; });
}

}  // namespace gbk
