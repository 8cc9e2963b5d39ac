#include "gbk/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <string>

#include "gbk/gallery.hpp"
#include "gbk/rng.hpp"
#include "parallel.hpp"

namespace gbk {

namespace {

constexpr int kMaxEnumerated = 62;

struct Best {
  std::int64_t value = std::numeric_limits<std::int64_t>::min();
  std::uint64_t key = 0;

  void offer(std::int64_t v, std::uint64_t k) {
    if (v > value || (v == value && k < key)) {
      value = v;
      key = k;
    }
  }
};

std::uint64_t saturating_pow2(std::size_t bits) {
  return bits >= 64 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{1} << bits;
}

void check_budget(std::size_t enumerated, int cap) {
  if (static_cast<int>(enumerated) > cap || enumerated > kMaxEnumerated) {
    throw BudgetError("exact enumeration over " + std::to_string(enumerated) + " switches needs 2^" +
                          std::to_string(enumerated) + " assignments; cap is " + std::to_string(cap) +
                          " switches (use the split solver, a heuristic, or raise the cap)",
                      saturating_pow2(enumerated), static_cast<std::uint64_t>(cap));
  }
}

void check_inputs(const Board& board, const SwitchFamily& family, const Configuration& config) {
  if (family.area() != board.area()) throw ValidationError("switch family was built for a different board");
  if (config.size() != board.area()) throw ValidationError("configuration does not match the board");
}

std::size_t chunk_count(std::uint64_t total, int jobs) {
  if (jobs <= 1 || total < (1u << 12)) return 1;
  return static_cast<std::size_t>(std::min<std::uint64_t>(total >> 10, static_cast<std::uint64_t>(jobs) * 8));
}

// Validates the two groups: disjoint, in range, greedy switches cell-disjoint.
void check_groups(const SwitchFamily& family, std::span<const std::size_t> first,
                  std::span<const std::size_t> greedy, bool must_cover_all) {
  std::vector<int> seen(family.size(), 0);
  for (auto group : {first, greedy}) {
    for (std::size_t s : group) {
      if (s >= family.size()) throw ValidationError("switch index out of range in group");
      if (seen[s]++) throw ValidationError("switch '" + family[s].id + "' appears in both groups or twice");
    }
  }
  if (must_cover_all) {
    for (std::size_t s = 0; s < family.size(); ++s) {
      if (!seen[s]) throw ValidationError("switch '" + family[s].id + "' is in neither group");
    }
  }
  if (!pairwise_disjoint(family, greedy)) throw ValidationError("invalid split: greedy switches share a cell");
}

std::vector<std::int8_t> base_values(const Configuration& config) {
  std::vector<std::int8_t> eff(config.size());
  for (std::size_t c = 0; c < eff.size(); ++c) eff[c] = static_cast<std::int8_t>(config[c]);
  return eff;
}

// Value of the greedy phase given effective values with every greedy switch
// at +1, writing the chosen greedy signs into `out`.
std::int64_t complete_greedy(const SwitchFamily& family, std::span<const std::int8_t> eff,
                             std::span<const std::size_t> greedy, Assignment& out) {
  std::vector<bool> in_greedy(family.area(), false);
  std::int64_t total = 0;
  for (std::size_t g : greedy) {
    std::int64_t sum = 0;
    for (std::size_t c : family[g].cells) {
      sum += eff[c];
      in_greedy[c] = true;
    }
    out.signs.set(g, sum >= 0 ? 1 : -1);
    total += sum >= 0 ? sum : -sum;
  }
  for (std::size_t c = 0; c < eff.size(); ++c) {
    if (!in_greedy[c]) total += eff[c];
  }
  return total;
}

}  // namespace

int default_jobs() {
  if (const char* env = std::getenv("GBK_JOBS")) {
    const int jobs = std::atoi(env);
    if (jobs > 0) return jobs;
  }
  return detail::resolve_jobs(0);
}

SolveResult exact_max(const Board& board, const SwitchFamily& family, const Configuration& config,
                      const SolverOptions& options) {
  check_inputs(board, family, config);
  const std::size_t switches = family.size();
  check_budget(switches, options.cap);
  const int jobs = detail::resolve_jobs(options.jobs);
  const std::uint64_t total = std::uint64_t{1} << switches;
  const std::size_t chunks = chunk_count(total, jobs);
  const std::vector<std::int8_t> base = base_values(config);
  // Bit b of a Gray key is switch (S-1-b), so numeric order on keys is
  // lexicographic order on assignments.
  auto switch_of = [switches](unsigned bit) { return switches - 1 - bit; };

  std::vector<Best> best(chunks);
  detail::parallel_chunks(total, chunks, jobs, [&](std::size_t k, std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi) return;
    std::vector<std::int8_t> eff = base;
    std::uint64_t key = lo ^ (lo >> 1);
    for (unsigned b = 0; b < switches; ++b) {
      if (!((key >> b) & 1u)) continue;
      for (std::size_t c : family[switch_of(b)].cells) eff[c] = static_cast<std::int8_t>(-eff[c]);
    }
    std::int64_t value = 0;
    for (std::int8_t e : eff) value += e;
    Best local;
    local.offer(value, key);
    for (std::uint64_t i = lo + 1; i < hi; ++i) {
      const auto bit = static_cast<unsigned>(std::countr_zero(i));
      for (std::size_t c : family[switch_of(bit)].cells) {
        value -= 2 * eff[c];
        eff[c] = static_cast<std::int8_t>(-eff[c]);
      }
      key ^= std::uint64_t{1} << bit;
      local.offer(value, key);
    }
    best[k] = local;
  });

  Best overall;
  for (const Best& b : best) overall.offer(b.value, b.key);
  SolveResult result;
  result.value = overall.value;
  result.assignment = Assignment::identity(switches);
  for (unsigned b = 0; b < switches; ++b) {
    if ((overall.key >> b) & 1u) result.assignment.signs.negate(switch_of(b));
  }
  result.nodes_explored = total;
  return result;
}

SolveResult exact_max_split(const Board& board, const SwitchFamily& family, const Configuration& config,
                            std::span<const std::size_t> enum_group, std::span<const std::size_t> greedy_group,
                            const SolverOptions& options) {
  check_inputs(board, family, config);
  check_groups(family, enum_group, greedy_group, true);
  std::vector<std::size_t> enumerated(enum_group.begin(), enum_group.end());
  std::sort(enumerated.begin(), enumerated.end());
  const std::size_t width = enumerated.size();
  check_budget(width, options.cap);

  const std::size_t area = board.area();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> greedy_of(area, kNone);
  for (std::size_t g = 0; g < greedy_group.size(); ++g) {
    for (std::size_t c : family[greedy_group[g]].cells) greedy_of[c] = g;
  }
  const std::vector<std::int8_t> base = base_values(config);
  const int jobs = detail::resolve_jobs(options.jobs);
  const std::uint64_t total = std::uint64_t{1} << width;
  const std::size_t chunks = chunk_count(total, jobs);
  auto switch_of = [&](unsigned bit) { return enumerated[width - 1 - bit]; };

  std::vector<Best> best(chunks);
  detail::parallel_chunks(total, chunks, jobs, [&](std::size_t k, std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi) return;
    std::vector<std::int8_t> eff = base;
    std::uint64_t key = lo ^ (lo >> 1);
    for (unsigned b = 0; b < width; ++b) {
      if (!((key >> b) & 1u)) continue;
      for (std::size_t c : family[switch_of(b)].cells) eff[c] = static_cast<std::int8_t>(-eff[c]);
    }
    std::vector<std::int64_t> row_sum(greedy_group.size(), 0);
    std::int64_t fixed = 0;
    for (std::size_t c = 0; c < area; ++c) {
      if (greedy_of[c] == kNone) {
        fixed += eff[c];
      } else {
        row_sum[greedy_of[c]] += eff[c];
      }
    }
    std::int64_t value = fixed;
    for (std::int64_t r : row_sum) value += r >= 0 ? r : -r;
    Best local;
    local.offer(value, key);
    for (std::uint64_t i = lo + 1; i < hi; ++i) {
      const auto bit = static_cast<unsigned>(std::countr_zero(i));
      for (std::size_t c : family[switch_of(bit)].cells) {
        const std::int64_t delta = -2 * eff[c];
        eff[c] = static_cast<std::int8_t>(-eff[c]);
        const std::size_t g = greedy_of[c];
        if (g == kNone) {
          value += delta;
        } else {
          std::int64_t& r = row_sum[g];
          value -= r >= 0 ? r : -r;
          r += delta;
          value += r >= 0 ? r : -r;
        }
      }
      key ^= std::uint64_t{1} << bit;
      local.offer(value, key);
    }
    best[k] = local;
  });

  Best overall;
  for (const Best& b : best) overall.offer(b.value, b.key);

  SolveResult result;
  result.assignment = Assignment::identity(family.size());
  std::vector<std::int8_t> eff = base;
  for (unsigned b = 0; b < width; ++b) {
    if (!((overall.key >> b) & 1u)) continue;
    result.assignment.signs.negate(switch_of(b));
    for (std::size_t c : family[switch_of(b)].cells) eff[c] = static_cast<std::int8_t>(-eff[c]);
  }
  result.value = complete_greedy(family, eff, greedy_group, result.assignment);
  result.nodes_explored = total;
  return result;
}

SolveResult solve_exact(const Board& board, const SwitchFamily& family, const Configuration& config,
                        const SolverOptions& options) {
  const CoverageReport report = coverage_check(board, family);
  if (report.disjoint_groups) {
    const auto& [first, second] = *report.disjoint_groups;
    const bool first_smaller = first.size() <= second.size();
    const auto& enumerated = first_smaller ? first : second;
    const auto& greedy = first_smaller ? second : first;
    if (static_cast<int>(enumerated.size()) <= options.cap) {
      return exact_max_split(board, family, config, enumerated, greedy, options);
    }
    check_budget(enumerated.size(), options.cap);
  }
  return exact_max(board, family, config, options);
}

SolveResult greedy_complete(const Board& board, const SwitchFamily& family, const Configuration& config,
                            const Assignment& fixed, std::span<const std::size_t> scramble_group,
                            std::span<const std::size_t> greedy_group) {
  check_inputs(board, family, config);
  if (fixed.size() != family.size()) throw ValidationError("fixed assignment does not match the switch family");
  check_groups(family, scramble_group, greedy_group, false);
  SolveResult result;
  result.assignment = Assignment::identity(family.size());
  std::vector<std::int8_t> eff = base_values(config);
  for (std::size_t s : scramble_group) {
    if (fixed[s] > 0) continue;
    result.assignment.signs.negate(s);
    for (std::size_t c : family[s].cells) eff[c] = static_cast<std::int8_t>(-eff[c]);
  }
  result.value = complete_greedy(family, eff, greedy_group, result.assignment);
  result.nodes_explored = 1;
  return result;
}

SolveResult scramble_greedy(const Board& board, const SwitchFamily& family, const Configuration& config,
                            std::span<const std::size_t> scramble_group, std::span<const std::size_t> greedy_group,
                            std::uint64_t rng_seed) {
  const CounterRng rng(rng_seed);
  Assignment fixed = Assignment::identity(family.size());
  for (std::size_t s : scramble_group) {
    if (s < family.size()) fixed.signs.set(s, rng.sign(s));
  }
  return greedy_complete(board, family, config, fixed, scramble_group, greedy_group);
}

std::pair<std::size_t, std::int64_t> best_flip(const SwitchFamily& family, const Playfield& field) {
  if (family.size() == 0) throw ValidationError("family has no switches to flip");
  std::size_t best = 0;
  std::int64_t best_gain = field.gain(0);
  for (std::size_t s = 1; s < family.size(); ++s) {
    const std::int64_t g = field.gain(s);
    if (g > best_gain || (g == best_gain && family[s].id < family[best].id)) {
      best = s;
      best_gain = g;
    }
  }
  return {best, best_gain};
}

SolveResult local_search(const Board& board, const SwitchFamily& family, const Configuration& config,
                         const Assignment& start) {
  check_inputs(board, family, config);
  Playfield field(family, config, start);
  const std::size_t count = family.size();
  std::vector<std::int64_t> gains(count);
  for (std::size_t s = 0; s < count; ++s) gains[s] = field.gain(s);
  std::uint64_t flips = 0;
  while (count > 0) {
    std::size_t best = 0;
    for (std::size_t s = 1; s < count; ++s) {
      if (gains[s] > gains[best] || (gains[s] == gains[best] && family[s].id < family[best].id)) best = s;
    }
    if (gains[best] <= 0) break;
    // Every other switch sharing a cell sees that cell's sign reverse.
    for (std::size_t c : family[best].cells) {
      const int e = field.effective(c);
      for (std::size_t t : family.covering(c)) {
        if (t != best) gains[t] += 4 * e;
      }
    }
    field.flip(best);
    gains[best] = -gains[best];
    ++flips;
  }
  return {field.score(), field.assignment(), flips};
}

SolveResult x_cycle_solve(const Board& board, const Configuration& config) {
  const auto groups = x_cycles(board);
  if (config.size() != board.area()) throw ValidationError("configuration does not match the board");
  const SwitchFamily family = make_switches(board, {SwitchKind::rows_cols});
  Assignment assignment = Assignment::identity(family.size());
  std::uint64_t nodes = 0;
  for (const auto& group : groups) {
    // Lines through the group in family order; at most four of them.
    std::vector<std::size_t> lines;
    for (const Cell& cell : group) {
      lines.push_back(family.require_index(row_id(cell.row())));
      lines.push_back(family.require_index(col_id(cell.col())));
    }
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    const std::size_t width = lines.size();
    std::int64_t best_value = std::numeric_limits<std::int64_t>::min();
    unsigned best_mask = 0;
    for (unsigned mask = 0; mask < (1u << width); ++mask, ++nodes) {
      auto sign_of = [&](std::size_t s) {
        const auto pos = static_cast<std::size_t>(std::find(lines.begin(), lines.end(), s) - lines.begin());
        return ((mask >> (width - 1 - pos)) & 1u) ? -1 : 1;
      };
      std::int64_t value = 0;
      for (const Cell& cell : group) {
        const std::size_t c = board.require_index(cell);
        value += config[c] * sign_of(family.require_index(row_id(cell.row()))) *
                 sign_of(family.require_index(col_id(cell.col())));
      }
      if (value > best_value) {
        best_value = value;
        best_mask = mask;
      }
    }
    for (std::size_t pos = 0; pos < width; ++pos) {
      if ((best_mask >> (width - 1 - pos)) & 1u) assignment.signs.set(lines[pos], -1);
    }
  }
  const std::int64_t value = evaluate(board, family, config, assignment);
  return {value, std::move(assignment), nodes};
}

SolveResult hyperbola_solve(int n, const Configuration& config) {
  const Board board = make_board({BoardKind::hyperbola, n});
  if (config.size() != board.area()) {
    throw ValidationError("configuration does not match hyperbola(" + std::to_string(n) + ")");
  }
  const SwitchFamily family = make_switches(board, {SwitchKind::rows_cols});
  Assignment assignment = Assignment::identity(family.size());
  for (int j = 1; j <= n; ++j) {
    assignment.signs.set(family.require_index(col_id(j)), config[board.require_index(Cell(1, j))]);
  }
  for (int i = 2; i <= n; ++i) {
    std::int64_t sum = 0;
    for (int j = 1; i * j <= n; ++j) {
      sum += config[board.require_index(Cell(i, j))] * assignment[family.require_index(col_id(j))];
    }
    assignment.signs.set(family.require_index(row_id(i)), sum >= 0 ? 1 : -1);
  }
  const std::int64_t value = evaluate(board, family, config, assignment);
  return {value, std::move(assignment), 1};
}

}  // namespace gbk
