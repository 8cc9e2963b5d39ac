#include "gbk/core.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>

namespace gbk {

std::string to_string(const Cell& cell) {
  std::string s = "(" + std::to_string(cell.coords[0]) + "," + std::to_string(cell.coords[1]);
  if (cell.dim == 3) s += "," + std::to_string(cell.coords[2]);
  return s + ")";
}

Board::Board(std::vector<Cell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw ValidationError("board must contain at least one cell");
  dim_ = cells_.front().dim;
  if (dim_ != 2 && dim_ != 3) throw UnsupportedDimension("board dimension must be 2 or 3");
  for (const Cell& c : cells_) {
    if (c.dim != dim_) throw ValidationError("cell " + to_string(c) + " has a different dimension");
    for (int d = 0; d < c.dim; ++d) {
      if (c.coords[d] < 1) throw ValidationError("cell " + to_string(c) + " has a coordinate below 1");
    }
  }
  std::sort(cells_.begin(), cells_.end());
  auto dup = std::adjacent_find(cells_.begin(), cells_.end());
  if (dup != cells_.end()) throw ValidationError("duplicate cell " + to_string(*dup));
}

std::optional<std::size_t> Board::index_of(const Cell& cell) const {
  auto it = std::lower_bound(cells_.begin(), cells_.end(), cell);
  if (it == cells_.end() || *it != cell) return std::nullopt;
  return static_cast<std::size_t>(it - cells_.begin());
}

std::size_t Board::require_index(const Cell& cell) const {
  if (auto idx = index_of(cell)) return *idx;
  throw ValidationError("cell " + to_string(cell) + " is not on the board");
}

SwitchFamily::SwitchFamily(const Board& board,
                           std::vector<std::pair<std::string, std::vector<Cell>>> switches)
    : area_(board.area()) {
  switches_.reserve(switches.size());
  for (auto& [id, cells] : switches) {
    Switch sw{std::move(id), {}};
    sw.cells.reserve(cells.size());
    for (const Cell& c : cells) sw.cells.push_back(board.require_index(c));
    switches_.push_back(std::move(sw));
  }
  index();
}

SwitchFamily::SwitchFamily(std::size_t area, std::vector<Switch> switches)
    : area_(area), switches_(std::move(switches)) {
  index();
}

void SwitchFamily::index() {
  for (Switch& sw : switches_) {
    std::sort(sw.cells.begin(), sw.cells.end());
    if (std::adjacent_find(sw.cells.begin(), sw.cells.end()) != sw.cells.end()) {
      throw ValidationError("switch '" + sw.id + "' lists a cell twice");
    }
    if (!sw.cells.empty() && sw.cells.back() >= area_) {
      throw ValidationError("switch '" + sw.id + "' references a cell outside the board");
    }
  }
  by_id_.resize(switches_.size());
  for (std::size_t s = 0; s < switches_.size(); ++s) by_id_[s] = s;
  std::sort(by_id_.begin(), by_id_.end(),
            [&](std::size_t a, std::size_t b) { return switches_[a].id < switches_[b].id; });
  for (std::size_t k = 1; k < by_id_.size(); ++k) {
    if (switches_[by_id_[k - 1]].id == switches_[by_id_[k]].id) {
      throw ValidationError("duplicate switch id '" + switches_[by_id_[k]].id + "'");
    }
  }

  cover_offsets_.assign(area_ + 1, 0);
  for (const Switch& sw : switches_) {
    for (std::size_t c : sw.cells) ++cover_offsets_[c + 1];
  }
  for (std::size_t c = 0; c < area_; ++c) cover_offsets_[c + 1] += cover_offsets_[c];
  cover_.resize(cover_offsets_[area_]);
  std::vector<std::size_t> fill(cover_offsets_.begin(), cover_offsets_.end() - 1);
  for (std::size_t s = 0; s < switches_.size(); ++s) {
    for (std::size_t c : switches_[s].cells) cover_[fill[c]++] = s;
  }
}

std::optional<std::size_t> SwitchFamily::index_of(const std::string& id) const {
  auto it = std::lower_bound(by_id_.begin(), by_id_.end(), id,
                             [&](std::size_t s, const std::string& key) { return switches_[s].id < key; });
  if (it == by_id_.end() || switches_[*it].id != id) return std::nullopt;
  return *it;
}

std::size_t SwitchFamily::require_index(const std::string& id) const {
  if (auto s = index_of(id)) return *s;
  throw ValidationError("unknown switch '" + id + "'");
}

std::vector<std::size_t> SwitchFamily::require_indices(std::span<const std::string> ids) const {
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(require_index(id));
  return out;
}

void SignVector::set(std::size_t i, int sign) {
  if (sign != 1 && sign != -1) throw ValidationError("sign must be +1 or -1");
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (sign < 0) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

std::size_t SignVector::count_negative() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::strong_ordering operator<=>(const SignVector& a, const SignVector& b) {
  const std::size_t words = std::min(a.words_.size(), b.words_.size());
  for (std::size_t w = 0; w < words; ++w) {
    const std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (diff == 0) continue;
    const std::uint64_t lowest = diff & (~diff + 1);
    return (a.words_[w] & lowest) ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return a.size_ <=> b.size_;
}

Configuration Configuration::all(std::size_t area, int sign) {
  Configuration c(area);
  if (sign < 0) {
    for (std::size_t i = 0; i < area; ++i) c.signs.negate(i);
  }
  return c;
}

Configuration Configuration::from_values(std::span<const int> values) {
  Configuration c(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) c.signs.set(i, values[i]);
  return c;
}

Assignment Assignment::from_values(std::span<const int> values) {
  Assignment a(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) a.signs.set(i, values[i]);
  return a;
}

namespace {

void check_sizes(const Board& board, const SwitchFamily& family, const Configuration& config,
                 const Assignment& assignment) {
  if (family.area() != board.area()) throw ValidationError("switch family was built for a different board");
  if (config.size() != board.area()) {
    throw ValidationError("configuration has " + std::to_string(config.size()) + " cells, board has " +
                          std::to_string(board.area()));
  }
  if (assignment.size() != family.size()) {
    throw ValidationError("assignment has " + std::to_string(assignment.size()) + " switches, family has " +
                          std::to_string(family.size()));
  }
}

}  // namespace

std::int64_t evaluate(const Board& board, const SwitchFamily& family, const Configuration& config,
                      const Assignment& assignment) {
  check_sizes(board, family, config, assignment);
  std::int64_t total = 0;
  for (std::size_t c = 0; c < board.area(); ++c) {
    int value = config[c];
    for (std::size_t s : family.covering(c)) value *= assignment[s];
    total += value;
  }
  return total;
}

Assignment flip(const SwitchFamily& family, const Assignment& assignment, const std::string& switch_id) {
  if (assignment.size() != family.size()) throw ValidationError("assignment does not match the switch family");
  Assignment out = assignment;
  out.signs.negate(family.require_index(switch_id));
  return out;
}

Configuration apply_assignment(const SwitchFamily& family, const Configuration& config,
                               const Assignment& assignment) {
  if (assignment.size() != family.size()) throw ValidationError("assignment does not match the switch family");
  Configuration out = config;
  for (std::size_t s = 0; s < family.size(); ++s) {
    if (assignment[s] > 0) continue;
    for (std::size_t c : family[s].cells) out.signs.negate(c);
  }
  return out;
}

Projections projections(const Board& board) {
  if (board.dim() != 2) throw UnsupportedDimension("projections are defined for planar boards only");
  std::set<int> rows;
  std::set<int> cols;
  for (const Cell& c : board.cells()) {
    rows.insert(c.row());
    cols.insert(c.col());
  }
  return {static_cast<std::int64_t>(rows.size()), static_cast<std::int64_t>(cols.size()),
          static_cast<std::int64_t>(board.area())};
}

bool is_dense(const Board& board, double c) {
  if (!(c > 0)) throw ValidationError("density constant must be positive");
  const Projections p = projections(board);
  const double span = static_cast<double>(p.u + p.v);
  return static_cast<double>(p.area) >= c * span * span;
}

bool pairwise_disjoint(const SwitchFamily& family, std::span<const std::size_t> group) {
  std::vector<bool> seen(family.area(), false);
  for (std::size_t s : group) {
    for (std::size_t c : family[s].cells) {
      if (seen[c]) return false;
      seen[c] = true;
    }
  }
  return true;
}

CoverageReport coverage_check(const Board& board, const SwitchFamily& family) {
  CoverageReport report;
  for (std::size_t c = 0; c < board.area(); ++c) {
    report.max_cover = std::max(report.max_cover, static_cast<int>(family.covering(c).size()));
  }
  if (report.max_cover > 2) return report;

  // 2-colour the conflict graph (switches adjacent when they share a cell),
  // seeding each component with colour 0 in switch order.
  std::vector<int> colour(family.size(), -1);
  for (std::size_t root = 0; root < family.size(); ++root) {
    if (colour[root] >= 0) continue;
    colour[root] = 0;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t s = queue.front();
      queue.pop_front();
      for (std::size_t c : family[s].cells) {
        for (std::size_t t : family.covering(c)) {
          if (t == s) continue;
          if (colour[t] < 0) {
            colour[t] = 1 - colour[s];
            queue.push_back(t);
          } else if (colour[t] == colour[s]) {
            return report;
          }
        }
      }
    }
  }
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  for (std::size_t s = 0; s < family.size(); ++s) (colour[s] == 0 ? first : second).push_back(s);
  if (pairwise_disjoint(family, first) && pairwise_disjoint(family, second)) {
    report.disjoint_groups.emplace(std::move(first), std::move(second));
  }
  return report;
}

std::pair<Board, SwitchFamily> restrict_board(const Board& board, const SwitchFamily& family,
                                              const std::vector<bool>& keep) {
  if (keep.size() != board.area()) throw ValidationError("keep mask does not match the board");
  std::vector<Cell> cells;
  std::vector<std::size_t> remap(board.area(), 0);
  for (std::size_t c = 0; c < board.area(); ++c) {
    if (!keep[c]) continue;
    remap[c] = cells.size();
    cells.push_back(board.cell(c));
  }
  Board sub(std::move(cells));
  std::vector<Switch> switches;
  switches.reserve(family.size());
  for (const Switch& sw : family.switches()) {
    Switch clipped{sw.id, {}};
    for (std::size_t c : sw.cells) {
      if (keep[c]) clipped.cells.push_back(remap[c]);
    }
    switches.push_back(std::move(clipped));
  }
  SwitchFamily sub_family(sub.area(), std::move(switches));
  return {std::move(sub), std::move(sub_family)};
}

Playfield::Playfield(const SwitchFamily& family, const Configuration& config, Assignment assignment)
    : family_(&family), assignment_(std::move(assignment)), eff_(config.size()) {
  if (config.size() != family.area()) throw ValidationError("configuration does not match the board");
  if (assignment_.size() != family.size()) throw ValidationError("assignment does not match the switch family");
  for (std::size_t c = 0; c < eff_.size(); ++c) {
    int value = config[c];
    for (std::size_t s : family.covering(c)) value *= assignment_[s];
    eff_[c] = static_cast<std::int8_t>(value);
    score_ += value;
  }
}

std::int64_t Playfield::gain(std::size_t s) const {
  std::int64_t covered = 0;
  for (std::size_t c : (*family_)[s].cells) covered += eff_[c];
  return -2 * covered;
}

void Playfield::flip(std::size_t s) {
  for (std::size_t c : (*family_)[s].cells) {
    score_ -= 2 * eff_[c];
    eff_[c] = static_cast<std::int8_t>(-eff_[c]);
  }
  assignment_.signs.negate(s);
}

}  // namespace gbk
