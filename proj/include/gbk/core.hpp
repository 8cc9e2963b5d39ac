#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gbk/errors.hpp"

namespace gbk {

// A lattice cell with 1-based coordinates. The first coordinate is the row,
// the second the column, the optional third the layer. Unused trailing
// coordinates are zero.
struct Cell {
  std::array<int, 3> coords{};
  int dim = 2;

  Cell() = default;
  Cell(int i, int j) : coords{i, j, 0}, dim(2) {}
  Cell(int i, int j, int k) : coords{i, j, k}, dim(3) {}

  int row() const noexcept { return coords[0]; }
  int col() const noexcept { return coords[1]; }
  int layer() const noexcept { return coords[2]; }

  friend bool operator==(const Cell&, const Cell&) = default;
  friend std::strong_ordering operator<=>(const Cell& a, const Cell& b) {
    if (auto c = a.dim <=> b.dim; c != 0) return c;
    return a.coords <=> b.coords;
  }
};

std::string to_string(const Cell& cell);

// Finite set of cells, stored in canonical (sorted) order. Cell indices used
// throughout the library refer to this order.
class Board {
 public:
  explicit Board(std::vector<Cell> cells);

  int dim() const noexcept { return dim_; }
  std::size_t area() const noexcept { return cells_.size(); }
  std::span<const Cell> cells() const noexcept { return cells_; }
  const Cell& cell(std::size_t index) const { return cells_[index]; }

  std::optional<std::size_t> index_of(const Cell& cell) const;
  std::size_t require_index(const Cell& cell) const;
  bool contains(const Cell& cell) const { return index_of(cell).has_value(); }

  friend bool operator==(const Board&, const Board&) = default;

 private:
  std::vector<Cell> cells_;
  int dim_ = 2;
};

struct Switch {
  std::string id;
  std::vector<std::size_t> cells;  // sorted indices into the board
};

// Ordered list of named switches over a board, with the inverse
// cell -> covering switches map precomputed.
class SwitchFamily {
 public:
  SwitchFamily(const Board& board, std::vector<std::pair<std::string, std::vector<Cell>>> switches);
  SwitchFamily(std::size_t area, std::vector<Switch> switches);

  std::size_t size() const noexcept { return switches_.size(); }
  std::size_t area() const noexcept { return area_; }
  const Switch& operator[](std::size_t s) const { return switches_[s]; }
  std::span<const Switch> switches() const noexcept { return switches_; }

  std::optional<std::size_t> index_of(const std::string& id) const;
  std::size_t require_index(const std::string& id) const;
  std::vector<std::size_t> require_indices(std::span<const std::string> ids) const;

  // Switches covering a cell, ascending.
  std::span<const std::size_t> covering(std::size_t cell) const {
    return {cover_.data() + cover_offsets_[cell], cover_.data() + cover_offsets_[cell + 1]};
  }

 private:
  void index();

  std::size_t area_ = 0;
  std::vector<Switch> switches_;
  std::vector<std::size_t> by_id_;  // switch indices sorted by id
  std::vector<std::size_t> cover_offsets_;
  std::vector<std::size_t> cover_;
};

// Packed ±1 vector: bit set means -1. Ordered lexicographically by index
// with +1 < -1.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }
  int operator[](std::size_t i) const { return negative(i) ? -1 : 1; }
  bool negative(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, int sign);
  void negate(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }
  std::size_t count_negative() const;

  friend bool operator==(const SignVector&, const SignVector&) = default;
  friend std::strong_ordering operator<=>(const SignVector& a, const SignVector& b);

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Light states a_c, one per board cell in canonical order.
struct Configuration {
  SignVector signs;

  Configuration() = default;
  explicit Configuration(std::size_t area) : signs(area) {}
  static Configuration all(std::size_t area, int sign);
  static Configuration from_values(std::span<const int> values);

  std::size_t size() const noexcept { return signs.size(); }
  int operator[](std::size_t c) const { return signs[c]; }
  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

// Switch signs σ_s, one per switch in family order; +1 means untouched.
struct Assignment {
  SignVector signs;

  Assignment() = default;
  explicit Assignment(std::size_t switches) : signs(switches) {}
  static Assignment identity(std::size_t switches) { return Assignment(switches); }
  static Assignment from_values(std::span<const int> values);

  std::size_t size() const noexcept { return signs.size(); }
  int operator[](std::size_t s) const { return signs[s]; }
  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

// Signed discrepancy: sum over cells of a_c times the product of the signs
// of every switch covering c. Uncovered cells contribute a_c.
std::int64_t evaluate(const Board& board, const SwitchFamily& family, const Configuration& config,
                      const Assignment& assignment);

// Negates one switch.
Assignment flip(const SwitchFamily& family, const Assignment& assignment, const std::string& switch_id);

// The configuration seen after pre-applying an assignment: each cell negated
// once per covering switch with sign -1.
Configuration apply_assignment(const SwitchFamily& family, const Configuration& config,
                               const Assignment& assignment);

struct Projections {
  std::int64_t u = 0;
  std::int64_t v = 0;
  std::int64_t area = 0;
};

Projections projections(const Board& board);

bool is_dense(const Board& board, double c);

struct CoverageReport {
  int max_cover = 0;
  // Two switch groups, each covering every cell at most once, when such a
  // split exists. Indices are ascending within each group.
  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> disjoint_groups;
};

CoverageReport coverage_check(const Board& board, const SwitchFamily& family);

// True when no two switches in the group share a cell.
bool pairwise_disjoint(const SwitchFamily& family, std::span<const std::size_t> group);

// Board restricted to the cells for which keep(cell) holds; switches are
// clipped to the surviving cells and keep their ids.
std::pair<Board, SwitchFamily> restrict_board(const Board& board, const SwitchFamily& family,
                                              const std::vector<bool>& keep);

// Incrementally maintained effective values eff_c = a_c * prod σ_s and
// their sum. Flipping a switch touches only its member cells.
class Playfield {
 public:
  Playfield(const SwitchFamily& family, const Configuration& config, Assignment assignment);
  Playfield(const SwitchFamily& family, const Configuration& config)
      : Playfield(family, config, Assignment::identity(family.size())) {}

  std::int64_t score() const noexcept { return score_; }
  int effective(std::size_t cell) const { return eff_[cell]; }
  std::span<const std::int8_t> effective_values() const noexcept { return eff_; }
  const Assignment& assignment() const noexcept { return assignment_; }

  // Score change if switch s were flipped now.
  std::int64_t gain(std::size_t s) const;
  void flip(std::size_t s);

 private:
  const SwitchFamily* family_;
  Assignment assignment_;
  std::vector<std::int8_t> eff_;
  std::int64_t score_ = 0;
};

}  // namespace gbk
