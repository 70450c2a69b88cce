// Copyright 2026  avdr-score authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace avdr {

/// Row-major integer cost matrix.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0)
      : rows_(rows), cols_(cols), cells_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& at(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
  std::int64_t at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> cells_;
};

struct Assignment {
  /// row_to_col[r] is the column assigned to row r.
  std::vector<std::size_t> row_to_col;
  std::int64_t cost = 0;
};

/// Minimum-cost assignment of every row to a distinct column (Hungarian
/// method with potentials, exact on integers). Requires rows <= cols.
Assignment solve_min_cost(const CostMatrix& cost);

/// Optimal cost only; accepts any shape (the smaller side is matched fully).
std::int64_t min_cost_value(const CostMatrix& cost);

/// Among all minimum-cost assignments returns the lexicographically smallest
/// one: row 0 takes the earliest column that still admits an optimum, then
/// row 1, and so on. `tier(r, c)` reorders the candidates of each row: lower
/// tiers are tried first, index order within a tier. Only the first
/// `lex_rows` rows are fixed this way; the rest take any optimal completion.
/// Requires rows <= cols.
Assignment solve_min_cost_lex(const CostMatrix& cost,
                              const std::function<int(std::size_t, std::size_t)>& tier = nullptr,
                              std::size_t lex_rows = static_cast<std::size_t>(-1));

}  // namespace avdr
