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

#include "avdr/assignment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace avdr {
namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

CostMatrix transpose(const CostMatrix& m) {
  CostMatrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) t.at(c, r) = m.at(r, c);
  }
  return t;
}

CostMatrix submatrix(const CostMatrix& m, const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& cols) {
  CostMatrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) s.at(i, j) = m.at(rows[i], cols[j]);
  }
  return s;
}

}  // namespace

Assignment solve_min_cost(const CostMatrix& a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  if (n > m) throw std::invalid_argument("solve_min_cost: more rows than columns");
  Assignment result;
  if (n == 0) return result;

  // 1-based potentials; p[j] = row matched to column j, 0 = free.
  std::vector<std::int64_t> u(n + 1, 0), v(m + 1, 0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<std::int64_t> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      std::int64_t delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = a.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  result.row_to_col.assign(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) result.row_to_col[p[j] - 1] = j - 1;
  }
  for (std::size_t i = 0; i < n; ++i) result.cost += a.at(i, result.row_to_col[i]);
  return result;
}

std::int64_t min_cost_value(const CostMatrix& cost) {
  if (cost.rows() > cost.cols()) return solve_min_cost(transpose(cost)).cost;
  return solve_min_cost(cost).cost;
}

Assignment solve_min_cost_lex(const CostMatrix& cost,
                              const std::function<int(std::size_t, std::size_t)>& tier,
                              std::size_t lex_rows) {
  const std::size_t n = cost.rows();
  const std::size_t m = cost.cols();
  if (n > m) throw std::invalid_argument("solve_min_cost_lex: more rows than columns");
  Assignment result;
  if (n == 0) return result;

  const std::int64_t optimum = solve_min_cost(cost).cost;
  std::vector<std::size_t> free_cols(m);
  for (std::size_t c = 0; c < m; ++c) free_cols[c] = c;
  std::int64_t fixed = 0;
  result.row_to_col.assign(n, 0);

  const std::size_t fixed_rows = std::min(n, lex_rows);
  for (std::size_t r = 0; r < fixed_rows; ++r) {
    std::vector<std::size_t> rest_rows;
    for (std::size_t rr = r + 1; rr < n; ++rr) rest_rows.push_back(rr);

    std::vector<std::size_t> candidates = free_cols;
    if (tier) {
      std::stable_sort(candidates.begin(), candidates.end(),
                       [&](std::size_t a, std::size_t b) { return tier(r, a) < tier(r, b); });
    }

    bool placed = false;
    for (auto c : candidates) {
      std::vector<std::size_t> rest_cols;
      for (auto fc : free_cols) {
        if (fc != c) rest_cols.push_back(fc);
      }
      const std::int64_t tail =
          rest_rows.empty() ? 0 : solve_min_cost(submatrix(cost, rest_rows, rest_cols)).cost;
      if (fixed + cost.at(r, c) + tail == optimum) {
        result.row_to_col[r] = c;
        fixed += cost.at(r, c);
        std::erase(free_cols, c);
        placed = true;
        break;
      }
    }
    if (!placed) throw std::logic_error("solve_min_cost_lex: no optimal completion");
  }
  if (fixed_rows < n) {
    std::vector<std::size_t> rest_rows;
    for (std::size_t rr = fixed_rows; rr < n; ++rr) rest_rows.push_back(rr);
    const Assignment tail = solve_min_cost(submatrix(cost, rest_rows, free_cols));
    for (std::size_t i = 0; i < rest_rows.size(); ++i) {
      result.row_to_col[rest_rows[i]] = free_cols[tail.row_to_col[i]];
    }
    fixed += tail.cost;
  }
  result.cost = fixed;
  return result;
}

}  // namespace avdr
