// Copyright 2026 The Dynkin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact zero-sum matrix games: dense-tableau primal simplex over rationals
// with Bland's rule.

#ifndef DYNKIN_LP_HPP
#define DYNKIN_LP_HPP

#include <algorithm>
#include <vector>

#include "dynkin/error.hpp"
#include "dynkin/rational.hpp"

namespace dynkin {

using Matrix = std::vector<std::vector<Rational>>;

/// Optimal strategies of a matrix game where the row player minimises.
struct MatrixGameSolution {
  Rational value;
  std::vector<Rational> row_strategy;
  std::vector<Rational> col_strategy;
  int pivots = 0;
};

namespace detail {

struct PackingSolution {
  Rational objective;
  std::vector<Rational> primal;  // one per column of A
  std::vector<Rational> dual;    // one per row of A
  int pivots = 0;
};

/// max 1'y  s.t.  A y <= 1, y >= 0, for entrywise positive A. The origin is
/// feasible with the slack basis, so no phase one is needed.
inline PackingSolution solve_packing_lp(const Matrix& A) {
  const std::size_t m = A.size();
  const std::size_t n = A.front().size();
  const std::size_t cols = n + m;  // structural + slack; rhs kept separately

  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(cols));
  std::vector<Rational> rhs(m, Rational(1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = A[i][j];
    tab[i][n + i] = 1;
    basis[i] = n + i;
  }
  std::vector<Rational> reduced(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) reduced[j] = -1;
  Rational objective = 0;

  int pivots = 0;
  std::vector<std::size_t> nz;
  for (;;) {
    // Bland: lowest-index column with negative reduced cost enters.
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(reduced[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(tab[i][enter]) <= 0) continue;
      Rational ratio = rhs[i] / tab[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = std::move(ratio);
      }
    }
    if (leave == m) throw DynkinError(ErrorCode::kInternal, "packing LP reported unbounded");

    const Rational pivot = tab[leave][enter];
    auto& prow = tab[leave];
    nz.clear();
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] /= pivot;
        nz.push_back(j);
      }
    }
    rhs[leave] /= pivot;

    Rational factor;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(tab[i][enter]) == 0) continue;
      factor = tab[i][enter];
      auto& row = tab[i];
      for (std::size_t j : nz) row[j] -= factor * prow[j];
      rhs[i] -= factor * rhs[leave];
    }
    factor = reduced[enter];
    for (std::size_t j : nz) reduced[j] -= factor * prow[j];
    objective -= factor * rhs[leave];
    basis[leave] = enter;
    ++pivots;
  }

  PackingSolution out;
  out.objective = objective;
  out.primal.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) out.primal[basis[i]] = rhs[i];
  }
  out.dual.assign(m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) out.dual[i] = reduced[n + i];
  out.pivots = pivots;
  return out;
}

}  // namespace detail

/// Value and optimal mixed strategies of the game with payoff matrix M
/// (rows minimise, columns maximise). The LP is posed over whichever player
/// has more strategies so the tableau has min(rows, cols) constraints.
inline MatrixGameSolution solve_matrix_game_lp(const Matrix& M) {
  if (M.empty() || M.front().empty()) throw DynkinError(ErrorCode::kInvalid, "empty payoff matrix");
  const std::size_t m = M.size();
  const std::size_t n = M.front().size();
  for (const auto& row : M) {
    if (row.size() != n) throw DynkinError(ErrorCode::kMalformed, "ragged payoff matrix");
  }
  Rational lo = M[0][0];
  Rational hi = M[0][0];
  for (const auto& row : M) {
    for (const auto& v : row) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }

  // Packing LP over A solves the game where A's rows maximise and its
  // columns minimise, with value 1 / objective.
  const bool transpose = n <= m;
  Matrix A;
  Rational shift;
  if (transpose) {
    // A = M' + shift: rows are the maximiser's (player two's) strategies.
    shift = 1 - lo;
    A.assign(n, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) A[j][i] = M[i][j] + shift;
    }
  } else {
    // A = -M + shift: the row player of M becomes a maximiser of -M.
    shift = 1 + hi;
    A.assign(m, std::vector<Rational>(n));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) A[i][j] = shift - M[i][j];
    }
  }

  auto sol = detail::solve_packing_lp(A);
  if (sgn(sol.objective) <= 0) throw DynkinError(ErrorCode::kInternal, "packing LP optimum is not positive");
  const Rational game_value = 1 / sol.objective;
  for (auto& v : sol.primal) v /= sol.objective;
  for (auto& v : sol.dual) v /= sol.objective;

  MatrixGameSolution out;
  out.pivots = sol.pivots;
  if (transpose) {
    out.value = game_value - shift;
    out.row_strategy = std::move(sol.primal);
    out.col_strategy = std::move(sol.dual);
  } else {
    out.value = shift - game_value;
    out.row_strategy = std::move(sol.dual);
    out.col_strategy = std::move(sol.primal);
  }
  return out;
}

}  // namespace dynkin

#endif  // DYNKIN_LP_HPP
