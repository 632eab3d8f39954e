// Smith normal form over the integers and the linear solves built on it.
#pragma once

#include <numeric>
#include <optional>
#include <utility>
#include "lattice.hpp"

namespace ncsurf {

// U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}.
struct SmithForm {
  IMat d, u, v;
  int rank = 0;
};

namespace detail {

inline void swap_rows(IMat& a, size_t i, size_t j) { std::swap(a[i], a[j]); }
inline void swap_cols(IMat& a, size_t i, size_t j) {
  for (auto& row : a)
    std::swap(row[i], row[j]);
}
// row_i += k * row_j
inline void add_row(IMat& a, size_t i, size_t j, Int k) {
  for (size_t c = 0; c < a[i].size(); ++c)
    a[i][c] += k * a[j][c];
}
inline void add_col(IMat& a, size_t i, size_t j, Int k) {
  for (auto& row : a)
    row[i] += k * row[j];
}
inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

} // namespace detail

inline SmithForm smith_normal_form(const IMat& a) {
  using namespace detail;
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  SmithForm s{a, identity_matrix((int) rows), identity_matrix((int) cols), 0};
  IMat& d = s.d;
  size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    for (;;) {
      // smallest nonzero entry of the remaining block becomes the pivot
      size_t pi = rows, pj = cols;
      Int best = 0;
      for (size_t i = t; i < rows; ++i)
        for (size_t j = t; j < cols; ++j)
          if (d[i][j] != 0 && (best == 0 || std::llabs(d[i][j]) < best)) {
            best = std::llabs(d[i][j]);
            pi = i;
            pj = j;
          }
      if (best == 0) {
        s.rank = (int) t;
        return s;
      }
      swap_rows(d, t, pi);
      swap_rows(s.u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(s.v, t, pj);
      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        Int k = floor_div(d[i][t], d[t][t]);
        if (k != 0) {
          add_row(d, i, t, -k);
          add_row(s.u, i, t, -k);
        }
        if (d[i][t] != 0)
          clean = false;
      }
      for (size_t j = t + 1; j < cols; ++j) {
        Int k = floor_div(d[t][j], d[t][t]);
        if (k != 0) {
          add_col(d, j, t, -k);
          add_col(s.v, j, t, -k);
        }
        if (d[t][j] != 0)
          clean = false;
      }
      if (!clean)
        continue;
      // divisibility: fold an offending row into row t and retry
      size_t bad = rows;
      for (size_t i = t + 1; i < rows && bad == rows; ++i)
        for (size_t j = t + 1; j < cols; ++j)
          if (d[i][j] % d[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == rows)
        break;
      add_row(d, t, bad, 1);
      add_row(s.u, t, bad, 1);
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t])
        x = -x;
      for (auto& x : s.u[t])
        x = -x;
    }
  }
  s.rank = (int) t;
  return s;
}

// All integer solutions of A y = b, as y0 + lattice spanned by kernel columns.
struct IntegerSolution {
  std::vector<Int> particular;
  std::vector<std::vector<Int>> kernel;
};

inline std::optional<IntegerSolution> solve_integer(const IMat& a, const std::vector<Int>& b) {
  size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  SmithForm s = smith_normal_form(a);
  std::vector<Int> ub = BasisChange::mat_vec(s.u, b);
  std::vector<Int> y(cols, 0);
  for (size_t i = 0; i < rows; ++i) {
    if ((int) i < s.rank) {
      if (ub[i] % s.d[i][i] != 0)
        return std::nullopt;
      y[i] = ub[i] / s.d[i][i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  IntegerSolution sol;
  sol.particular = BasisChange::mat_vec(s.v, y);
  for (size_t j = s.rank; j < cols; ++j) {
    std::vector<Int> col(cols);
    for (size_t i = 0; i < cols; ++i)
      col[i] = s.v[i][j];
    sol.kernel.push_back(col);
  }
  return sol;
}

// Basis of the integer kernel {y : A y = 0}.
inline std::vector<std::vector<Int>> integer_kernel(const IMat& a) {
  std::vector<Int> zero(a.size(), 0);
  return solve_integer(a, zero)->kernel;
}

} // namespace ncsurf
