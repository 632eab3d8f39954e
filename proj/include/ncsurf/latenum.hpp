// Short-vector enumeration in a positive definite integral quadratic form.
// Floating point only narrows the search box; every hit is rechecked in integers.
#pragma once

#include <cmath>
#include <vector>
#include "lattice.hpp"

namespace ncsurf {

inline Int quad_form(const IMat& g, const std::vector<Int>& y) {
  Int r = 0;
  for (size_t i = 0; i < y.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j)
      r += y[i] * g[i][j] * y[j];
  return r;
}

// LLL on a Gram matrix. Returns the unimodular change of basis T (columns are
// the new basis vectors in old coordinates); g is replaced by T^t g T.
inline IMat lll_reduce(IMat& g) {
  int n = (int) g.size();
  IMat t = identity_matrix(n);
  auto col_add = [&](int k, int j, Int c) {  // b_k -= c * b_j
    for (int i = 0; i < n; ++i)
      t[i][k] -= c * t[i][j];
    for (int i = 0; i < n; ++i)
      g[i][k] -= c * g[i][j];
    for (int i = 0; i < n; ++i)
      g[k][i] -= c * g[j][i];
  };
  auto col_swap = [&](int a, int b) {
    for (int i = 0; i < n; ++i)
      std::swap(t[i][a], t[i][b]);
    std::swap(g[a], g[b]);
    for (int i = 0; i < n; ++i)
      std::swap(g[i][a], g[i][b]);
  };
  auto gso = [&](std::vector<std::vector<long double>>& mu, std::vector<long double>& bstar) {
    mu.assign(n, std::vector<long double>(n, 0));
    bstar.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        long double v = (long double) g[i][j];
        for (int k = 0; k < j; ++k)
          v -= mu[j][k] * mu[i][k] * bstar[k];
        mu[i][j] = v / bstar[j];
      }
      long double v = (long double) g[i][i];
      for (int k = 0; k < i; ++k)
        v -= mu[i][k] * mu[i][k] * bstar[k];
      bstar[i] = v;
    }
  };
  std::vector<std::vector<long double>> mu;
  std::vector<long double> bstar;
  int k = 1, guard = 0;
  while (k < n) {
    if (++guard > 100000)
      fail_internal("lll_reduce: iteration budget exceeded");
    gso(mu, bstar);
    for (int j = k - 1; j >= 0; --j) {
      Int c = (Int) std::llround(mu[k][j]);
      if (c != 0) {
        col_add(k, j, c);
        gso(mu, bstar);
      }
    }
    if (bstar[k] >= (0.75L - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
      ++k;
    } else {
      col_swap(k, k - 1);
      k = std::max(k - 1, 1);
    }
  }
  return t;
}

// All nonzero y with y^t g y <= bound, g positive definite.
inline std::vector<std::vector<Int>> short_vectors(const IMat& g0, Int bound) {
  int n = (int) g0.size();
  std::vector<std::vector<Int>> out;
  if (n == 0)
    return out;
  IMat g = g0;
  IMat t = lll_reduce(g);
  // q[i][i] > 0 and Q(y) = sum_i q[i][i] (y_i + sum_{j>i} q[i][j] y_j)^2
  std::vector<std::vector<long double>> q(n, std::vector<long double>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      q[i][j] = (long double) g[i][j];
  for (int i = 0; i < n; ++i) {
    if (q[i][i] <= 0)
      fail_internal("short_vectors: form is not positive definite");
    for (int j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (int k = i + 1; k < n; ++k)
      for (int l = k; l < n; ++l)
        q[k][l] -= q[k][i] * q[i][l];
  }
  const long double eps = 1e-6L;
  std::vector<Int> y(n, 0);
  auto rec = [&](auto&& self, int i, long double rem) -> void {
    long double c = 0;
    for (int j = i + 1; j < n; ++j)
      c -= q[i][j] * (long double) y[j];
    long double r = std::sqrt(std::max(rem, 0.0L) / q[i][i]);
    Int lo = (Int) std::ceil(c - r - eps), hi = (Int) std::floor(c + r + eps);
    for (Int v = lo; v <= hi; ++v) {
      y[i] = v;
      long double d = (long double) v - c;
      long double left = rem - q[i][i] * d * d;
      if (left < -eps)
        continue;
      if (i == 0) {
        bool nonzero = false;
        for (Int x : y)
          nonzero = nonzero || x != 0;
        if (nonzero && quad_form(g, y) <= bound)
          out.push_back(BasisChange::mat_vec(t, y));
      } else {
        self(self, i - 1, left);
      }
    }
    y[i] = 0;
  };
  rec(rec, n - 1, (long double) bound);
  return out;
}

} // namespace ncsurf
