// Matrix-valued Laurent series in z^-1, truncated below z^-precision.
#pragma once

#include <string>
#include <vector>
#include "field.hpp"

namespace ncsurf::opcheck {

template <class F>
struct Mat {
  int n = 1;
  std::vector<F> a;  // row major

  Mat() = default;
  explicit Mat(int size) : n(size), a(size * size, F::from_int(0)) {}
  static Mat identity(int size) {
    Mat m(size);
    for (int i = 0; i < size; ++i)
      m.at(i, i) = F::from_int(1);
    return m;
  }
  F& at(int i, int j) { return a[i * n + j]; }
  const F& at(int i, int j) const { return a[i * n + j]; }
  Mat operator+(const Mat& o) const {
    Mat r = *this;
    for (size_t i = 0; i < a.size(); ++i)
      r.a[i] += o.a[i];
    return r;
  }
  Mat operator-(const Mat& o) const {
    Mat r = *this;
    for (size_t i = 0; i < a.size(); ++i)
      r.a[i] -= o.a[i];
    return r;
  }
  Mat operator*(const Mat& o) const {
    Mat r(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
          r.at(i, j) += at(i, k) * o.at(k, j);
    return r;
  }
  Mat scale(const F& c) const {
    Mat r = *this;
    for (F& x : r.a)
      x *= c;
    return r;
  }
  Mat pow(std::int64_t e) const {
    Mat r = identity(n), b = *this;
    while (e) {
      if (e & 1)
        r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  bool is_zero() const {
    for (const F& x : a)
      if (!x.is_zero())
        return false;
    return true;
  }
  bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
  std::string str() const {
    std::string out = "[";
    for (int i = 0; i < n; ++i) {
      out += i ? "; " : "";
      for (int j = 0; j < n; ++j)
        out += (j ? " " : "") + at(i, j).str();
    }
    return out + "]";
  }
};

template <class F>
class TruncSeries {
 public:
  int n = 1;
  int precision = 0;
  std::vector<Mat<F>> c;  // c[j] multiplies z^-j, j = 0..precision

  TruncSeries() = default;
  TruncSeries(int size, int prec) : n(size), precision(prec), c(prec + 1, Mat<F>(size)) {
    if (size < 1 || size > 3)
      throw InputError("matrix size must be 1, 2 or 3");
    if (prec < 0)
      throw InputError("precision must be >= 0");
  }
  static TruncSeries one(int size, int prec) {
    TruncSeries s(size, prec);
    s.c[0] = Mat<F>::identity(size);
    return s;
  }

  TruncSeries operator*(const TruncSeries& o) const {
    TruncSeries r(n, std::min(precision, o.precision));
    for (int i = 0; i <= r.precision; ++i)
      for (int j = 0; i + j <= r.precision; ++j)
        r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
    return r;
  }
  TruncSeries operator+(const TruncSeries& o) const {
    TruncSeries r(n, std::min(precision, o.precision));
    for (int i = 0; i <= r.precision; ++i)
      r.c[i] = c[i] + o.c[i];
    return r;
  }

  // B(z + k): z^-j = sum_i C(-j, i) k^i z^-(j+i)
  TruncSeries shift(std::int64_t k) const {
    int top = 2 * precision + 2;
    std::vector<std::vector<F>> pascal(top, std::vector<F>(top, F::from_int(0)));
    for (int a = 0; a < top; ++a) {
      pascal[a][0] = F::from_int(1);
      for (int b = 1; b <= a; ++b)
        pascal[a][b] = pascal[a - 1][b - 1] + (b < a ? pascal[a - 1][b] : F::from_int(0));
    }
    F kk = F::from_int(k);
    TruncSeries r(n, precision);
    r.c[0] = c[0];
    for (int j = 1; j <= precision; ++j)
      for (int i = 0; i + j <= precision; ++i) {
        // C(-j, i) = (-1)^i C(j+i-1, i)
        F b = pascal[j + i - 1][i];
        if (i % 2)
          b = -b;
        r.c[j + i] = r.c[j + i] + c[j].scale(b * field_pow(kk, i));
      }
    return r;
  }
};

} // namespace ncsurf::opcheck
