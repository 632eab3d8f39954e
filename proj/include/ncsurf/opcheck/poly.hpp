// Sparse multivariate polynomials and rational functions. Variable 0 is z;
// the rest are parameters. Denominators are kept as a list of monic factors
// so that sums only multiply in the factors that are actually missing;
// there is no gcd normalization, equality is tested by subtraction.
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>
#include "field.hpp"

namespace ncsurf::opcheck {

// Raised when a sampled parameter makes a denominator vanish; callers resample.
struct Degenerate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Mono = std::vector<int>;

struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const {
    int da = 0, db = 0;
    for (int x : a)
      da += x;
    for (int x : b)
      db += x;
    if (da != db)
      return da < db;
    return a < b;
  }
};

template <class F>
class MPoly {
 public:
  int nv = 1;
  std::map<Mono, F, MonoLess> t;

  MPoly() = default;
  explicit MPoly(int nvars) : nv(nvars) {}

  static MPoly constant(int nvars, const F& c) {
    MPoly p(nvars);
    if (!c.is_zero())
      p.t[Mono(nvars, 0)] = c;
    return p;
  }
  static MPoly constant(int nvars, std::int64_t c) { return constant(nvars, F::from_int(c)); }
  static MPoly var(int nvars, int i, int power = 1) {
    MPoly p(nvars);
    Mono m(nvars, 0);
    m[i] = power;
    p.t[m] = F::from_int(1);
    return p;
  }

  bool is_zero() const { return t.empty(); }
  bool is_constant() const { return t.empty() || (t.size() == 1 && deg_total() == 0); }
  F constant_value() const {
    auto it = t.find(Mono(nv, 0));
    return it == t.end() ? F::from_int(0) : it->second;
  }
  bool is_monomial() const { return t.size() == 1; }
  const std::pair<const Mono, F>& lead() const { return *t.rbegin(); }

  int deg_total() const {
    int d = -1;
    for (const auto& [m, c] : t) {
      int s = 0;
      for (int x : m)
        s += x;
      d = std::max(d, s);
    }
    return d;
  }
  int deg_var(int i) const {
    int d = -1;
    for (const auto& [m, c] : t)
      d = std::max(d, m[i]);
    return d;
  }
  int deg_z() const { return deg_var(0); }
  // total degree in the parameters (all variables except z)
  int deg_params() const {
    int d = -1;
    for (const auto& [m, c] : t) {
      int s = 0;
      for (int i = 1; i < nv; ++i)
        s += m[i];
      d = std::max(d, s);
    }
    return d;
  }

  void add_term(const Mono& m, const F& c) {
    if (c.is_zero())
      return;
    auto it = t.find(m);
    if (it == t.end()) {
      t.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero())
        t.erase(it);
    }
  }

  MPoly operator+(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [m, c] : o.t)
      r.add_term(m, c);
    return r;
  }
  MPoly operator-() const {
    MPoly r(nv);
    for (const auto& [m, c] : t)
      r.t.emplace(m, -c);
    return r;
  }
  MPoly operator-(const MPoly& o) const { return *this + (-o); }
  MPoly operator*(const MPoly& o) const {
    MPoly r(nv);
    Mono m(nv);
    for (const auto& [ma, ca] : t)
      for (const auto& [mb, cb] : o.t) {
        for (int i = 0; i < nv; ++i)
          m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  MPoly scale(const F& c) const {
    MPoly r(nv);
    if (c.is_zero())
      return r;
    for (const auto& [m, x] : t)
      r.t.emplace(m, x * c);
    return r;
  }
  MPoly pow(int e) const {
    MPoly r = constant(nv, 1), b = *this;
    while (e) {
      if (e & 1)
        r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  bool operator==(const MPoly& o) const { return t == o.t; }

  // coefficient of z^k, as a polynomial in the parameters (z exponent 0)
  std::vector<MPoly> z_coeffs() const {
    std::vector<MPoly> out(std::max(deg_z() + 1, 0), MPoly(nv));
    for (const auto& [m, c] : t) {
      Mono mm = m;
      mm[0] = 0;
      out[m[0]].t.emplace(mm, c);
    }
    return out;
  }
  static MPoly from_z_coeffs(int nvars, const std::vector<MPoly>& cs) {
    MPoly r(nvars);
    for (size_t k = 0; k < cs.size(); ++k)
      for (const auto& [m, c] : cs[k].t) {
        Mono mm = m;
        mm[0] += (int) k;
        r.add_term(mm, c);
      }
    return r;
  }

  MPoly deriv_z() const {
    MPoly r(nv);
    for (const auto& [m, c] : t)
      if (m[0] > 0) {
        Mono mm = m;
        --mm[0];
        r.add_term(mm, c * F::from_int(m[0]));
      }
    return r;
  }

  // z^k -> a^k z^k
  MPoly subst_scale(const MPoly& a) const {
    std::vector<MPoly> cs = z_coeffs();
    MPoly ak = constant(nv, 1);
    for (size_t k = 0; k < cs.size(); ++k) {
      cs[k] = cs[k] * ak;
      ak = ak * a;
    }
    return from_z_coeffs(nv, cs);
  }
  // z^k -> a^(d-k) z^k with d = deg_z; this is a^d times N(z/a)
  MPoly subst_scale_inverse(const MPoly& a) const {
    std::vector<MPoly> cs = z_coeffs();
    int d = (int) cs.size() - 1;
    MPoly ak = constant(nv, 1);
    for (int k = d; k >= 0; --k) {
      cs[k] = cs[k] * ak;
      ak = ak * a;
    }
    return from_z_coeffs(nv, cs);
  }
  // N(z + b), b free of z
  MPoly subst_shift(const MPoly& b) const {
    std::vector<MPoly> cs = z_coeffs();
    MPoly zb = var(nv, 0) + b;
    MPoly r(nv);
    for (int k = (int) cs.size() - 1; k >= 0; --k)
      r = r * zb + cs[k];
    return r;
  }
  // z -> 1/z, times z^d with d = deg_z
  MPoly reverse_z() const {
    int d = deg_z();
    MPoly r(nv);
    for (const auto& [m, c] : t) {
      Mono mm = m;
      mm[0] = d - m[0];
      r.add_term(mm, c);
    }
    return r;
  }

  // z -> z^k
  MPoly subst_power(int k) const {
    MPoly r(nv);
    for (const auto& [m, c] : t) {
      Mono mm = m;
      mm[0] *= k;
      r.t.emplace(mm, c);
    }
    return r;
  }

  F eval_z_only(const F& z) const {
    if (deg_params() > 0)
      fail_internal("eval_z_only: polynomial still has parameters");
    F r = F::from_int(0);
    for (const auto& [m, c] : t)
      r += c * field_pow(z, m[0]);
    return r;
  }

  std::string render(const std::vector<std::string>& names) const {
    if (t.empty())
      return "0";
    std::string out;
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string cs = c.str();
      bool neg = !cs.empty() && cs[0] == '-';
      if (neg)
        cs = cs.substr(1);
      std::string mono;
      for (int i = 0; i < nv; ++i)
        if (m[i] > 0)
          mono += (mono.empty() ? "" : "*") + names[i] + (m[i] > 1 ? "^" + std::to_string(m[i]) : "");
      std::string term = mono.empty() ? cs : (cs == "1" ? mono : cs + "*" + mono);
      if (out.empty())
        out = neg ? "-" + term : term;
      else
        out += (neg ? " - " : " + ") + term;
    }
    return out;
  }
};

// Division in z by d whose z-leading coefficient is a nonzero field constant.
// Returns nullopt-like empty pair if d does not qualify.
template <class F>
bool divmod_z(const MPoly<F>& n, const MPoly<F>& d, MPoly<F>& quot, MPoly<F>& rem) {
  std::vector<MPoly<F>> dc = d.z_coeffs();
  if (dc.empty() || !dc.back().is_constant() || dc.back().is_zero())
    return false;
  int dd = (int) dc.size() - 1;
  F inv = dc.back().constant_value().inv();
  std::vector<MPoly<F>> r = n.z_coeffs();
  std::vector<MPoly<F>> q(std::max((int) r.size() - dd, 0), MPoly<F>(n.nv));
  for (int k = (int) r.size() - 1; k >= dd; --k) {
    if (r[k].is_zero())
      continue;
    MPoly<F> c = r[k].scale(inv);
    q[k - dd] = c;
    for (int j = 0; j <= dd; ++j)
      r[k - dd + j] = r[k - dd + j] - c * dc[j];
  }
  quot = MPoly<F>::from_z_coeffs(n.nv, q);
  if ((int) r.size() > dd)
    r.resize(dd);
  rem = MPoly<F>::from_z_coeffs(n.nv, r);
  return true;
}

template <class F>
class RatFunc {
 public:
  struct Factor {
    MPoly<F> p;
    int mult;
  };
  MPoly<F> num;
  std::vector<Factor> den;

  RatFunc() = default;
  explicit RatFunc(int nvars) : num(nvars) {}
  RatFunc(MPoly<F> n) : num(std::move(n)) {}
  RatFunc(MPoly<F> n, std::vector<Factor> d) : num(std::move(n)), den(std::move(d)) { normalize(); }

  static RatFunc constant(int nvars, std::int64_t c) { return RatFunc(MPoly<F>::constant(nvars, c)); }
  static RatFunc constant(int nvars, const F& c) { return RatFunc(MPoly<F>::constant(nvars, c)); }
  static RatFunc var(int nvars, int i) { return RatFunc(MPoly<F>::var(nvars, i)); }

  int nv() const { return num.nv; }
  bool is_zero() const { return num.is_zero(); }
  bool is_polynomial() const { return den.empty(); }

  MPoly<F> den_product() const {
    MPoly<F> r = MPoly<F>::constant(nv(), 1);
    for (const Factor& f : den)
      r = r * f.p.pow(f.mult);
    return r;
  }

  void normalize() {
    if (num.is_zero()) {
      den.clear();
      return;
    }
    // split monomial factors into powers of single variables
    std::vector<Factor> split;
    for (Factor& f : den) {
      if (f.p.is_monomial() && f.p.deg_total() > 0) {
        const auto& [m, c] = f.p.lead();
        num = num.scale(field_pow(c, -f.mult));
        for (int i = 0; i < nv(); ++i)
          if (m[i] > 0)
            split.push_back({MPoly<F>::var(nv(), i), m[i] * f.mult});
      } else {
        split.push_back(f);
      }
    }
    std::vector<Factor> out;
    for (Factor& f : split) {
      if (f.mult == 0)
        continue;
      if (f.p.is_zero())
        throw Degenerate("zero denominator");
      if (f.p.is_constant()) {
        num = num.scale(field_pow(f.p.constant_value(), -f.mult));
        continue;
      }
      F lc = f.p.lead().second;
      if (!lc.is_one()) {
        f.p = f.p.scale(lc.inv());
        num = num.scale(field_pow(lc, -f.mult));
      }
      bool merged = false;
      for (Factor& g : out)
        if (g.p == f.p) {
          g.mult += f.mult;
          merged = true;
          break;
        }
      if (!merged)
        out.push_back(f);
    }
    // cancel factors that divide the numerator when that is cheap to see
    for (Factor& f : out) {
      while (f.mult > 0) {
        MPoly<F> q, r;
        if (f.p.is_monomial()) {
          const Mono& fm = f.p.lead().first;
          bool divides = true;
          for (const auto& [m, c] : num.t)
            for (int i = 0; i < nv() && divides; ++i)
              divides = m[i] >= fm[i];
          if (!divides)
            break;
          MPoly<F> nn(nv());
          for (const auto& [m, c] : num.t) {
            Mono mm = m;
            for (int i = 0; i < nv(); ++i)
              mm[i] -= fm[i];
            nn.t.emplace(mm, c);
          }
          num = nn;
        } else if (f.p.deg_z() > 0 && divmod_z(num, f.p, q, r) && r.is_zero()) {
          num = q;
        } else {
          break;
        }
        --f.mult;
      }
    }
    den.clear();
    for (Factor& f : out)
      if (f.mult > 0)
        den.push_back(f);
  }

  RatFunc operator*(const RatFunc& o) const {
    RatFunc r(num * o.num);
    r.den = den;
    r.den.insert(r.den.end(), o.den.begin(), o.den.end());
    r.normalize();
    return r;
  }
  RatFunc operator+(const RatFunc& o) const {
    if (o.is_zero())
      return *this;
    if (is_zero())
      return o;
    // lcm of the two factor lists by exact factor equality
    std::vector<Factor> l = den;
    for (const Factor& g : o.den) {
      bool found = false;
      for (Factor& f : l)
        if (f.p == g.p) {
          f.mult = std::max(f.mult, g.mult);
          found = true;
        }
      if (!found)
        l.push_back(g);
    }
    auto cofactor = [&](const std::vector<Factor>& d) {
      MPoly<F> c = MPoly<F>::constant(nv(), 1);
      for (const Factor& f : l) {
        int have = 0;
        for (const Factor& g : d)
          if (g.p == f.p)
            have = g.mult;
        c = c * f.p.pow(f.mult - have);
      }
      return c;
    };
    RatFunc r(num * cofactor(den) + o.num * cofactor(o.den));
    r.den = l;
    r.normalize();
    return r;
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num = -r.num;
    return r;
  }
  RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
  RatFunc inv() const {
    if (num.is_zero())
      throw Degenerate("division by zero rational function");
    RatFunc r(den_product());
    r.den = {{num, 1}};
    r.normalize();
    return r;
  }
  RatFunc operator/(const RatFunc& o) const { return *this * o.inv(); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc pow(int e) const {
    if (e < 0)
      return inv().pow(-e);
    RatFunc r = constant(nv(), 1), b = *this;
    while (e) {
      if (e & 1)
        r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
  bool equals(const RatFunc& o) const { return (*this - o).is_zero(); }

  // f(a^e z) for a free of z and nonzero
  RatFunc subst_scale(const MPoly<F>& a, int e) const {
    auto one = [&](const MPoly<F>& p) -> RatFunc {
      if (e >= 0)
        return RatFunc(p.subst_scale(a.pow(e)));
      RatFunc r(p.subst_scale_inverse(a.pow(-e)));
      r.den = {{a, -e * std::max(p.deg_z(), 0)}};
      r.normalize();
      return r;
    };
    RatFunc r = one(num);
    for (const Factor& f : den)
      r = r * one(f.p).inv().pow(f.mult);
    return r;
  }
  // f(z + e*b), b free of z
  RatFunc subst_shift(const MPoly<F>& b, int e) const {
    MPoly<F> eb = b.scale(F::from_int(e));
    RatFunc r(num.subst_shift(eb));
    std::vector<Factor> d;
    for (const Factor& f : den)
      d.push_back({f.p.subst_shift(eb), f.mult});
    r.den = d;
    r.normalize();
    return r;
  }
  // f(z^k), k >= 1
  RatFunc subst_power(int k) const {
    RatFunc r(num.subst_power(k));
    for (const Factor& f : den)
      r.den.push_back({f.p.subst_power(k), f.mult});
    r.normalize();
    return r;
  }
  // f(1/z)
  RatFunc subst_reciprocal() const {
    auto one = [&](const MPoly<F>& p) -> RatFunc {
      RatFunc r(p.reverse_z());
      r.den = {{MPoly<F>::var(nv(), 0), std::max(p.deg_z(), 0)}};
      r.normalize();
      return r;
    };
    RatFunc r = one(num);
    for (const Factor& f : den)
      r = r * one(f.p).inv().pow(f.mult);
    return r;
  }
  RatFunc deriv_z() const {
    RatFunc inv_den = RatFunc(MPoly<F>::constant(nv(), 1), den);
    RatFunc r = RatFunc(num.deriv_z()) * inv_den;
    for (const Factor& f : den) {
      MPoly<F> fd = f.p.deriv_z();
      if (fd.is_zero())
        continue;
      RatFunc term(num * fd.scale(F::from_int(-f.mult)));
      term.den = {{f.p, 1}};
      term.normalize();
      r = r + term * inv_den;
    }
    return r;
  }

  F eval_z_only(const F& z) const {
    F d = F::from_int(1);
    for (const Factor& f : den)
      d *= field_pow(f.p.eval_z_only(z), f.mult);
    if (d.is_zero())
      throw Degenerate("pole at evaluation point");
    return num.eval_z_only(z) / d;
  }

  int deg_params() const {
    int d = std::max(num.deg_params(), 0);
    for (const Factor& f : den)
      d += f.mult * std::max(f.p.deg_params(), 0);
    return d;
  }
  int deg_total() const {
    int d = std::max(num.deg_total(), 0);
    for (const Factor& f : den)
      d = std::max(d, f.mult * std::max(f.p.deg_total(), 0));
    return d;
  }

  std::string render(const std::vector<std::string>& names) const {
    std::string n = num.render(names);
    if (den.empty())
      return n;
    std::string d;
    for (const Factor& f : den) {
      std::string p = "(" + f.p.render(names) + ")";
      if (f.mult > 1)
        p += "^" + std::to_string(f.mult);
      d += (d.empty() ? "" : "*") + p;
    }
    return "(" + n + ")/" + d;
  }
};

} // namespace ncsurf::opcheck
