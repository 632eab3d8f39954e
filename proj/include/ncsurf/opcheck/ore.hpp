// Ore polynomials sum c_k(z) S^k with S g = sigma(g) S + delta(g).
// When the setting is marked half, S stands for T^(1/2) and T = S^2.
#pragma once

#include <map>
#include <string>
#include <vector>
#include "poly.hpp"

namespace ncsurf::opcheck {

enum class Twist { identity, scale, shift };
enum class Deriv { zero, d_dz };

template <class F>
struct OreSetting {
  Twist twist = Twist::identity;
  Deriv deriv = Deriv::zero;
  MPoly<F> step;  // z -> step*z (scale) or z -> z + step (shift), per power of S
  bool half = false;
  std::vector<std::string> names{"z"};

  int nv() const { return (int) names.size(); }

  static OreSetting differential(std::vector<std::string> names = {"z"}) {
    OreSetting s;
    s.deriv = Deriv::d_dz;
    s.names = std::move(names);
    s.step = MPoly<F>(s.nv());
    return s;
  }
  static OreSetting scaling(MPoly<F> a, std::vector<std::string> names, bool half = false) {
    OreSetting s;
    s.twist = Twist::scale;
    s.names = std::move(names);
    s.step = std::move(a);
    s.half = half;
    return s;
  }
  static OreSetting shifting(MPoly<F> b, std::vector<std::string> names, bool half = false) {
    OreSetting s;
    s.twist = Twist::shift;
    s.names = std::move(names);
    s.step = std::move(b);
    s.half = half;
    return s;
  }

  bool operator==(const OreSetting& o) const {
    return twist == o.twist && deriv == o.deriv && step == o.step && half == o.half && names == o.names;
  }

  RatFunc<F> sigma(const RatFunc<F>& g, int e) const {
    if (e == 0 || twist == Twist::identity)
      return g;
    if (twist == Twist::scale)
      return g.subst_scale(step, e);
    return g.subst_shift(step, e);
  }
  RatFunc<F> delta(const RatFunc<F>& g) const {
    if (deriv == Deriv::zero)
      return RatFunc<F>(nv());
    return g.deriv_z();
  }
  std::string generator_name() const {
    if (deriv == Deriv::d_dz)
      return "D";
    return half ? "T^(1/2)" : "T";
  }
};

template <class F>
class OreOp {
 public:
  OreSetting<F> setting;
  std::map<int, RatFunc<F>> terms;  // exponent of S -> coefficient (on the left)

  OreOp() = default;
  explicit OreOp(OreSetting<F> s) : setting(std::move(s)) {}

  static OreOp coeff(const OreSetting<F>& s, const RatFunc<F>& c, int k = 0) {
    OreOp r(s);
    if (!c.is_zero())
      r.terms.emplace(k, c);
    r.check_exponents();
    return r;
  }
  static OreOp gen(const OreSetting<F>& s, int k = 1) {
    return coeff(s, RatFunc<F>::constant(s.nv(), 1), k);
  }
  static OreOp scalar(const OreSetting<F>& s, std::int64_t c) {
    return coeff(s, RatFunc<F>::constant(s.nv(), c), 0);
  }
  static OreOp z(const OreSetting<F>& s) { return coeff(s, RatFunc<F>::var(s.nv(), 0), 0); }

  bool is_zero() const { return terms.empty(); }
  int degree() const { return terms.empty() ? -1 : terms.rbegin()->first; }
  int low_degree() const { return terms.empty() ? 0 : terms.begin()->first; }
  RatFunc<F> coefficient(int k) const {
    auto it = terms.find(k);
    return it == terms.end() ? RatFunc<F>(setting.nv()) : it->second;
  }
  RatFunc<F> lead() const { return terms.rbegin()->second; }

  void check_exponents() const {
    if (setting.deriv == Deriv::d_dz && !terms.empty() && terms.begin()->first < 0)
      throw InputError("negative powers of D are not defined");
  }
  void same_setting(const OreOp& o) const {
    if (!(setting == o.setting))
      throw InputError("Ore setting mismatch");
  }

  void add_term(int k, const RatFunc<F>& c) {
    if (c.is_zero())
      return;
    auto it = terms.find(k);
    if (it == terms.end()) {
      terms.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero())
        terms.erase(it);
    }
  }

  OreOp operator+(const OreOp& o) const {
    same_setting(o);
    OreOp r = *this;
    for (const auto& [k, c] : o.terms)
      r.add_term(k, c);
    return r;
  }
  OreOp operator-() const {
    OreOp r(setting);
    for (const auto& [k, c] : terms)
      r.terms.emplace(k, -c);
    return r;
  }
  OreOp operator-(const OreOp& o) const { return *this + (-o); }

  OreOp operator*(const OreOp& o) const {
    same_setting(o);
    OreOp r(setting);
    if (setting.deriv == Deriv::zero) {
      for (const auto& [a, ca] : terms)
        for (const auto& [b, cb] : o.terms)
          r.add_term(a + b, ca * setting.sigma(cb, a));
      return r;
    }
    // S^a d = sum_j C(a,j) delta^j(d) S^(a-j), twist is the identity here
    for (const auto& [b, cb] : o.terms) {
      std::vector<RatFunc<F>> ders{cb};
      for (const auto& [a, ca] : terms) {
        while ((int) ders.size() <= a)
          ders.push_back(setting.delta(ders.back()));
        std::int64_t binom = 1;
        for (int j = 0; j <= a; ++j) {
          r.add_term(a - j + b, ca * ders[j] * RatFunc<F>::constant(setting.nv(), F::from_int(binom)));
          binom = binom * (a - j) / (j + 1);
        }
      }
    }
    return r;
  }
  OreOp& operator+=(const OreOp& o) { return *this = *this + o; }
  OreOp& operator*=(const OreOp& o) { return *this = *this * o; }

  OreOp pow(int e) const {
    if (e < 0)
      throw InputError("negative operator power");
    OreOp r = scalar(setting, 1), b = *this;
    while (e) {
      if (e & 1)
        r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  // action on a function of z
  RatFunc<F> apply(const RatFunc<F>& g) const {
    RatFunc<F> out(setting.nv());
    if (setting.deriv == Deriv::zero) {
      for (const auto& [k, c] : terms)
        out += c * setting.sigma(g, k);
      return out;
    }
    RatFunc<F> der = g;
    int at = 0;
    for (const auto& [k, c] : terms) {
      while (at < k) {
        der = setting.delta(der);
        ++at;
      }
      out += c * der;
    }
    return out;
  }

  // apply sigma^e to every coefficient
  OreOp twist_coefficients(int e) const {
    OreOp r(setting);
    for (const auto& [k, c] : terms)
      r.add_term(k, setting.sigma(c, e));
    return r;
  }

  int deg_params() const {
    int d = 0;
    for (const auto& [k, c] : terms)
      d = std::max(d, c.deg_params());
    return d;
  }
  int deg_total() const {
    int d = 0;
    for (const auto& [k, c] : terms)
      d = std::max(d, c.deg_total());
    return d;
  }

  std::string power_name(int k) const {
    std::string g = setting.generator_name();
    if (setting.half) {
      if (k % 2 == 0)
        return k == 2 ? "T" : "T^" + std::to_string(k / 2);
      return "T^(" + std::to_string(k) + "/2)";
    }
    return k == 1 ? g : g + "^" + std::to_string(k);
  }

  std::string render() const {
    if (terms.empty())
      return "0";
    std::string out;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      std::string c = "(" + it->second.render(setting.names) + ")";
      std::string t = it->first == 0 ? c : c + "*" + power_name(it->first);
      out += (out.empty() ? "" : " + ") + t;
    }
    return out;
  }
};

} // namespace ncsurf::opcheck
