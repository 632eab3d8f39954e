// Catalog of operator identities and the runner behind `opcheck run`.
//
// Cases with free parameters are checked by substituting uniformly random
// elements of F_P, P = 2^61 - 1, and testing the resulting identity in F_P(z)
// exactly. A false identity survives one trial with probability at most
// d/P, d a per-case bound on the parameter degree of the difference.
// Cases over a small prime field have no free parameters; their random draws
// only pick test inputs and the check itself is exact.
#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>
#include "ore.hpp"
#include "series.hpp"

namespace ncsurf::opcheck {

struct Verdict {
  bool equal = true;
  std::string witness;  // first differing coefficient
};

template <class F>
Verdict identity_check(const OreOp<F>& lhs, const OreOp<F>& rhs) {
  OreOp<F> d = lhs - rhs;
  Verdict v;
  if (d.is_zero())
    return v;
  v.equal = false;
  int k = d.terms.begin()->first;
  std::string at = k == 0 ? "1" : d.power_name(k);
  v.witness = "coefficient of " + at + ": " + d.terms.begin()->second.render(d.setting.names);
  return v;
}

template <class F>
OreOp<F> commutator(const OreOp<F>& a, const OreOp<F>& b) {
  return a * b - b * a;
}

template <class F>
struct Identity {
  std::string label;
  OreOp<F> lhs, rhs;
};

// Parameters are variables 1.. in symbolic mode and constants otherwise.
template <class F>
struct Ctx {
  std::vector<std::string> names{"z"};
  std::vector<MPoly<F>> params;

  int nv() const { return (int) names.size(); }
  RatFunc<F> z() const { return RatFunc<F>::var(nv(), 0); }
  RatFunc<F> c(std::int64_t x) const { return RatFunc<F>::constant(nv(), x); }
  RatFunc<F> p(int i) const { return RatFunc<F>(params.at(i)); }
};

inline double log2_big_prime() { return std::log2((double) big_prime); }

// ---- identity builders ----------------------------------------------------

template <class F>
std::vector<Identity<F>> build_qweyl(const Ctx<F>& cx) {
  auto st = OreSetting<F>::scaling(cx.params[0], cx.names);
  auto t = OreOp<F>::gen(st), z = OreOp<F>::z(st);
  auto q = OreOp<F>::coeff(st, cx.p(0));
  return {{"T*z = q*z*T", t * z, q * z * t}};
}

template <class F>
std::vector<Identity<F>> build_qweyl_affine(const Ctx<F>& cx) {
  auto st = OreSetting<F>::scaling(cx.params[0], cx.names);
  auto x = OreOp<F>::z(st);
  auto y = OreOp<F>::coeff(st, cx.z().inv()) * (OreOp<F>::scalar(st, 1) - OreOp<F>::gen(st));
  auto q = OreOp<F>::coeff(st, cx.p(0));
  auto one = OreOp<F>::scalar(st, 1);
  auto qi = OreOp<F>::coeff(st, cx.p(0).inv());
  return {{"y*x = q*x*y + (1-q)", y * x, q * x * y + one - q},
          {"x*y = q^-1*y*x + (1-q^-1)", x * y, qi * y * x + one - qi}};
}

template <class F>
std::vector<Identity<F>> build_additive_pair(const Ctx<F>& cx) {
  auto st = OreSetting<F>::shifting(MPoly<F>::constant(cx.nv(), 1), cx.names);
  auto t = OreOp<F>::gen(st), x = OreOp<F>::z(st);
  auto y = x + t;
  return {{"[T,z] = T", commutator(t, x), t}, {"[y,x] = y-x", commutator(y, x), y - x}};
}

template <class F>
std::vector<Identity<F>> build_mellin_pair(const Ctx<F>& cx) {
  auto sd = OreSetting<F>::shifting(MPoly<F>::constant(cx.nv(), 1), cx.names);
  auto x1 = OreOp<F>::z(sd), y1 = OreOp<F>::gen(sd);
  auto dd = OreSetting<F>::differential(cx.names);
  auto t = OreOp<F>::z(dd), d = OreOp<F>::gen(dd);
  auto x2 = -(t * d), y2 = t;
  return {{"difference side: [y,x] = y", commutator(y1, x1), y1},
          {"differential side: [t,-tD] = t", commutator(y2, x2), y2}};
}

template <class F>
std::vector<Identity<F>> build_weyl(const Ctx<F>& cx) {
  auto st = OreSetting<F>::differential(cx.names);
  auto z = OreOp<F>::z(st), d = OreOp<F>::gen(st), one = OreOp<F>::scalar(st, 1);
  return {{"[D,z] = 1", commutator(d, z), one}, {"x=-D, y=z: [y,x] = 1", commutator(z, -d), one}};
}

template <class F>
std::vector<Identity<F>> build_middle_convolution(const Ctx<F>& cx, int n) {
  auto st = OreSetting<F>::differential(cx.names);
  auto d = OreOp<F>::gen(st);
  auto zu = OreOp<F>::coeff(st, cx.z() - cx.p(0));
  auto lhs = d.pow(n + 1) * zu;
  auto rhs = (zu * d + OreOp<F>::scalar(st, n + 1)) * d.pow(n);
  return {{"n=" + std::to_string(n) + ": D^(n+1)*(z-u) = ((z-u)*D + n+1)*D^n", lhs, rhs}};
}

// (D + f)^p against D^p + f^p + f^(p-1), over F_p(z).
template <class F>
Identity<F> frobenius_identity(const RatFunc<F>& f, int p) {
  auto st = OreSetting<F>::differential();
  auto d = OreOp<F>::gen(st);
  RatFunc<F> der = f;
  for (int i = 0; i < p - 1; ++i)
    der = der.deriv_z();
  auto lhs = (d + OreOp<F>::coeff(st, f)).pow(p);
  auto rhs = d.pow(p) + OreOp<F>::coeff(st, f.pow(p) + der);
  return {"(D+f)^p = D^p + f^p + f^(p-1)", lhs, rhs};
}

// tau of g du, as the coefficient of d(u^p), computed with the coordinate u
template <class F>
RatFunc<F> tau_plain(const RatFunc<F>& g, int p) {
  RatFunc<F> der = g;
  for (int i = 0; i < p - 1; ++i)
    der = der.deriv_z();
  return g.pow(p) + der;
}

// same differential, computed with the coordinate v = u + u^2 and converted
// back using d(v^p) = (1 + 2u^p) d(u^p)
template <class F>
RatFunc<F> tau_alt(const RatFunc<F>& g, int p) {
  int nv = g.nv();
  RatFunc<F> u = RatFunc<F>::var(nv, 0);
  RatFunc<F> one = RatFunc<F>::constant(nv, 1), two = RatFunc<F>::constant(nv, 2);
  RatFunc<F> dv = one + two * u;  // dv/du
  RatFunc<F> h = g / dv;          // g du = h dv
  RatFunc<F> der = h;
  for (int i = 0; i < p - 1; ++i)
    der = der.deriv_z() / dv;
  return (h.pow(p) + der) * (one + two * u.pow(p));
}

template <class F>
TruncSeries<F> additive_product(const TruncSeries<F>& b, int p) {
  TruncSeries<F> out = TruncSeries<F>::one(b.n, b.precision);
  for (int k = 0; k < p; ++k)
    out = out * b.shift(k);  // B(z+p-1) ... B(z): later factors go on the right
  return out;
}

template <class F>
RatFunc<F> lq_multiplication(const Ctx<F>& cx, const RatFunc<F>& u) {
  return cx.z() + cx.z().inv() - u - u.inv();
}

// operator of degree s in the top q-difference case, with T^(1/2): z -> qh*z
template <class F>
OreOp<F> lq_difference(const Ctx<F>& cx, const OreSetting<F>& st, const RatFunc<F>& c, const RatFunc<F>& u) {
  RatFunc<F> z = cx.z(), zi = z.inv();
  RatFunc<F> a = (c * z + (c * z).inv() - u - u.inv()) / (zi - z);
  RatFunc<F> b = (c * zi + z / c - u - u.inv()) / (z - zi);
  return OreOp<F>::coeff(st, a, 1) + OreOp<F>::coeff(st, b, -1);
}

// params: qh, c, u1, u2, v1, v2
template <class F>
std::vector<std::vector<OreOp<F>>> span4_families(const Ctx<F>& cx) {
  auto st = OreSetting<F>::scaling(cx.params[0], cx.names, true);
  RatFunc<F> qh = cx.p(0), c = cx.p(1);
  std::vector<RatFunc<F>> us{cx.p(2), cx.p(3)}, vs{cx.p(4), cx.p(5)};
  std::vector<OreOp<F>> first, second;
  for (const auto& u : us)
    for (const auto& v : vs) {
      auto m = OreOp<F>::coeff(st, lq_multiplication(cx, u));
      first.push_back(lq_difference(cx, st, c, v) * m);
      second.push_back(m * lq_difference(cx, st, c * qh, v));
    }
  return {first, second};
}

inline int rank_fp(std::vector<std::vector<Fp>> rows) {
  int rank = 0;
  size_t ncols = rows.empty() ? 0 : rows[0].size();
  for (size_t col = 0; col < ncols && rank < (int) rows.size(); ++col) {
    int piv = -1;
    for (int r = rank; r < (int) rows.size(); ++r)
      if (!rows[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0)
      continue;
    std::swap(rows[piv], rows[rank]);
    Fp inv = rows[rank][col].inv();
    for (int r = 0; r < (int) rows.size(); ++r)
      if (r != rank && !rows[r][col].is_zero()) {
        Fp k = rows[r][col] * inv;
        for (size_t j = col; j < ncols; ++j)
          rows[r][j] -= k * rows[rank][j];
      }
    ++rank;
  }
  return rank;
}

inline std::vector<Fp> op_evaluations(const OreOp<Fp>& op, const std::vector<int>& exps, const std::vector<Fp>& points) {
  std::vector<Fp> out;
  for (int k : exps)
    for (const Fp& x : points)
      out.push_back(op.coefficient(k).eval_z_only(x));
  return out;
}

// L = (1/z - z)^-1 (T^(1/2) - T^(-1/2)), T^(1/2): z -> qh*z
template <class F>
OreOp<F> lowering_operator(const Ctx<F>& cx) {
  auto st = OreSetting<F>::scaling(cx.params[0], cx.names, true);
  RatFunc<F> z = cx.z();
  auto pref = OreOp<F>::coeff(st, (z.inv() - z).inv());
  return pref * (OreOp<F>::gen(st, 1) - OreOp<F>::gen(st, -1));
}

// Checks that r is a symmetric Laurent polynomial of exact degree deg;
// returns an empty string on success.
template <class F>
std::string symmetric_laurent_problem(const RatFunc<F>& r, int deg) {
  RatFunc<F> s = r * RatFunc<F>::var(r.nv(), 0).pow(deg);
  for (const auto& f : s.den)
    if (f.p.deg_z() > 0)
      return "not a Laurent polynomial";
  std::vector<MPoly<F>> cs = s.num.z_coeffs();
  if ((int) cs.size() != 2 * deg + 1)
    return "z-span " + std::to_string((int) cs.size() - 1) + ", expected " + std::to_string(2 * deg);
  if (cs.front().is_zero() || cs.back().is_zero())
    return "not of exact degree " + std::to_string(deg);
  for (int j = 0; j <= 2 * deg; ++j)
    if (!(cs[j] == cs[2 * deg - j]))
      return "not symmetric under z -> 1/z";
  return "";
}

// ---- catalog and runner ---------------------------------------------------

struct CaseOptions {
  std::optional<std::uint64_t> prime;
  std::optional<int> n;     // middle_convolution, lowering_degree
  std::optional<int> size;  // additive_product matrix size
  int trials = 2;
  std::uint64_t seed = 1;
  bool symbolic = false;
};

struct CaseReport {
  std::string id;
  bool equal = true;
  int checks = 0;
  bool randomized = false;
  double log2_p_fail = -INFINITY;  // bound; -inf when every check was exact
  std::vector<std::string> lines;
  std::optional<std::string> witness;

  std::string verdict() const { return equal ? "equal" : "counterexample"; }
  bool p_fail_small() const { return log2_p_fail < -40; }
  std::string p_fail_text() const {
    if (p_fail_small())
      return "p_fail<2^-40";
    return "p_fail<=2^" + std::to_string((int) std::ceil(log2_p_fail));
  }
  double p_fail() const { return std::exp2(log2_p_fail); }
};

struct CaseInfo {
  std::string id;
  std::string summary;
};

inline const std::vector<CaseInfo>& case_catalog() {
  static const std::vector<CaseInfo> all = {
      {"qweyl", "T*z = q*z*T for T: z -> q*z"},
      {"qweyl_affine", "x = z, y = z^-1(1-T): y*x = q*x*y + (1-q)"},
      {"additive_pair", "x = z, y = z + T with T: z -> z+1: [y,x] = y - x"},
      {"mellin_pair", "[y,x] = y for x=z, y=T and for x=-tD, y=t"},
      {"weyl", "[D,z] = 1 and the swap x=-D, y=z"},
      {"middle_convolution", "D^(n+1)(z-u) = ((z-u)D + n+1) D^n, n = 0..6 or --n"},
      {"frobenius_power", "(D+f)^p = D^p + f^p + f^(p-1) over F_p(z), random f"},
      {"tau_invariance", "tau(g du) agrees in the coordinates u and u+u^2; tau(df) = d(f^p)"},
      {"additive_product", "B(z+p-1)...B(z) = 1 + (B0^p - B0) z^-p + ..., scalar and 2x2"},
      {"span4_qdiff", "both 4-element product families span the same 4-dimensional space"},
      {"lowering_degree", "(1/z-z)^-1 (T^(1/2)-T^(-1/2)) lowers z^n+z^-n to degree n-1"},
  };
  return all;
}

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::seed_seq seq{(std::uint32_t) seed, (std::uint32_t) (seed >> 32), (std::uint32_t) a, (std::uint32_t) b};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t(out[0]) << 32) | out[1];
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s)
    h = (h ^ ch) * 1099511628211ull;
  return h;
}

inline Fp random_fp(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, Fp::modulus() - 1);
  return Fp::raw(dist(rng));
}

inline Fp random_nonzero_fp(std::mt19937_64& rng) {
  for (;;) {
    Fp x = random_fp(rng);
    if (!x.is_zero())
      return x;
  }
}

// random rational function over the current F_p: numerator of degree <= 3,
// monic denominator of degree <= 2; never zero
inline RatFunc<Fp> random_ratfunc(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ddeg(0, 2);
  MPoly<Fp> num(1), den = MPoly<Fp>::constant(1, 1);
  while (num.is_zero())
    for (int k = 0; k <= 3; ++k)
      num.add_term({k}, random_fp(rng));
  int dd = ddeg(rng);
  if (dd > 0) {
    den = MPoly<Fp>::var(1, 0, dd);
    for (int k = 0; k < dd; ++k)
      den.add_term({k}, random_fp(rng));
  }
  return RatFunc<Fp>(num) / RatFunc<Fp>(den);
}

inline void note_check(CaseReport& rep, const std::string& label, const Verdict& v) {
  ++rep.checks;
  rep.lines.push_back(label + ": " + (v.equal ? "equal" : "counterexample  " + v.witness));
  if (!v.equal && rep.equal) {
    rep.equal = false;
    rep.witness = label + ": " + v.witness;
  }
}

inline void note_bool(CaseReport& rep, const std::string& label, bool ok, const std::string& why) {
  note_check(rep, label, Verdict{ok, ok ? "" : why});
}

// Parameter degree bound for lhs - rhs once denominators are cleared.
template <class F>
int identity_param_degree(const Identity<F>& id) {
  int d = 0;
  for (const auto& [k, c] : id.lhs.terms)
    d = std::max(d, c.deg_params() + id.rhs.coefficient(k).deg_params());
  for (const auto& [k, c] : id.rhs.terms)
    d = std::max(d, c.deg_params() + id.lhs.coefficient(k).deg_params());
  return d;
}

constexpr int max_symbolic_degree = 64;
constexpr int resample_limit = 16;

// Shared driver for cases with free parameters. `build` maps a context to
// identities; `sample` fills params (randomized) and may reject draws.
struct ParamSpec {
  std::vector<std::string> names;
  int degree_bound;  // parameter degree of any difference numerator
  std::function<bool(const std::vector<Fp>&)> admissible = [](const std::vector<Fp>&) { return true; };
};

template <class BuildFp, class BuildQ>
void run_parametric(CaseReport& rep, const CaseOptions& opt, const ParamSpec& ps, BuildFp build_fp,
                    BuildQ build_q, const std::string& tag) {
  if (opt.symbolic) {
    Ctx<Qq> cx;
    for (const auto& nm : ps.names)
      cx.names.push_back(nm);
    for (size_t i = 0; i < ps.names.size(); ++i)
      cx.params.push_back(MPoly<Qq>::var(cx.nv(), (int) i + 1));
    for (const auto& id : build_q(cx)) {
      int deg = std::max(id.lhs.deg_total(), id.rhs.deg_total());
      if (deg > max_symbolic_degree)
        throw InputError("symbolic mode limited to total degree " + std::to_string(max_symbolic_degree)
                         + ", " + id.label + " has degree " + std::to_string(deg));
      note_check(rep, tag + id.label + " [symbolic]", identity_check(id.lhs, id.rhs));
    }
    return;
  }
  std::uint64_t p = opt.prime.value_or(big_prime);
  FpScope scope(p);
  rep.randomized = !ps.names.empty();
  for (int t = 0; t < opt.trials; ++t) {
    std::mt19937_64 rng(mix_seed(opt.seed, fnv1a(rep.id + tag), t));
    bool done = false;
    for (int attempt = 0; attempt < resample_limit && !done; ++attempt) {
      std::vector<Fp> vals;
      for (size_t i = 0; i < ps.names.size(); ++i)
        vals.push_back(random_fp(rng));
      if (!ps.admissible(vals))
        continue;
      Ctx<Fp> cx;
      for (const Fp& v : vals)
        cx.params.push_back(MPoly<Fp>::constant(1, v));
      try {
        auto ids = build_fp(cx);
        for (const auto& id : ids)
          note_check(rep, tag + id.label + " [trial " + std::to_string(t + 1) + "]", identity_check(id.lhs, id.rhs));
        done = true;
      } catch (const Degenerate&) {
      }
    }
    if (!done)
      fail_internal("degenerate evaluation: " + std::to_string(resample_limit) + " samples rejected");
  }
  if (rep.randomized) {
    double per = std::log2((double) ps.degree_bound) - std::log2((double) p);
    rep.log2_p_fail = std::max(rep.log2_p_fail, std::min(0.0, per) * opt.trials);
  }
}

inline bool no_small_root_of_unity(const Fp& x, int upto) {
  Fp y = x;
  for (int k = 1; k <= upto; ++k, y *= x)
    if (y.is_one() || y.is_zero())
      return false;
  return true;
}

inline std::vector<std::uint64_t> primes_or(const CaseOptions& opt, std::vector<std::uint64_t> dflt) {
  if (opt.prime)
    return {*opt.prime};
  return dflt;
}

} // namespace detail

// Declared parameter-degree bounds used for p_fail; tests compare them with
// identity_param_degree on symbolic builds.
inline int declared_degree_bound(const std::string& id) {
  if (id == "qweyl" || id == "middle_convolution")
    return 2;
  if (id == "qweyl_affine")
    return 4;
  return 1;
}

inline CaseReport run_case(const std::string& id, const CaseOptions& opt) {
  using namespace detail;
  if (opt.trials < 1)
    throw InputError("trials must be >= 1");
  if (opt.prime && !is_prime_u64(*opt.prime))
    throw InputError("--prime " + std::to_string(*opt.prime) + " is not prime");
  CaseReport rep;
  rep.id = id;
  auto nonzero = [](const std::vector<Fp>& v) {
    for (const Fp& x : v)
      if (x.is_zero())
        return false;
    return true;
  };

  if (id == "qweyl") {
    ParamSpec ps{{"q"}, declared_degree_bound(id), nonzero};
    run_parametric(rep, opt, ps, build_qweyl<Fp>, build_qweyl<Qq>, "");
  } else if (id == "qweyl_affine") {
    ParamSpec ps{{"q"}, declared_degree_bound(id), nonzero};
    run_parametric(rep, opt, ps, build_qweyl_affine<Fp>, build_qweyl_affine<Qq>, "");
  } else if (id == "additive_pair") {
    run_parametric(rep, opt, ParamSpec{{}, 1}, build_additive_pair<Fp>, build_additive_pair<Qq>, "");
  } else if (id == "mellin_pair") {
    run_parametric(rep, opt, ParamSpec{{}, 1}, build_mellin_pair<Fp>, build_mellin_pair<Qq>, "");
  } else if (id == "weyl") {
    run_parametric(rep, opt, ParamSpec{{}, 1}, build_weyl<Fp>, build_weyl<Qq>, "");
  } else if (id == "middle_convolution") {
    if (opt.n && *opt.n < 0)
      throw InputError("middle_convolution: n must be >= 0");
    int lo = opt.n.value_or(0), hi = opt.n.value_or(6);
    for (int n = lo; n <= hi; ++n) {
      ParamSpec ps{{"u"}, declared_degree_bound(id)};
      run_parametric(
          rep, opt, ps, [n](const Ctx<Fp>& c) { return build_middle_convolution(c, n); },
          [n](const Ctx<Qq>& c) { return build_middle_convolution(c, n); }, "");
    }
  } else if (id == "frobenius_power") {
    for (std::uint64_t p : primes_or(opt, {2, 3, 5, 7, 11})) {
      if (p > 31)
        throw InputError("frobenius_power: prime must be <= 31");
      FpScope scope(p);
      for (int t = 0; t < opt.trials; ++t) {
        std::mt19937_64 rng(mix_seed(opt.seed, p, t));
        RatFunc<Fp> f = random_ratfunc(rng);
        Identity<Fp> idn = frobenius_identity(f, (int) p);
        note_check(rep, "p=" + std::to_string(p) + " f=" + f.render({"z"}), identity_check(idn.lhs, idn.rhs));
      }
    }
  } else if (id == "tau_invariance") {
    for (std::uint64_t p : primes_or(opt, {2, 3, 5, 7, 11})) {
      if (p > 31)
        throw InputError("tau_invariance: prime must be <= 31");
      FpScope scope(p);
      int pp = (int) p;
      for (int t = 0; t < opt.trials; ++t) {
        std::mt19937_64 rng(mix_seed(opt.seed, p, t));
        RatFunc<Fp> g = random_ratfunc(rng), g2 = random_ratfunc(rng), f = random_ratfunc(rng);
        std::string tag = "p=" + std::to_string(p) + " ";
        RatFunc<Fp> a = tau_plain(g, pp), b = tau_alt(g, pp);
        note_bool(rep, tag + "coordinate change u -> u+u^2, g=" + g.render({"u"}), a.equals(b),
                  "difference " + (a - b).render({"u"}));
        RatFunc<Fp> df = f.deriv_z();
        RatFunc<Fp> lhs = tau_plain(df, pp), rhs = df.subst_power(pp);
        note_bool(rep, tag + "tau(df) = d(f^p), f=" + f.render({"u"}), lhs.equals(rhs),
                  "difference " + (lhs - rhs).render({"u"}));
        RatFunc<Fp> s = tau_plain(g + g2, pp), s2 = tau_plain(g, pp) + tau_plain(g2, pp);
        note_bool(rep, tag + "additivity", s.equals(s2), "difference " + (s - s2).render({"u"}));
      }
    }
  } else if (id == "additive_product") {
    std::vector<int> sizes = opt.size ? std::vector<int>{*opt.size} : std::vector<int>{1, 2};
    for (std::uint64_t p : primes_or(opt, {3, 5})) {
      if (p > 31)
        throw InputError("additive_product: prime must be <= 31");
      FpScope scope(p);
      int pp = (int) p;
      for (int n : sizes)
        for (int t = 0; t < opt.trials; ++t) {
          std::mt19937_64 rng(mix_seed(opt.seed, p * 16 + n, t));
          TruncSeries<Fp> b = TruncSeries<Fp>::one(n, pp);
          for (int j = 1; j <= pp; ++j)
            for (Fp& x : b.c[j].a)
              x = random_fp(rng);
          TruncSeries<Fp> prod = additive_product(b, pp);
          Mat<Fp> b0 = b.c[1];
          Mat<Fp> want = b0.pow(pp) - b0;
          bool ok = true;
          std::string why;
          for (int j = 1; j < pp && ok; ++j)
            if (!prod.c[j].is_zero()) {
              ok = false;
              why = "z^-" + std::to_string(j) + " coefficient " + prod.c[j].str();
            }
          if (ok && !(prod.c[pp] == want)) {
            ok = false;
            why = "z^-p coefficient " + prod.c[pp].str() + ", expected " + want.str();
          }
          note_bool(rep,
                    "p=" + std::to_string(p) + " " + std::to_string(n) + "x" + std::to_string(n)
                        + " B0=" + b0.str() + " z^-p coefficient " + prod.c[pp].str(),
                    ok, why);
        }
    }
  } else if (id == "span4_qdiff") {
    if (opt.symbolic)
      throw InputError("span4_qdiff is a rank computation at random points; it has no symbolic mode");
    std::uint64_t p = opt.prime.value_or(big_prime);
    FpScope scope(p);
    rep.randomized = true;
    const int npoints = 6;
    for (int t = 0; t < opt.trials; ++t) {
      std::mt19937_64 rng(mix_seed(opt.seed, 4, t));
      bool done = false;
      for (int attempt = 0; attempt < resample_limit && !done; ++attempt) {
        std::vector<Fp> v;
        for (int i = 0; i < 6; ++i)
          v.push_back(random_nonzero_fp(rng));
        // avoid q a small root of unity and coincident parameters
        if (!no_small_root_of_unity(v[0], 16) || v[2] == v[3] || (v[2] * v[3]).is_one() || v[4] == v[5]
            || (v[4] * v[5]).is_one())
          continue;
        Ctx<Fp> cx;
        for (const Fp& x : v)
          cx.params.push_back(MPoly<Fp>::constant(1, x));
        try {
          auto fams = span4_families(cx);
          std::vector<Fp> pts;
          for (int i = 0; i < npoints; ++i)
            pts.push_back(random_nonzero_fp(rng));
          std::vector<std::vector<Fp>> r1, r2, all;
          for (const auto& op : fams[0])
            r1.push_back(op_evaluations(op, {-1, 1}, pts));
          for (const auto& op : fams[1])
            r2.push_back(op_evaluations(op, {-1, 1}, pts));
          all = r1;
          all.insert(all.end(), r2.begin(), r2.end());
          int a = rank_fp(r1), b = rank_fp(r2), c = rank_fp(all);
          std::string tag = " [trial " + std::to_string(t + 1) + "]";
          note_bool(rep, "rank of first family = 4" + tag, a == 4, "rank " + std::to_string(a));
          note_bool(rep, "rank of second family = 4" + tag, b == 4, "rank " + std::to_string(b));
          note_bool(rep, "rank of union = 4" + tag, c == 4, "rank " + std::to_string(c));
          done = true;
        } catch (const Degenerate&) {
        }
      }
      if (!done)
        fail_internal("degenerate evaluation: " + std::to_string(resample_limit) + " samples rejected");
    }
    // A false positive needs a 5x5 minor of the evaluation matrix, a polynomial
    // in the sample of degree <= 5 * 40, to vanish.
    double per = std::log2(200.0) - std::log2((double) p);
    rep.log2_p_fail = std::min(0.0, per) * opt.trials;
  } else if (id == "lowering_degree") {
    if (opt.n && *opt.n < 0)
      throw InputError("lowering_degree: n must be >= 0");
    int lo = opt.n.value_or(0), hi = opt.n.value_or(6);
    auto run_one = [&](auto cx, int n, const std::string& tag) {
      auto l = lowering_operator(cx);
      auto zr = cx.z();
      if (n == 0) {
        auto r = l.apply(cx.c(1));
        note_bool(rep, "L*1 = 0" + tag, r.is_zero(), "L*1 = " + r.render(cx.names));
        return;
      }
      auto r = l.apply(zr.pow(n) + zr.pow(-n));
      std::string why = symmetric_laurent_problem(r, n - 1);
      note_bool(rep, "n=" + std::to_string(n) + ": L(z^n+z^-n) symmetric of degree n-1" + tag, why.empty(),
                why + ": " + r.render(cx.names));
    };
    for (int n = lo; n <= hi; ++n) {
      if (opt.symbolic) {
        Ctx<Qq> cx;
        cx.names.push_back("qh");
        cx.params.push_back(MPoly<Qq>::var(2, 1));
        run_one(cx, n, " [symbolic]");
        continue;
      }
      std::uint64_t p = opt.prime.value_or(big_prime);
      FpScope scope(p);
      rep.randomized = true;
      for (int t = 0; t < opt.trials; ++t) {
        std::mt19937_64 rng(mix_seed(opt.seed, 5 + n, t));
        Fp qh;
        int attempt = 0;
        do {
          if (++attempt > resample_limit)
            fail_internal("degenerate evaluation: no admissible qh");
          qh = random_nonzero_fp(rng);
        } while (!no_small_root_of_unity(qh, 2 * n + 2));
        Ctx<Fp> cx;
        cx.params.push_back(MPoly<Fp>::constant(1, qh));
        run_one(cx, n, " [trial " + std::to_string(t + 1) + "]");
      }
      // leading coefficient and divisibility are polynomial conditions in qh
      // of degree <= 4n + 4
      double per = std::log2(4.0 * n + 4) - std::log2((double) p);
      rep.log2_p_fail = std::max(rep.log2_p_fail, std::min(0.0, per) * opt.trials);
    }
  } else {
    throw InputError("unknown case '" + id + "'");
  }
  return rep;
}

} // namespace ncsurf::opcheck
