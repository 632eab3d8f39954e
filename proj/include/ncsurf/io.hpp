// Text formats: divisor expressions like "2s+3f-e1-e2" and line-based surface files.
#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <vector>
#include "surface.hpp"

namespace ncsurf {

inline DivClass parse_div_expr(const LatticeSignature& sig, const std::string& text) {
  DivClass d(sig);
  size_t i = 0, n = text.size();
  auto skip = [&] {
    while (i < n && std::isspace((unsigned char) text[i]))
      ++i;
  };
  auto bad = [&](const std::string& why) -> InputError {
    return InputError("divisor expression '" + text + "': " + why + " at column " + std::to_string(i + 1));
  };
  skip();
  if (i == n)
    throw bad("empty");
  bool first = true;
  while (true) {
    skip();
    if (i == n)
      break;
    Int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw bad("expected + or -");
    }
    first = false;
    Int coef = 1;
    bool has_num = false;
    if (i < n && std::isdigit((unsigned char) text[i])) {
      size_t j = i;
      while (j < n && std::isdigit((unsigned char) text[j]))
        ++j;
      coef = std::stoll(text.substr(i, j - i));
      has_num = true;
      i = j;
      skip();
      if (i < n && text[i] == '*') {
        ++i;
        skip();
        if (i == n || !std::isalpha((unsigned char) text[i]))
          throw bad("expected basis name after *");
      }
    }
    if (i < n && (text[i] == 's' || text[i] == 'f')) {
      d.c[text[i] == 's' ? 0 : 1] += sign * coef;
      ++i;
    } else if (i < n && text[i] == 'e') {
      size_t j = ++i;
      while (j < n && std::isdigit((unsigned char) text[j]))
        ++j;
      if (j == i)
        throw bad("expected index after e");
      int idx = std::stoi(text.substr(i, j - i));
      if (idx < 1 || idx > sig.m)
        throw bad("e" + std::to_string(idx) + " out of range for m=" + std::to_string(sig.m));
      d.c[idx + 1] += sign * coef;
      i = j;
    } else if (has_num && coef == 0) {
      // a bare 0 term
    } else {
      throw bad("expected s, f or e<N>");
    }
  }
  return d;
}

struct SurfaceFile {
  SurfaceData surface;
  std::string name;
  std::vector<std::string> comments;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w)
    out.push_back(w);
  return out;
}

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

inline Int parse_int(const std::string& w, int line) {
  try {
    size_t pos = 0;
    long long v = std::stoll(w, &pos);
    if (pos == w.size())
      return v;
  } catch (const std::exception&) {
  }
  throw InputError("line " + std::to_string(line) + ": expected integer, got '" + w + "'");
}

inline std::string render_element(const MarkingGroup& g, const MarkElement& x) {
  std::string out;
  for (int i = 0; i < g.free_rank; ++i)
    out += (i ? " " : "") + std::to_string(x[i]);
  if (!g.torsion.empty()) {
    out += g.free_rank ? " ;" : ";";
    for (size_t j = 0; j < g.torsion.size(); ++j)
      out += " " + std::to_string(x[g.free_rank + j]);
  }
  return out;
}

} // namespace detail

inline MarkElement parse_element(const MarkingGroup& g, const std::string& text, int line) {
  std::string left = text, right;
  size_t semi = text.find(';');
  if (semi != std::string::npos) {
    left = text.substr(0, semi);
    right = text.substr(semi + 1);
  }
  std::vector<std::string> lw = detail::split_ws(left), rw = detail::split_ws(right);
  if ((int) lw.size() != g.free_rank || rw.size() != g.torsion.size())
    throw InputError("line " + std::to_string(line) + ": marking element needs "
                     + std::to_string(g.free_rank) + " free and " + std::to_string(g.torsion.size())
                     + " torsion entries");
  MarkElement x;
  for (const auto& w : lw)
    x.push_back(detail::parse_int(w, line));
  for (const auto& w : rw)
    x.push_back(detail::parse_int(w, line));
  return g.normalize(x);
}

inline std::string render_element(const MarkingGroup& g, const MarkElement& x) {
  return detail::render_element(g, x);
}

inline SurfaceFile parse_surface_unchecked(const std::string& text) {
  using detail::trim;
  struct Entry {
    std::string key, value;
    int line;
  };
  std::vector<Entry> entries;
  SurfaceFile out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string ln = trim(raw);
    if (ln.empty())
      continue;
    if (ln[0] == '#') {
      out.comments.push_back(trim(ln.substr(1)));
      continue;
    }
    size_t eq = ln.find('=');
    if (eq == std::string::npos)
      throw InputError("line " + std::to_string(lineno) + ": expected 'key = value'");
    entries.push_back({trim(ln.substr(0, eq)), trim(ln.substr(eq + 1)), lineno});
  }
  auto find = [&](const std::string& key) -> const Entry& {
    const Entry* hit = nullptr;
    for (const Entry& e : entries)
      if (e.key == key) {
        if (hit)
          throw InputError("line " + std::to_string(e.line) + ": duplicate key " + key);
        hit = &e;
      }
    if (!hit)
      throw InputError("missing key " + key);
    return *hit;
  };
  for (const Entry& e : entries) {
    static const char* known[] = {"name", "genus", "parity", "m", "marking", "q", "component"};
    bool ok = e.key.rfind("lambda ", 0) == 0;
    for (const char* k : known)
      ok = ok || e.key == k;
    if (!ok)
      throw InputError("line " + std::to_string(e.line) + ": unknown key '" + e.key + "'");
  }
  SurfaceData& s = out.surface;
  for (const Entry& e : entries)
    if (e.key == "name")
      out.name = e.value;
  {
    const Entry& e = find("genus");
    auto w = detail::split_ws(e.value);
    if (w.size() != 2)
      throw InputError("line " + std::to_string(e.line) + ": genus needs two integers");
    s.sig.g0 = (int) detail::parse_int(w[0], e.line);
    s.sig.g1 = (int) detail::parse_int(w[1], e.line);
  }
  {
    const Entry& e = find("parity");
    if (e.value != "even" && e.value != "odd")
      throw InputError("line " + std::to_string(e.line) + ": parity must be even or odd");
    s.sig.parity = e.value == "even" ? Parity::even : Parity::odd;
  }
  {
    const Entry& e = find("m");
    s.sig.m = (int) detail::parse_int(e.value, e.line);
    if (s.sig.m < 0)
      throw InputError("line " + std::to_string(e.line) + ": m must be >= 0");
  }
  {
    const Entry& e = find("marking");
    auto w = detail::split_ws(e.value);
    if (w.size() < 2 || w[0] != "free")
      throw InputError("line " + std::to_string(e.line) + ": expected 'free R torsion n1 ...'");
    s.marking.free_rank = (int) detail::parse_int(w[1], e.line);
    if (w.size() > 2) {
      if (w[2] != "torsion")
        throw InputError("line " + std::to_string(e.line) + ": expected 'torsion'");
      for (size_t i = 3; i < w.size(); ++i) {
        Int n = detail::parse_int(w[i], e.line);
        if (n < 2)
          throw InputError("line " + std::to_string(e.line) + ": torsion orders must be >= 2");
        s.marking.torsion.push_back(n);
      }
    }
    if (s.marking.free_rank < 0)
      throw InputError("line " + std::to_string(e.line) + ": free rank must be >= 0");
  }
  {
    const Entry& e = find("q");
    s.q = parse_element(s.marking, e.value, e.line);
  }
  s.lambda.assign(s.sig.rank(), s.marking.zero());
  std::vector<bool> given(s.sig.rank(), false);
  for (const Entry& e : entries) {
    if (e.key.rfind("lambda ", 0) != 0)
      continue;
    std::string which = trim(e.key.substr(7));
    int idx = -1;
    if (which == "s")
      idx = 0;
    else if (which == "f")
      idx = 1;
    else if (which.size() > 1 && which[0] == 'e') {
      int i = (int) detail::parse_int(which.substr(1), e.line);
      if (i >= 1 && i <= s.sig.m)
        idx = i + 1;
    }
    if (idx < 0)
      throw InputError("line " + std::to_string(e.line) + ": unknown lambda target '" + which + "'");
    if (given[idx])
      throw InputError("line " + std::to_string(e.line) + ": duplicate lambda " + which);
    given[idx] = true;
    s.lambda[idx] = parse_element(s.marking, e.value, e.line);
  }
  for (const Entry& e : entries) {
    if (e.key != "component")
      continue;
    std::string v = e.value;
    Int mult = 1;
    size_t star = v.find('*');
    if (star != std::string::npos) {
      mult = detail::parse_int(trim(v.substr(star + 1)), e.line);
      v = v.substr(0, star);
    }
    auto w = detail::split_ws(v);
    if ((int) w.size() != s.sig.rank())
      throw InputError("line " + std::to_string(e.line) + ": component needs "
                       + std::to_string(s.sig.rank()) + " coefficients");
    DivClass cls(s.sig);
    for (size_t i = 0; i < w.size(); ++i)
      cls.c[i] = detail::parse_int(w[i], e.line);
    s.components.push_back({cls, mult});
  }
  return out;
}

inline SurfaceFile parse_surface(const std::string& text) {
  SurfaceFile out = parse_surface_unchecked(text);
  const SurfaceData& s = out.surface;
  std::vector<std::string> bad = validate(s);
  if (!bad.empty()) {
    std::string msg = "invalid surface: " + bad.front();
    if (bad.front() == "anticanonical sum") {
      DivClass sum(s.sig);
      for (const QComponent& qc : s.components)
        sum += qc.mult * qc.cls;
      msg += ": components sum to " + render_class(sum) + ", but -K = "
             + render_class(anticanonical_class(s.sig));
    }
    throw InputError(msg);
  }
  return out;
}

inline std::string render_surface(const SurfaceData& s, const std::string& name = "",
                                  const std::vector<std::string>& comments = {}) {
  std::ostringstream out;
  for (const auto& c : comments)
    out << "# " << c << '\n';
  if (!name.empty())
    out << "name = " << name << '\n';
  out << "genus = " << s.sig.g0 << ' ' << s.sig.g1 << '\n';
  out << "parity = " << (s.sig.parity == Parity::even ? "even" : "odd") << '\n';
  out << "m = " << s.sig.m << '\n';
  out << "marking = free " << s.marking.free_rank;
  if (!s.marking.torsion.empty()) {
    out << " torsion";
    for (Int n : s.marking.torsion)
      out << ' ' << n;
  }
  out << '\n';
  out << "q = " << render_element(s.marking, s.q) << '\n';
  for (int i = 0; i < s.sig.rank(); ++i) {
    std::string nm = i == 0 ? "s" : i == 1 ? "f" : "e" + std::to_string(i - 1);
    out << "lambda " << nm << " = " << render_element(s.marking, s.lambda[i]) << '\n';
  }
  for (const QComponent& qc : s.components) {
    out << "component =";
    for (Int x : qc.cls.c)
      out << ' ' << x;
    out << " * " << qc.mult << '\n';
  }
  return out.str();
}

} // namespace ncsurf
