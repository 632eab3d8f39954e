// Command-line front end. Lives in a header so tests can drive it in-process.
#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>
#include "CLI11.hpp"
#include "json.hpp"
#include "ncsurf.hpp"
#include "opcheck.hpp"

namespace ncsurf::cli {

using nlohmann::json;

// What a subcommand produces; printed either as text or as one JSON line.
struct Output {
  json answer;
  std::string text;  // answer as shown in text mode
  std::optional<std::string> witness;
  std::vector<std::string> trace;
  std::optional<double> p_fail;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read surface file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Int parse_int_arg(const std::string& w, const std::string& what) {
  std::string t = w;
  size_t a = t.find_first_not_of(' ');
  t = a == std::string::npos ? "" : t.substr(a);
  try {
    size_t pos = 0;
    long long v = std::stoll(t, &pos);
    if (pos == t.size())
      return v;
  } catch (const std::exception&) {
  }
  throw InputError(what + ": expected an integer, got '" + w + "'");
}

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

inline std::string move_text(const Move& mv) {
  switch (mv.kind) {
    case Move::Kind::reflect: return "reflect in " + render_class(mv.cls);
    case Move::Kind::elementary: return "elementary transformation";
    case Move::Kind::subtract: return "subtract " + render_class(mv.cls);
  }
  return "";
}

// one line per move with the class after it
inline std::vector<std::string> trace_lines(const ReductionTrace& tr) {
  std::vector<std::string> out;
  DivClass d = tr.start;
  out.push_back("start " + render_class(d));
  for (const Move& mv : tr.moves) {
    d = apply_move(d, mv);
    out.push_back(move_text(mv) + " -> " + render_class(d));
  }
  return out;
}

inline const char* status_name(ReductionStatus s) {
  switch (s) {
    case ReductionStatus::chamber: return "chamber";
    case ReductionStatus::blocked: return "blocked";
    case ReductionStatus::fiber_negative: return "fiber_negative";
  }
  return "";
}

inline const char* blowdown_status_name(BlowdownResult::Status s) {
  switch (s) {
    case BlowdownResult::Status::to_em: return "to_em";
    case BlowdownResult::Status::plane: return "plane";
    case BlowdownResult::Status::decomposes: return "decomposes";
    case BlowdownResult::Status::not_formal: return "not_formal";
  }
  return "";
}

inline json k0_json(const K0Class& k) {
  return json{{"rank", k.rank}, {"c1", render_class(k.c1)}, {"chi", k.chi}};
}

inline std::string k0_text(const K0Class& k) {
  return "(" + std::to_string(k.rank) + ", " + render_class(k.c1) + ", " + std::to_string(k.chi) + ")";
}

// CLI11 would read "-e1" or "-2" as an option; no option of ours looks like
// that, so such arguments are passed through as values.
inline std::vector<std::string> protect_negative_values(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a.size() >= 2 && a[0] == '-' && (std::isdigit((unsigned char) a[1]) || a[1] == 's' || a[1] == 'f' || a[1] == 'e'))
      a = " " + a;
    args.push_back(a);
  }
  return args;
}

} // namespace detail

inline void print(const Output& o, bool as_json, bool with_trace, std::ostream& out) {
  if (as_json) {
    json j;
    j["answer"] = o.answer;
    j["witness"] = o.witness ? json(*o.witness) : json(nullptr);
    j["trace"] = with_trace ? json(o.trace) : json::array();
    j["p_fail"] = o.p_fail ? json(*o.p_fail) : json(nullptr);
    out << j.dump() << '\n';
    return;
  }
  if (with_trace)
    for (const auto& l : o.trace)
      out << l << '\n';
  out << o.text << '\n';
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ncsurf: numerical invariants of noncommutative rational and ruled surfaces"};
  app.name("ncsurf");
  app.require_subcommand(1);
  app.fallthrough();

  std::string surface_path, preset_name;
  bool as_json = false, with_trace = false;
  app.add_option("--surface", surface_path, "surface file");
  app.add_option("--preset", preset_name, "built-in surface (see 'preset list')");
  app.add_flag("--json", as_json, "print one JSON object per answer");
  app.add_flag("--trace", with_trace, "print reduction steps");

  std::optional<SurfaceFile> loaded;
  auto surface = [&]() -> const SurfaceData& {
    if (!loaded) {
      if (!surface_path.empty() && !preset_name.empty())
        throw InputError("give either --surface or --preset, not both");
      if (!preset_name.empty())
        loaded = SurfaceFile{preset(preset_name), preset_name, {}};
      else if (!surface_path.empty())
        loaded = parse_surface(detail::read_file(surface_path));
      else
        throw InputError("this command needs --surface FILE or --preset NAME");
    }
    return loaded->surface;
  };
  auto expr = [&](const std::string& text) { return parse_div_expr(surface().sig, text); };

  Output o;
  std::function<void()> action;
  auto sub = [&](const std::string& name, const std::string& desc) { return app.add_subcommand(name, desc); };

  // surface-level queries
  auto* c_validate = sub("validate", "check the surface data");
  c_validate->callback([&] {
    action = [&] {
      SurfaceFile f;
      if (!preset_name.empty())
        f = SurfaceFile{preset(preset_name), preset_name, {}};
      else if (!surface_path.empty())
        f = parse_surface_unchecked(detail::read_file(surface_path));
      else
        throw InputError("validate needs --surface FILE or --preset NAME");
      std::vector<std::string> bad = validate(f.surface);
      o.answer = bad.empty();
      o.text = bad.empty() ? "valid" : "invalid";
      for (const auto& b : bad) {
        o.text += "  " + b;
        o.trace.push_back(b);
      }
      if (!bad.empty())
        o.witness = bad.front();
    };
  });

  std::string a1, a2, a3;
  auto* c_intersect = sub("intersect", "intersection number D1.D2");
  c_intersect->add_option("D1", a1)->required();
  c_intersect->add_option("D2", a2)->required();
  c_intersect->callback([&] {
    action = [&] {
      Int v = intersect(expr(a1), expr(a2));
      o.answer = v;
      o.text = std::to_string(v);
    };
  });

  auto* c_chi = sub("chi", "Euler characteristic of O(D)");
  c_chi->add_option("D", a1)->required();
  c_chi->callback([&] {
    action = [&] {
      Int v = chi_line_bundle(expr(a1));
      o.answer = v;
      o.text = std::to_string(v);
    };
  });

  auto* c_canonical = sub("canonical", "canonical class K");
  c_canonical->callback([&] {
    action = [&] {
      std::string k = render_class(canonical_class(surface().sig));
      o.answer = k;
      o.text = k;
    };
  });

  auto* c_effective = sub("effective", "is D effective?");
  c_effective->add_option("D", a1)->required();
  c_effective->callback([&] {
    action = [&] {
      EffectiveResult r = is_effective(surface(), expr(a1));
      o.answer = r.effective;
      o.text = detail::bool_text(r.effective);
      if (r.effective) {
        std::string cert;
        for (const DivClass& x : r.certificate)
          cert += (cert.empty() ? "" : " + ") + render_class(x);
        if (!r.residue.is_zero())
          cert += (cert.empty() ? "" : " + ") + render_class(r.residue);
        o.witness = cert.empty() ? "0" : cert;
        o.text += "  certificate=" + *o.witness;
        for (const DivClass& x : r.certificate)
          o.trace.push_back("subtract " + render_class(x));
        o.trace.push_back("residue " + render_class(r.residue));
      }
    };
  });

  auto* c_nef = sub("nef", "is D nef?");
  c_nef->add_option("D", a1)->required();
  c_nef->callback([&] {
    action = [&] {
      NefResult r = is_nef(surface(), expr(a1));
      o.answer = r.nef;
      o.text = detail::bool_text(r.nef);
      if (r.witness) {
        o.witness = render_class(*r.witness);
        o.text += "  witness=" + *o.witness;
      }
    };
  });

  bool strong = false;
  auto* c_ample = sub("ample", "is D ample?");
  c_ample->add_option("D", a1)->required();
  c_ample->add_flag("--strong", strong, "test strong ampleness instead");
  c_ample->callback([&] {
    action = [&] {
      bool v = strong ? is_strongly_ample(surface(), expr(a1)) : is_ample(surface(), expr(a1));
      o.answer = v;
      o.text = detail::bool_text(v);
    };
  });

  auto* c_gamma = sub("gamma", "dimension of global sections of O(D)");
  c_gamma->add_option("D", a1)->required();
  c_gamma->callback([&] {
    action = [&] {
      Int v = dim_gamma(surface(), expr(a1), &o.trace);
      o.answer = v;
      o.text = std::to_string(v);
    };
  });

  auto* c_hom = sub("hom", "dimensions of Ext^i(O(D1), O(D2))");
  c_hom->add_option("D1", a1)->required();
  c_hom->add_option("D2", a2)->required();
  c_hom->callback([&] {
    action = [&] {
      HomDims h = hom_dims(surface(), expr(a1), expr(a2));
      o.answer = json{{"h0", h.h0}, {"h1", h.h1}, {"h2", h.h2}};
      o.text = "h0=" + std::to_string(h.h0) + " h1=" + std::to_string(h.h1) + " h2=" + std::to_string(h.h2);
    };
  });

  auto* c_acyclic = sub("acyclic", "acyclicity / global generation criterion for Hom(O(D1), O(D2))");
  c_acyclic->add_option("D1", a1)->required();
  c_acyclic->add_option("D2", a2)->required();
  c_acyclic->callback([&] {
    action = [&] {
      std::string v = acyclicity_name(acyclic_globgen(surface(), expr(a1), expr(a2)));
      o.answer = v;
      o.text = v;
    };
  });

  auto* c_reduce = sub("reduce", "reduce D to the fundamental chamber");
  c_reduce->add_option("D", a1)->required();
  c_reduce->callback([&] {
    action = [&] {
      ReductionTrace tr = reduce_to_chamber(surface(), expr(a1));
      o.answer = json{{"class", render_class(tr.end)}, {"status", detail::status_name(tr.status)},
                      {"moves", tr.moves.size()}};
      o.text = render_class(tr.end) + "  status=" + detail::status_name(tr.status);
      if (tr.blocking) {
        o.witness = render_class(*tr.blocking);
        o.text += "  witness=" + *o.witness;
      }
      o.trace = detail::trace_lines(tr);
    };
  });

  auto* c_blowdown = sub("blowdown", "find a blowdown structure contracting E");
  c_blowdown->add_option("E", a1)->required();
  c_blowdown->callback([&] {
    action = [&] {
      BlowdownResult r = find_blowdown(surface(), expr(a1));
      o.answer = r.ok();
      o.text = detail::bool_text(r.ok()) + "  status=" + detail::blowdown_status_name(r.status);
      if (!r.ok()) {
        o.witness = r.message;
        o.text += "  " + r.message;
      } else {
        o.text += "  moves=" + std::to_string(r.trace.moves.size());
      }
      o.trace = detail::trace_lines(r.trace);
    };
  });

  int bu_component = 0;
  std::vector<std::string> bu_mults;
  std::string bu_pos;
  auto* c_blowup = sub("blowup", "blow up a point of Q; prints the new surface file");
  c_blowup->add_option("--component", bu_component, "index of a component through the point (from 0)")->required();
  c_blowup->add_option("--mults", bu_mults, "local multiplicity of each component at the point")
      ->required()
      ->delimiter(',');
  c_blowup->add_option("--pos", bu_pos, "marking element of the point, 'a1 .. aR ; t1 .. tk'")->required();
  c_blowup->callback([&] {
    action = [&] {
      const SurfaceData& s = surface();
      std::vector<Int> mults;
      for (const auto& w : bu_mults)
        for (const auto& piece : ncsurf::detail::split_ws(std::string(w)))
          mults.push_back(detail::parse_int_arg(piece, "--mults"));
      MarkElement pos;
      try {
        pos = parse_element(s.marking, bu_pos, 0);
      } catch (const InputError&) {
        throw InputError("--pos: expected " + std::to_string(s.marking.free_rank) + " free and "
                         + std::to_string(s.marking.torsion.size()) + " torsion entries");
      }
      SurfaceData t = blow_up(s, bu_component, mults, pos);
      std::string name = loaded && !loaded->name.empty() ? loaded->name + "_blowup" : "";
      o.text = render_surface(t, name);
      if (!o.text.empty() && o.text.back() == '\n')
        o.text.pop_back();
      o.answer = o.text;
    };
  });

  // K0 operations
  auto* c_k0 = sub("k0", "numerical Grothendieck group operations");
  c_k0->require_subcommand(1);
  Int order_r = 1;
  std::string center_k;
  std::optional<Int> center_chi;
  auto k0_class = [&]() {
    return K0Class{detail::parse_int_arg(a1, "rank"), expr(a2), detail::parse_int_arg(a3, "chi")};
  };
  auto add_k0_args = [&](CLI::App* c) {
    c->add_option("RANK", a1)->required();
    c->add_option("C1", a2)->required();
    c->add_option("CHI", a3)->required();
  };
  auto k0_out = [&](const K0Class& k) {
    o.answer = detail::k0_json(k);
    o.text = detail::k0_text(k);
  };
  auto* k_theta = c_k0->add_subcommand("theta", "Serre twist");
  add_k0_args(k_theta);
  k_theta->callback([&] { action = [&] { k0_out(k0_serre_twist(k0_class())); }; });
  auto* k_ad = c_k0->add_subcommand("ad", "adjoint class");
  add_k0_args(k_ad);
  k_ad->callback([&] { action = [&] { k0_out(k0_adjoint(k0_class())); }; });
  for (const char* dir : {"push", "pull"}) {
    auto* k = c_k0->add_subcommand(dir, std::string(dir) + " along a maximal order of degree r");
    add_k0_args(k);
    k->add_option("--order", order_r, "degree r of the order")->required();
    k->add_option("--center-canonical", center_k, "canonical class of the center (default: K)");
    k->add_option("--center-chi", center_chi, "chi of the structure sheaf of the center (default: chi(O_X))");
    bool push = std::string(dir) == "push";
    k->callback([&, push] {
      action = [&, push] {
        const LatticeSignature& sig = surface().sig;
        OrderCenter z{order_r, center_k.empty() ? canonical_class(sig) : expr(center_k),
                      center_chi.value_or(chi_structure(sig))};
        k0_out(k0_order_transfer(k0_class(), push ? TransferDirection::push : TransferDirection::pull, z));
      };
    });
  }

  auto* c_iso = sub("isomonodromy", "number of isomonodromy parameters");
  c_iso->callback([&] {
    action = [&] {
      Int v = isomonodromy_count(surface());
      o.answer = v;
      o.text = std::to_string(v);
    };
  });

  // moduli dimensions
  auto* c_moduli = sub("moduli", "dimension formulas for moduli spaces");
  c_moduli->require_subcommand(1);
  auto* m_hilb = c_moduli->add_subcommand("hilb", "Hilbert scheme of n points, genus g base");
  m_hilb->add_option("N", a1)->required();
  m_hilb->add_option("G", a2)->required();
  m_hilb->callback([&] {
    action = [&] {
      Int v = hilb_dim(detail::parse_int_arg(a1, "n"), detail::parse_int_arg(a2, "g"));
      o.answer = v;
      o.text = std::to_string(v);
    };
  });
  auto* m_rank1 = c_moduli->add_subcommand("rank1", "bound on chi(I,I) for rank 1 classes");
  add_k0_args(m_rank1);
  m_rank1->callback([&] {
    action = [&] {
      Rank1Bound b = rank1_bound(k0_class());
      o.answer = json{{"bound", b.bound}, {"chi", b.chi_ii}, {"line_bundle", b.line_bundle}};
      o.text = "bound=" + std::to_string(b.bound) + " chi=" + std::to_string(b.chi_ii)
               + " line_bundle=" + detail::bool_text(b.line_bundle);
    };
  });
  auto* m_leaf = c_moduli->add_subcommand("leaf", "symplectic leaf dimension for sheaves disjoint from Q");
  add_k0_args(m_leaf);
  m_leaf->callback([&] {
    action = [&] {
      Int v = leaf_dim_disjoint(surface(), k0_class());
      o.answer = v;
      o.text = std::to_string(v);
    };
  });
  auto* m_stack = c_moduli->add_subcommand("stack", "dimension of the moduli stack of surfaces of this type");
  m_stack->callback([&] {
    action = [&] {
      Int v = moduli_stack_dim(surface().sig.g0, surface().sig.m);
      o.answer = v;
      o.text = std::to_string(v);
    };
  });

  std::string gen_ample;
  Int gen_bound = 0;
  auto* c_gen = sub("generators", "generators of the effective monoid up to Da-degree b");
  c_gen->add_option("--ample", gen_ample, "ample class Da")->required();
  c_gen->add_option("--bound", gen_bound, "degree bound b")->required();
  c_gen->callback([&] {
    action = [&] {
      std::vector<DivClass> gens = effective_generators(surface(), expr(gen_ample), gen_bound);
      o.answer = json::array();
      for (const DivClass& g : gens) {
        o.answer.push_back(render_class(g));
        o.text += (o.text.empty() ? "" : "\n") + render_class(g);
      }
    };
  });

  // operator checks
  auto* c_op = sub("opcheck", "verify operator identities");
  c_op->require_subcommand(1);
  auto* op_list = c_op->add_subcommand("list", "list case ids");
  op_list->callback([&] {
    action = [&] {
      o.answer = json::array();
      for (const auto& c : opcheck::case_catalog()) {
        o.answer.push_back(c.id);
        o.text += (o.text.empty() ? "" : "\n") + c.id + "  " + c.summary;
      }
    };
  });
  opcheck::CaseOptions copt;
  std::optional<std::uint64_t> op_prime;
  std::optional<int> op_n, op_size;
  auto* op_run = c_op->add_subcommand("run", "run one case");
  op_run->add_option("CASE", a1)->required();
  op_run->add_option("--prime", op_prime, "prime field (default: per case)");
  op_run->add_option("--trials", copt.trials, "random trials")->check(CLI::PositiveNumber);
  op_run->add_option("--seed", copt.seed, "seed");
  op_run->add_option("--n", op_n, "order for middle_convolution / lowering_degree");
  op_run->add_option("--size", op_size, "matrix size for additive_product (1-3)");
  op_run->add_flag("--symbolic", copt.symbolic, "exact symbolic parameters over Q");
  op_run->callback([&] {
    action = [&] {
      copt.prime = op_prime;
      copt.n = op_n;
      copt.size = op_size;
      opcheck::CaseReport r = opcheck::run_case(a1, copt);
      o.answer = r.verdict();
      o.text = r.verdict() + "  " + r.p_fail_text();
      o.p_fail = r.p_fail();
      o.witness = r.witness;
      if (r.witness)
        o.text += "  " + *r.witness;
      o.trace = r.lines;
    };
  });

  auto* c_preset = sub("preset", "built-in surfaces");
  c_preset->require_subcommand(1);
  auto* p_list = c_preset->add_subcommand("list", "list presets");
  p_list->callback([&] {
    action = [&] {
      o.answer = json::array();
      for (const Preset& p : presets()) {
        o.answer.push_back(p.name);
        o.text += (o.text.empty() ? "" : "\n") + p.name + "  " + p.description;
      }
    };
  });
  auto* p_show = c_preset->add_subcommand("show", "print a preset as a surface file");
  p_show->add_option("NAME", a1)->required();
  p_show->callback([&] {
    action = [&] {
      std::string desc;
      for (const Preset& p : presets())
        if (p.name == a1)
          desc = p.description;
      o.text = render_surface(preset(a1), a1, {desc});
      o.text.pop_back();
      o.answer = o.text;
    };
  });

  std::vector<std::string> args = detail::protect_negative_values(argc, argv);
  std::reverse(args.begin(), args.end());  // CLI11 takes them reversed
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  try {
    if (!action)
      throw InputError("no command given");
    action();
    print(o, as_json, with_trace, out);
    return 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}

} // namespace ncsurf::cli
