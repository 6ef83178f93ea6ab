#include "fibrep/theorem_b.hpp"

#include <map>

#include "fibrep/evrard.hpp"
#include "fibrep/homology.hpp"
#include "fibrep/path_functors.hpp"

namespace fibrep {

namespace {

std::optional<ExtremalObject> find_extremal(const FiniteCategory& c, bool terminal) {
  const auto n = static_cast<ObjId>(c.num_objects());
  for (ObjId t = 0; t < n; ++t) {
    ExtremalObject e{t, {}};
    bool ok = true;
    for (ObjId x = 0; x < n && ok; ++x) {
      const std::size_t h = terminal ? c.hom(x, t).size() : c.hom(t, x).size();
      e.hom_sizes.push_back(h);
      ok = h == 1;
    }
    if (ok) return e;
  }
  return std::nullopt;
}

// The unique comma morphism a -> b (the universal property guarantees it).
MorId unique_hom(const CommaCategory& k, ObjId a, ObjId b) {
  auto h = k.category->hom(a, b);
  if (h.size() != 1) throw Error("adjoint search: universal arrow is not unique");
  return h.front();
}

void check_triangle(CheckReport& r, const FiniteCategory& c, MorId lhs, ObjId at, const char* which) {
  if (lhs == kNone || lhs != c.identity(at)) r.fail(which, c.object_id(at));
}

std::string name_of(const FiniteCategory& c, ObjId x) { return c.object_id(x); }

// Run `body`, turning construction errors into failures of `law`; budget and
// input errors still propagate.
template <class F>
void guarded(CheckReport& r, const std::string& law, F&& body) {
  try {
    body();
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    r.fail(law, e.what());
  }
}

}  // namespace

std::optional<ExtremalObject> find_terminal(const FiniteCategory& c) { return find_extremal(c, true); }
std::optional<ExtremalObject> find_initial(const FiniteCategory& c) { return find_extremal(c, false); }

AdjointSearchResult find_right_adjoint(const Functor& f, const Budget& budget) {
  const auto& c = *f.source;
  const auto& d = *f.target;
  AdjointSearchResult res;
  res.right = true;
  std::vector<CommaCategory> commas;
  std::vector<ObjId> terminal;
  for (ObjId y = 0; y < static_cast<ObjId>(d.num_objects()); ++y) {
    commas.push_back(comma_over(f, y, budget));
    auto t = find_terminal(*commas.back().category);
    if (!t) {
      res.witness = y;
      return res;
    }
    terminal.push_back(t->object);
  }
  res.found = true;
  res.adjoint = Functor{f.target, f.source, {}, {}};
  for (ObjId y = 0; y < static_cast<ObjId>(d.num_objects()); ++y) {
    res.adjoint.on_objects.push_back(commas[y].x_of[terminal[y]]);
    res.universal.push_back(commas[y].v_of[terminal[y]]);
  }
  for (MorId g = 0; g < static_cast<MorId>(d.num_morphisms()); ++g) {
    const ObjId y = d.dom(g), y2 = d.cod(g);
    const auto& k = commas[y2];
    auto a = k.find(res.adjoint.obj(y), d.compose(g, res.universal[y]));
    if (!a) throw Error("adjoint search: composite counit missing from the comma category");
    res.adjoint.on_morphisms.push_back(k.w_of[unique_hom(k, *a, terminal[y2])]);
  }
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x) {
    const auto& k = commas[f.obj(x)];
    auto a = k.find(x, d.identity(f.obj(x)));
    if (!a) throw Error("adjoint search: identity arrow missing from the comma category");
    res.unit.push_back(k.w_of[unique_hom(k, *a, terminal[f.obj(x)])]);
  }

  auto& r = res.report;
  r.absorb(validate_functor(res.adjoint), "adjoint");
  if (!r.passed()) return res;
  const auto fg = compose_functors(f, res.adjoint);
  const auto gf = compose_functors(res.adjoint, f);
  r.absorb(validate_nat_trans(NatTransformation{fg, identity_functor(f.target), res.universal}), "counit");
  r.absorb(validate_nat_trans(NatTransformation{identity_functor(f.source), gf, res.unit}), "unit");
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x)
    check_triangle(r, d, d.compose(res.universal[f.obj(x)], f.mor(res.unit[x])), f.obj(x), "triangle eps_F∘F(eta)");
  for (ObjId y = 0; y < static_cast<ObjId>(d.num_objects()); ++y) {
    const ObjId gy = res.adjoint.obj(y);
    check_triangle(r, c, c.compose(res.adjoint.mor(res.universal[y]), res.unit[gy]), gy, "triangle G(eps)∘eta_G");
  }
  return res;
}

AdjointSearchResult find_left_adjoint(const Functor& f, const Budget& budget) {
  const auto& c = *f.source;
  const auto& d = *f.target;
  AdjointSearchResult res;
  res.right = false;
  std::vector<CommaCategory> commas;
  std::vector<ObjId> initial;
  for (ObjId y = 0; y < static_cast<ObjId>(d.num_objects()); ++y) {
    commas.push_back(comma_under(f, y, budget));
    auto t = find_initial(*commas.back().category);
    if (!t) {
      res.witness = y;
      return res;
    }
    initial.push_back(t->object);
  }
  res.found = true;
  res.adjoint = Functor{f.target, f.source, {}, {}};
  for (ObjId y = 0; y < static_cast<ObjId>(d.num_objects()); ++y) {
    res.adjoint.on_objects.push_back(commas[y].x_of[initial[y]]);
    res.universal.push_back(commas[y].v_of[initial[y]]);
  }
  for (MorId g = 0; g < static_cast<MorId>(d.num_morphisms()); ++g) {
    const ObjId y = d.dom(g), y2 = d.cod(g);
    const auto& k = commas[y];
    auto b = k.find(res.adjoint.obj(y2), d.compose(res.universal[y2], g));
    if (!b) throw Error("adjoint search: composite unit missing from the comma category");
    res.adjoint.on_morphisms.push_back(k.w_of[unique_hom(k, initial[y], *b)]);
  }
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x) {
    const auto& k = commas[f.obj(x)];
    auto b = k.find(x, d.identity(f.obj(x)));
    if (!b) throw Error("adjoint search: identity arrow missing from the comma category");
    res.unit.push_back(k.w_of[unique_hom(k, initial[f.obj(x)], *b)]);
  }

  auto& r = res.report;
  r.absorb(validate_functor(res.adjoint), "adjoint");
  if (!r.passed()) return res;
  const auto fl = compose_functors(f, res.adjoint);
  const auto lf = compose_functors(res.adjoint, f);
  r.absorb(validate_nat_trans(NatTransformation{identity_functor(f.target), fl, res.universal}), "unit");
  r.absorb(validate_nat_trans(NatTransformation{lf, identity_functor(f.source), res.unit}), "counit");
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x)
    check_triangle(r, d, d.compose(f.mor(res.unit[x]), res.universal[f.obj(x)]), f.obj(x), "triangle F(eps)∘eta_F");
  for (ObjId y = 0; y < static_cast<ObjId>(d.num_objects()); ++y) {
    const ObjId ly = res.adjoint.obj(y);
    check_triangle(r, c, c.compose(res.unit[ly], res.adjoint.mor(res.universal[y])), ly, "triangle eps_L∘L(eta)");
  }
  return res;
}

namespace {

FibredSearch fibred_search(const Functor& f, bool cofibred, const Budget& budget) {
  FibredSearch s;
  s.f = f;
  s.cofibred = cofibred;
  for (ObjId y = 0; y < static_cast<ObjId>(f.target->num_objects()); ++y) {
    s.fibers.push_back(fiber(f, y));
    if (cofibred) {
      s.commas.push_back(comma_over(f, y, budget));
      s.inclusions.push_back(fiber_inclusion_over(s.fibers.back(), s.commas.back()));
      s.adjoints.push_back(find_left_adjoint(s.inclusions.back(), budget));
    } else {
      s.commas.push_back(comma_under(f, y, budget));
      s.inclusions.push_back(fiber_inclusion_under(s.fibers.back(), s.commas.back()));
      s.adjoints.push_back(find_right_adjoint(s.inclusions.back(), budget));
    }
    const auto& a = s.adjoints.back();
    if (s.witness == kNone && !(a.found && a.report.passed())) s.witness = y;
  }
  return s;
}

void require_search(const FibredSearch& s, bool cofibred, ObjId y, const char* what) {
  if (s.cofibred != cofibred) throw Error(std::string(what) + ": search result of the wrong kind");
  const auto& a = s.adjoints[y];
  if (!a.found || !a.report.passed())
    throw Error(std::string(what) + ": " + (cofibred ? "j_Y has no left adjoint" : "i_Y has no right adjoint") +
                " at Y = " + s.f.target->object_id(y));
}

}  // namespace

FibredSearch is_prefibred(const Functor& f, const Budget& budget) { return fibred_search(f, false, budget); }
FibredSearch is_precofibred(const Functor& f, const Budget& budget) { return fibred_search(f, true, budget); }

Functor base_change(const FibredSearch& s, MorId v, const Budget&) {
  const auto& d = *s.f.target;
  if (v < 0 || v >= static_cast<MorId>(d.num_morphisms())) throw InputError("base_change: unknown morphism");
  const ObjId y = d.dom(v), y2 = d.cod(v);
  require_search(s, false, y, "base_change");
  const auto bracket = induced_under_map(s.commas[y], s.commas[y2], v);
  return compose_functors(s.adjoints[y].adjoint, compose_functors(bracket, s.inclusions[y2]));
}

Functor cobase_change(const FibredSearch& s, MorId v, const Budget&) {
  const auto& d = *s.f.target;
  if (v < 0 || v >= static_cast<MorId>(d.num_morphisms())) throw InputError("cobase_change: unknown morphism");
  const ObjId y = d.dom(v), y2 = d.cod(v);
  require_search(s, true, y2, "cobase_change");
  const auto bracket = induced_over_map(s.commas[y], s.commas[y2], v);
  return compose_functors(s.adjoints[y2].adjoint, compose_functors(bracket, s.inclusions[y]));
}

bool TheoremBReport::passed() const {
  for (const auto& e : entries)
    if (!e.quasi_iso.passed()) return false;
  return true;
}

CheckReport TheoremBReport::summary() const {
  CheckReport r;
  for (const auto& e : entries)
    r.absorb(e.quasi_iso, "v = " + describe_morphism(*f.target, e.v));
  return r;
}

namespace {

void require_loop_free(const Functor& f, const TheoremBOptions& opt, const char* what) {
  if (!opt.allow_loops && !is_loop_free(*f.target))
    throw InputError(std::string(what) + ": target category has non-identity cycles (override with allow_loops)");
}

TheoremBReport start_report(const Functor& f, const TheoremBOptions& opt, const char* check) {
  auto v = validate_functor(f);
  if (!v.passed()) throw CheckFailed(std::string(check) + ": not a functor", v);
  TheoremBReport rep;
  rep.check = check;
  rep.f = f;
  rep.degree = opt.degree;
  rep.dual = opt.dual;
  return rep;
}

}  // namespace

TheoremBReport check_theorem_b_hypothesis(const Functor& f, const TheoremBOptions& opt) {
  auto rep = start_report(f, opt, "theorem-b");
  require_loop_free(f, opt, "check_theorem_b_hypothesis");
  const auto& d = *f.target;
  std::vector<CommaCategory> commas;
  for (ObjId y = 0; y < static_cast<ObjId>(d.num_objects()); ++y)
    commas.push_back(opt.dual ? comma_over(f, y, opt.budget) : comma_under(f, y, opt.budget));
  for (MorId v = 0; v < static_cast<MorId>(d.num_morphisms()); ++v) {
    TheoremBEntry e;
    e.v = v;
    if (d.is_identity(v)) {
      e.forced = true;
      e.quasi_iso.note("identity: [id] = id");
      rep.entries.push_back(std::move(e));
      continue;
    }
    const ObjId y = d.dom(v), y2 = d.cod(v);
    const Functor m = opt.dual ? induced_over_map(commas[y], commas[y2], v)
                               : induced_under_map(commas[y], commas[y2], v);
    e.source_objects = m.source->num_objects();
    e.target_objects = m.target->num_objects();
    e.quasi_iso = is_quasi_iso(m, opt.degree);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

TheoremBReport check_corollary_hypothesis(const Functor& f, const TheoremBOptions& opt) {
  auto rep = start_report(f, opt, "corollary-b");
  require_loop_free(f, opt, "check_corollary_hypothesis");
  const auto s = opt.dual ? is_precofibred(f, opt.budget) : is_prefibred(f, opt.budget);
  if (!s.found())
    throw Error(std::string(opt.dual ? "not precofibred" : "not prefibred") + ": no adjoint at Y = " +
                f.target->object_id(s.witness));
  const auto& d = *f.target;
  for (MorId v = 0; v < static_cast<MorId>(d.num_morphisms()); ++v) {
    TheoremBEntry e;
    e.v = v;
    if (d.is_identity(v)) {
      e.forced = true;
      e.quasi_iso.note("identity: base change of id is isomorphic to id");
      rep.entries.push_back(std::move(e));
      continue;
    }
    const Functor m = opt.dual ? cobase_change(s, v, opt.budget) : base_change(s, v, opt.budget);
    e.source_objects = m.source->num_objects();
    e.target_objects = m.target->num_objects();
    auto valid = validate_functor(m);
    e.quasi_iso = valid.passed() ? is_quasi_iso(m, opt.degree) : valid;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Unstable:
      return "unstable at N";
  }
  return "?";
}

namespace {

HomologicalLayer homological_layer(const ReplacementStage& st, int k, const Budget& budget) {
  HomologicalLayer h;
  h.stage = st.max_stage;
  TheoremBOptions opt;
  opt.degree = k;
  opt.budget = budget;
  h.theorem_b = check_theorem_b_hypothesis(st.f_h, opt);
  h.theorem_b.stage = std::to_string(st.max_stage) + " " + to_string(st.variant);
  const auto& d = *st.f.target;
  auto answer = [&](const std::string& name, const CheckReport& r) {
    h.answers.push_back(name + (r.passed() ? " pass" : " fail"));
    h.report.absorb(r, name);
  };
  for (const auto& e : h.theorem_b.entries)
    if (!e.forced) answer("[v*] for v = " + describe_morphism(d, e.v), e.quasi_iso);
  h.q_quasi_iso = is_quasi_iso(st.q, k);
  answer("q", h.q_quasi_iso);
  for (int n = 1; n <= st.max_stage; ++n) {
    h.lambda_quasi_iso.push_back(is_quasi_iso(st.paths->levels[n - 1]->p1, k));
    answer("p1 on Lambda_" + std::to_string(n), h.lambda_quasi_iso.back());
  }
  return h;
}

void witness_layer(CheckReport& r, const ReplacementStage& lo, const ReplacementStage& hi,
                   const std::vector<EllY>& ells, const Budget& budget) {
  const auto& d = *lo.f.target;
  guarded(r, "T_f", [&] {
    const auto sh = shift_functor(lo, hi);
    r.absorb(validate_functor(sh.shift), "T_f");
    r.absorb(validate_nat_trans(sh.theta), "theta");
  });
  for (MorId u = 0; u < static_cast<MorId>(d.num_morphisms()); ++u) {
    const std::string at = " (u = " + describe_morphism(d, u) + ")";
    guarded(r, "transport" + at, [&] {
      const auto tr = transport(lo, hi, u);
      r.absorb(validate_functor(tr.lower), "u_dagger" + at);
      r.absorb(validate_functor(tr.upper_lo), "u^dagger" + at);
      r.absorb(validate_functor(tr.upper_hi), "u^dagger one stage up" + at);
      r.absorb(validate_nat_trans(tr.theta1), "theta1" + at);
      r.absorb(validate_nat_trans(tr.theta2), "theta2" + at);
    });
  }
  for (const auto& e : ells) {
    const std::string at = " (Y = " + d.object_id(e.y) + ")";
    r.absorb(validate_functor(e.ell), "l_Y" + at);
    r.absorb(validate_nat_trans(e.omega), "omega" + at);
  }
  guarded(r, "iq witness", [&] {
    const auto iq = iq_homotopy_witness(lo, budget);
    r.absorb(iq.issues, "iq witness");
    if (iq.built()) r.absorb(check_evrard_homotopy(iq.witness), "iq witness");
  });
}

}  // namespace

EvrardReport verify_evrard_replacement(const Functor& f, const EvrardOptions& opt) {
  if (opt.max_stage < 1) throw InputError("verify_evrard_replacement: max stage must be at least 1");
  if (opt.degree < 0) throw InputError("verify_evrard_replacement: degree must be non-negative");
  auto valid = validate_functor(f);
  if (!valid.passed()) throw CheckFailed("verify_evrard_replacement: not a functor", valid);
  if (!is_loop_free(*f.target))
    throw InputError("verify_evrard_replacement: target category has non-identity cycles");

  EvrardReport rep;
  rep.f = f;
  rep.max_stage = opt.max_stage;
  rep.degree = opt.degree;
  rep.variant = opt.variant;
  const auto lo = build_replacement(f, opt.max_stage, opt.variant, opt.budget);
  const auto hi = build_replacement(f, opt.max_stage + 1, opt.variant, opt.budget);
  rep.stage_objects = lo.category()->num_objects();
  rep.stage_morphisms = lo.category()->num_morphisms();

  rep.strict.absorb(check_replacement_identities(lo), "stage " + std::to_string(opt.max_stage));
  const auto& d = *f.target;
  std::vector<EllY> ells;
  for (ObjId y = 0; y < static_cast<ObjId>(d.num_objects()); ++y) {
    guarded(rep.strict, "l_Y (Y = " + d.object_id(y) + ")", [&] {
      ells.push_back(ell_y(lo, hi, y, opt.budget));
      rep.strict.absorb(check_ell_identity(ells.back()), "Y = " + d.object_id(y));
    });
  }
  witness_layer(rep.witnesses, lo, hi, ells, opt.budget);

  rep.homological = homological_layer(lo, opt.degree, opt.budget);
  if (opt.probe) {
    rep.probe = homological_layer(hi, opt.degree, opt.budget);
    std::map<std::string, std::string> upper;
    for (const auto& a : rep.probe.answers) {
      const auto cut = a.rfind(' ');
      upper[a.substr(0, cut)] = a.substr(cut + 1);
    }
    for (const auto& a : rep.homological.answers) {
      const auto cut = a.rfind(' ');
      const auto name = a.substr(0, cut), here = a.substr(cut + 1);
      auto it = upper.find(name);
      if (it != upper.end() && it->second != here)
        rep.stability.fail("unstable at N", name + ": " + here + " at N, " + it->second + " at N+1");
    }
  }

  if (!rep.strict.passed() || !rep.witnesses.passed())
    rep.verdict = Verdict::Fail;
  else if (!rep.stability.passed())
    rep.verdict = Verdict::Unstable;
  else
    rep.verdict = rep.homological.report.passed() ? Verdict::Pass : Verdict::Fail;
  return rep;
}

}  // namespace fibrep
