#include "fibrep/path_functors.hpp"

namespace fibrep {

namespace {

template <class T>
T need(std::optional<T> v, const std::string& what) {
  if (!v) throw Error(what + ": image not present in the target stage");
  return *v;
}

void require_consecutive(int lo, int hi, Variant vlo, Variant vhi) {
  if (hi != lo + 1 || vlo != vhi) throw Error("stage mismatch: expected stages N and N+1 of one variant");
}

void require_consecutive(const ReplacementStage& lo, const ReplacementStage& hi) {
  require_consecutive(lo.max_stage, hi.max_stage, lo.variant, hi.variant);
  if (!functors_equal(lo.f, hi.f)) throw Error("stage mismatch: stages replace different functors");
}

ZigZag with_tail(ZigZag y, MorId forward, ObjId mid, MorId backward, ObjId bar) {
  y.objects.push_back(mid);
  y.objects.push_back(bar);
  y.arrows.push_back(forward);
  y.arrows.push_back(backward);
  return y;
}

std::vector<MorId> identities(const FiniteCategory& d, const ZigZag& y) {
  std::vector<MorId> ids;
  for (ObjId o : y.objects) ids.push_back(d.identity(o));
  return ids;
}

std::vector<MorId> with_last_twice(std::span<const MorId> t) {
  std::vector<MorId> r(t.begin(), t.end());
  r.push_back(t.back());
  r.push_back(t.back());
  return r;
}

// The image of phi: [m] -> [n] one stage up. In the strict variant m+1 goes
// to n+1; Delta_le only has i |-> i, so the appended tail of the shorter
// path is padded by the stage map instead.
MonotoneMap lift(const MonotoneMap& phi, Variant v) {
  return v == Variant::Strict ? extend_last(phi) : inclusion_map(phi.m + 1, phi.n + 1);
}

Functor restrict_to_fibers(const Functor& f, const Fiber& a, const Fiber& b) {
  return restrict_functor(f, a.inclusion, b.category, b.object_to_sub, b.morphism_to_sub);
}

ObjId sub_object(const Fiber& fb, ObjId parent, const char* what) {
  const ObjId s = fb.object_to_sub[parent];
  if (s == kNone) throw Error(std::string(what) + ": image leaves the fiber");
  return s;
}

MorId sub_morphism(const Fiber& fb, MorId parent, const char* what) {
  const MorId s = fb.morphism_to_sub[parent];
  if (s == kNone) throw Error(std::string(what) + ": image leaves the fiber");
  return s;
}

}  // namespace

Shift shift_functor(const PathCategoryStage& lo, const PathCategoryStage& hi) {
  require_consecutive(lo.max_stage, hi.max_stage, lo.variant, hi.variant);
  const auto& d = *lo.d;
  const auto& c = *lo.category();
  Shift s;
  s.inclusion = stage_inclusion(lo, hi);
  s.shift = Functor{lo.category(), hi.category(), {}, {}};
  for (ObjId o = 0; o < static_cast<ObjId>(c.num_objects()); ++o)
    s.shift.on_objects.push_back(need(hi.object(shift_zigzag(d, lo.path(o))), "shift"));
  for (MorId m = 0; m < static_cast<MorId>(c.num_morphisms()); ++m)
    s.shift.on_morphisms.push_back(need(hi.morphism(s.shift.obj(c.dom(m)), s.shift.obj(c.cod(m)),
                                                    lift(lo.phi(m), lo.variant), with_last_twice(lo.components(m))),
                                        "shift"));
  s.theta = NatTransformation{s.inclusion, s.shift, {}};
  for (ObjId o = 0; o < static_cast<ObjId>(c.num_objects()); ++o) {
    const int n = lo.length(o);
    const ObjId t = s.shift.obj(o);
    s.theta.components.push_back(need(
        hi.morphism(s.inclusion.obj(o), t, inclusion_map(n, n + 1), identities(d, hi.path(t))), "theta"));
  }
  return s;
}

Shift shift_functor(const ReplacementStage& lo, const ReplacementStage& hi) {
  require_consecutive(lo, hi);
  const auto& d = *lo.f.target;
  const auto& cs = *lo.f.source;
  const auto& c = *lo.category();
  Shift s;
  s.inclusion = stage_inclusion(lo, hi);
  s.shift = Functor{lo.category(), hi.category(), {}, {}};
  for (ObjId o = 0; o < static_cast<ObjId>(c.num_objects()); ++o)
    s.shift.on_objects.push_back(need(hi.object(lo.x_of(o), shift_zigzag(d, lo.path(o))), "shift"));
  for (MorId m = 0; m < static_cast<MorId>(c.num_morphisms()); ++m)
    s.shift.on_morphisms.push_back(
        need(hi.morphism(lo.w_of(m), s.shift.obj(c.dom(m)), s.shift.obj(c.cod(m)),
                         lift(lo.phi(m), lo.variant), with_last_twice(lo.components(m))),
             "shift"));
  s.theta = NatTransformation{s.inclusion, s.shift, {}};
  for (ObjId o = 0; o < static_cast<ObjId>(c.num_objects()); ++o) {
    const int n = lo.length(o);
    const ObjId t = s.shift.obj(o);
    s.theta.components.push_back(need(hi.morphism(cs.identity(lo.x_of(o)), s.inclusion.obj(o), t,
                                                  inclusion_map(n, n + 1), identities(d, hi.path(t))),
                                      "theta"));
  }
  return s;
}

Fiber stage_fiber(const ReplacementStage& st, ObjId y) { return fiber(st.f_h, y); }

Functor u_dagger(const ReplacementStage& lo, const Fiber& from, const ReplacementStage& hi, const Fiber& to,
                 MorId u) {
  const auto& d = *lo.f.target;
  if (u < 0 || u >= static_cast<MorId>(d.num_morphisms())) throw InputError("u_dagger: unknown morphism");
  if (d.dom(u) != from.y || d.cod(u) != to.y) throw Error("u_dagger: fibers do not match u");
  const ObjId y2 = to.y;
  const MorId id2 = d.identity(y2);
  const auto& fc = *from.category;
  Functor r{from.category, to.category, {}, {}};
  std::vector<ObjId> parent_image;
  for (ObjId x = 0; x < static_cast<ObjId>(fc.num_objects()); ++x) {
    const ObjId o = from.inclusion.obj(x);
    const ObjId img = need(hi.object(lo.x_of(o), with_tail(lo.path(o), u, y2, id2, y2)), "u_dagger");
    parent_image.push_back(img);
    r.on_objects.push_back(sub_object(to, img, "u_dagger"));
  }
  for (MorId g = 0; g < static_cast<MorId>(fc.num_morphisms()); ++g) {
    const MorId m = from.inclusion.mor(g);
    auto t = lo.components(m);
    std::vector<MorId> comps(t.begin(), t.end());
    comps.push_back(id2);
    comps.push_back(id2);
    const auto img = hi.morphism(lo.w_of(m), parent_image[fc.dom(g)], parent_image[fc.cod(g)],
                                 lift(lo.phi(m), lo.variant), comps);
    r.on_morphisms.push_back(img ? sub_morphism(to, *img, "u_dagger") : kNone);
  }
  return r;
}

Functor u_dagger_up(const ReplacementStage& st, const Fiber& from, const Fiber& to, MorId u) {
  const auto& d = *st.f.target;
  if (u < 0 || u >= static_cast<MorId>(d.num_morphisms())) throw InputError("u_dagger_up: unknown morphism");
  if (d.dom(u) != to.y || d.cod(u) != from.y) throw Error("u_dagger_up: fibers do not match u");
  const ObjId y = to.y;
  const auto& fc = *from.category;
  Functor r{from.category, to.category, {}, {}};
  std::vector<ObjId> parent_image;
  for (ObjId x = 0; x < static_cast<ObjId>(fc.num_objects()); ++x) {
    const ObjId o = from.inclusion.obj(x);
    ZigZag p = st.path(o);
    p.objects.back() = y;
    p.arrows.back() = d.compose(p.arrows.back(), u);
    const ObjId img = need(st.object(st.x_of(o), p), "u_dagger_up");
    parent_image.push_back(img);
    r.on_objects.push_back(sub_object(to, img, "u_dagger_up"));
  }
  for (MorId g = 0; g < static_cast<MorId>(fc.num_morphisms()); ++g) {
    const MorId m = from.inclusion.mor(g);
    const auto& phi = st.phi(m);
    const auto s = position_map(phi);
    auto t = st.components(m);
    std::vector<MorId> comps(t.begin(), t.end());
    for (std::size_t p = 0; p < comps.size(); ++p)
      if (s[p] == 2 * phi.m) comps[p] = d.compose(comps[p], u);
    comps.back() = d.identity(y);
    const MorId img =
        need(st.morphism(st.w_of(m), parent_image[fc.dom(g)], parent_image[fc.cod(g)], phi, comps), "u_dagger_up");
    r.on_morphisms.push_back(sub_morphism(to, img, "u_dagger_up"));
  }
  return r;
}

Transport transport(const ReplacementStage& lo, const ReplacementStage& hi, MorId u) {
  require_consecutive(lo, hi);
  const auto& d = *lo.f.target;
  const auto& cs = *lo.f.source;
  if (u < 0 || u >= static_cast<MorId>(d.num_morphisms())) throw InputError("transport: unknown morphism");
  Transport tr;
  tr.u = u;
  tr.y = d.dom(u);
  tr.y2 = d.cod(u);
  tr.fiber_y_lo = stage_fiber(lo, tr.y);
  tr.fiber_y_hi = stage_fiber(hi, tr.y);
  tr.fiber_y2_lo = stage_fiber(lo, tr.y2);
  tr.fiber_y2_hi = stage_fiber(hi, tr.y2);
  tr.incl_y = inclusion_by_ids(tr.fiber_y_lo.category, tr.fiber_y_hi.category);
  tr.incl_y2 = inclusion_by_ids(tr.fiber_y2_lo.category, tr.fiber_y2_hi.category);
  tr.lower = u_dagger(lo, tr.fiber_y_lo, hi, tr.fiber_y2_hi, u);
  tr.upper_lo = u_dagger_up(lo, tr.fiber_y2_lo, tr.fiber_y_lo, u);
  tr.upper_hi = u_dagger_up(hi, tr.fiber_y2_hi, tr.fiber_y_hi, u);
  tr.shift_y2 = restrict_to_fibers(shift_functor(lo, hi).shift, tr.fiber_y2_lo, tr.fiber_y2_hi);

  const MorId idy = d.identity(tr.y);
  tr.theta1 = NatTransformation{tr.incl_y, compose_functors(tr.upper_hi, tr.lower), {}};
  const auto& fy = *tr.fiber_y_lo.category;
  for (ObjId x = 0; x < static_cast<ObjId>(fy.num_objects()); ++x) {
    const ObjId o = tr.fiber_y_lo.inclusion.obj(x);
    const auto& path = lo.path(o);
    const int n = path.length();
    const ObjId src = tr.fiber_y_hi.inclusion.obj(tr.incl_y.obj(x));
    const ObjId tgt = tr.fiber_y_hi.inclusion.obj(tr.theta1.to.obj(x));
    auto comps = identities(d, path);
    comps.push_back(u);
    comps.push_back(idy);
    const MorId m = need(hi.morphism(cs.identity(lo.x_of(o)), src, tgt, inclusion_map(n, n + 1), comps), "theta1");
    tr.theta1.components.push_back(sub_morphism(tr.fiber_y_hi, m, "theta1"));
  }

  tr.theta2 = NatTransformation{compose_functors(tr.lower, tr.upper_lo), tr.shift_y2, {}};
  const auto& fy2 = *tr.fiber_y2_lo.category;
  for (ObjId x = 0; x < static_cast<ObjId>(fy2.num_objects()); ++x) {
    const ObjId o = tr.fiber_y2_lo.inclusion.obj(x);
    const int n = lo.length(o);
    const ObjId src = tr.fiber_y2_hi.inclusion.obj(tr.theta2.from.obj(x));
    const ObjId tgt = tr.fiber_y2_hi.inclusion.obj(tr.theta2.to.obj(x));
    auto comps = identities(d, hi.path(tgt));
    comps[2 * n] = u;
    const MorId m = need(hi.morphism(cs.identity(lo.x_of(o)), src, tgt, identity_map(n + 1), comps), "theta2");
    tr.theta2.components.push_back(sub_morphism(tr.fiber_y2_hi, m, "theta2"));
  }
  return tr;
}

EllY ell_y(const ReplacementStage& lo, const ReplacementStage& hi, ObjId y, const Budget& budget) {
  require_consecutive(lo, hi);
  const auto& d = *lo.f.target;
  const auto& cs = *lo.f.source;
  if (y < 0 || y >= static_cast<ObjId>(d.num_objects())) throw InputError("ell_y: unknown object");
  EllY e;
  e.y = y;
  e.fiber_lo = stage_fiber(lo, y);
  e.fiber_hi = stage_fiber(hi, y);
  e.comma_lo = comma_over(lo.f_h, y, budget);
  e.comma_hi = comma_over(hi.f_h, y, budget);
  e.comma_inclusion = inclusion_by_ids(e.comma_lo.category, e.comma_hi.category);
  e.j_lo = fiber_inclusion_over(e.fiber_lo, e.comma_lo);
  e.j_hi = fiber_inclusion_over(e.fiber_hi, e.comma_hi);
  e.shift_fiber = restrict_to_fibers(shift_functor(lo, hi).shift, e.fiber_lo, e.fiber_hi);

  const MorId idy = d.identity(y);
  const auto& cc = *e.comma_lo.category;
  e.ell = Functor{e.comma_lo.category, e.fiber_hi.category, {}, {}};
  std::vector<ObjId> parent_image;
  for (ObjId c = 0; c < static_cast<ObjId>(cc.num_objects()); ++c) {
    const ObjId o = e.comma_lo.x_of[c];
    const ObjId img = need(hi.object(lo.x_of(o), with_tail(lo.path(o), e.comma_lo.v_of[c], y, idy, y)), "ell_Y");
    parent_image.push_back(img);
    e.ell.on_objects.push_back(sub_object(e.fiber_hi, img, "ell_Y"));
  }
  for (MorId g = 0; g < static_cast<MorId>(cc.num_morphisms()); ++g) {
    const MorId m = e.comma_lo.w_of[g];
    auto t = lo.components(m);
    std::vector<MorId> comps(t.begin(), t.end());
    comps.push_back(idy);
    comps.push_back(idy);
    const auto img = hi.morphism(lo.w_of(m), parent_image[cc.dom(g)], parent_image[cc.cod(g)],
                                 lift(lo.phi(m), lo.variant), comps);
    e.ell.on_morphisms.push_back(img ? sub_morphism(e.fiber_hi, *img, "ell_Y") : kNone);
  }

  e.omega = NatTransformation{e.comma_inclusion, compose_functors(e.j_hi, e.ell), {}};
  for (ObjId c = 0; c < static_cast<ObjId>(cc.num_objects()); ++c) {
    const ObjId o = e.comma_lo.x_of[c];
    const MorId s = e.comma_lo.v_of[c];
    const auto& path = lo.path(o);
    const int n = path.length();
    const ObjId src = e.comma_hi.x_of[e.comma_inclusion.obj(c)];
    auto comps = identities(d, path);
    comps.push_back(s);
    comps.push_back(s);
    const MorId m = need(hi.morphism(cs.identity(lo.x_of(o)), src, parent_image[c], inclusion_map(n, n + 1), comps),
                         "omega");
    e.omega.components.push_back(need(e.comma_hi.find_morphism(e.omega.to.obj(c), m), "omega"));
  }
  return e;
}

CheckReport check_ell_identity(const EllY& e) {
  CheckReport r;
  auto lj = compose_functors(e.ell, e.j_lo);
  if (!functors_equal(lj, e.shift_fiber)) r.fail("ell_Y∘j_Y = T_f", functor_difference(lj, e.shift_fiber));
  return r;
}

}  // namespace fibrep
