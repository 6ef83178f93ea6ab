#include "fibrep/comma.hpp"

#include <algorithm>

namespace fibrep {

namespace {

std::int64_t key2(std::int64_t a, std::int64_t b) { return (a << 32) | static_cast<std::uint32_t>(b); }

void require_object(const FiniteCategory& c, ObjId y, const char* op) {
  if (y < 0 || y >= static_cast<ObjId>(c.num_objects()))
    throw InputError(std::string(op) + ": unknown object");
}

// Comma morphisms are keyed by (anchor, w): the source object for Y\f, the
// target object for f\Y; in both cases that pair determines the morphism.
CommaCategory build_comma(const Functor& f, ObjId y, CommaSide side, const Budget& budget) {
  const auto& src = *f.source;
  const auto& tgt = *f.target;
  require_object(tgt, y, side == CommaSide::Under ? "comma_under" : "comma_over");
  CommaCategory cc;
  cc.side = side;
  cc.f = f;
  cc.y = y;
  CategoryBuilder b;
  std::vector<std::string> names;
  for (ObjId x = 0; x < static_cast<ObjId>(src.num_objects()); ++x) {
    auto vs = side == CommaSide::Under ? tgt.hom(y, f.obj(x)) : tgt.hom(f.obj(x), y);
    for (MorId v : vs) {
      names.push_back("<" + src.object_id(x) + "|" + tgt.morphism_id(v) + ">");
      ObjId o = b.add_object(names.back());
      cc.x_of.push_back(x);
      cc.v_of.push_back(v);
      cc.object_index.emplace(key2(x, v), o);
    }
  }
  std::vector<ObjId> anchor;
  for (ObjId o = 0; o < static_cast<ObjId>(cc.x_of.size()); ++o) {
    const ObjId x = cc.x_of[o];
    if (side == CommaSide::Under) {
      for (MorId w : src.outgoing(x)) {
        ObjId o2 = cc.object_index.at(key2(src.cod(w), tgt.compose(f.mor(w), cc.v_of[o])));
        MorId m = b.add_morphism(src.morphism_id(w) + "@" + names[o], o, o2);
        cc.w_of.push_back(w);
        anchor.push_back(o);
        if (w == src.identity(x)) b.set_identity(o, m);
      }
    } else {
      for (MorId w : src.incoming(x)) {
        ObjId o1 = cc.object_index.at(key2(src.dom(w), tgt.compose(cc.v_of[o], f.mor(w))));
        MorId m = b.add_morphism(src.morphism_id(w) + "@" + names[o], o1, o);
        cc.w_of.push_back(w);
        anchor.push_back(o);
        if (w == src.identity(x)) b.set_identity(o, m);
      }
    }
    budget.check(cc.w_of.size(), "comma category");
  }
  for (MorId m = 0; m < static_cast<MorId>(cc.w_of.size()); ++m)
    cc.morphism_index.emplace(key2(anchor[m], cc.w_of[m]), m);

  cc.category = b.build([&](MorId g, MorId h) {
    MorId w = src.compose(cc.w_of[g], cc.w_of[h]);
    ObjId a = side == CommaSide::Under ? b.dom(h) : b.cod(g);
    auto it = cc.morphism_index.find(key2(a, w));
    return it == cc.morphism_index.end() ? kNone : it->second;
  });
  cc.projection_j = Functor{cc.category, f.source, cc.x_of, cc.w_of};
  return cc;
}

}  // namespace

std::optional<ObjId> CommaCategory::find(ObjId x, MorId v) const {
  auto it = object_index.find(key2(x, v));
  if (it == object_index.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> CommaCategory::find_morphism(ObjId anchor, MorId w) const {
  auto it = morphism_index.find(key2(anchor, w));
  if (it == morphism_index.end()) return std::nullopt;
  return it->second;
}

CommaCategory comma_under(const Functor& f, ObjId y, const Budget& budget) {
  return build_comma(f, y, CommaSide::Under, budget);
}

CommaCategory comma_over(const Functor& f, ObjId y, const Budget& budget) {
  return build_comma(f, y, CommaSide::Over, budget);
}

CommaCategory under_category(CategoryPtr d, ObjId y, const Budget& budget) {
  return comma_under(identity_functor(std::move(d)), y, budget);
}

CommaCategory over_category(CategoryPtr d, ObjId y, const Budget& budget) {
  return comma_over(identity_functor(std::move(d)), y, budget);
}

Functor bracket_projection(const CommaCategory& comma, const CommaCategory& base_comma) {
  if (comma.side != base_comma.side || comma.y != base_comma.y)
    throw Error("bracket_projection: comma categories do not match");
  Functor p{comma.category, base_comma.category, {}, {}};
  for (ObjId o = 0; o < static_cast<ObjId>(comma.x_of.size()); ++o)
    p.on_objects.push_back(*base_comma.find(comma.f.obj(comma.x_of[o]), comma.v_of[o]));
  const auto& c = *comma.category;
  for (MorId m = 0; m < static_cast<MorId>(comma.w_of.size()); ++m) {
    ObjId anchor = comma.side == CommaSide::Under ? c.dom(m) : c.cod(m);
    p.on_morphisms.push_back(*base_comma.find_morphism(p.on_objects[anchor], comma.f.mor(comma.w_of[m])));
  }
  return p;
}

Fiber fiber(const Functor& f, ObjId y) {
  const auto& src = *f.source;
  const auto& tgt = *f.target;
  require_object(tgt, y, "fiber");
  Fiber fb;
  fb.f = f;
  fb.y = y;
  fb.object_to_sub.assign(src.num_objects(), kNone);
  fb.morphism_to_sub.assign(src.num_morphisms(), kNone);
  CategoryBuilder b;
  Functor inc{nullptr, f.source, {}, {}};
  for (ObjId x = 0; x < static_cast<ObjId>(src.num_objects()); ++x) {
    if (f.obj(x) != y) continue;
    fb.object_to_sub[x] = b.add_object(src.object_id(x));
    inc.on_objects.push_back(x);
  }
  const MorId idy = tgt.identity(y);
  for (MorId m = 0; m < static_cast<MorId>(src.num_morphisms()); ++m) {
    if (f.mor(m) != idy || fb.object_to_sub[src.dom(m)] == kNone) continue;
    fb.morphism_to_sub[m] =
        b.add_morphism(src.morphism_id(m), fb.object_to_sub[src.dom(m)], fb.object_to_sub[src.cod(m)]);
    inc.on_morphisms.push_back(m);
  }
  for (ObjId x : inc.on_objects) b.set_identity(fb.object_to_sub[x], fb.morphism_to_sub[src.identity(x)]);
  fb.category = b.build([&](MorId g, MorId h) {
    MorId gh = src.compose(inc.on_morphisms[g], inc.on_morphisms[h]);
    return gh == kNone ? kNone : fb.morphism_to_sub[gh];
  });
  inc.source = fb.category;
  fb.inclusion = std::move(inc);
  return fb;
}

Functor induced_under_map(const CommaCategory& under_y, const CommaCategory& under_y2, MorId v) {
  const auto& tgt = *under_y.f.target;
  if (under_y.side != CommaSide::Under || under_y2.side != CommaSide::Under)
    throw Error("induced_under_map: expects under comma categories");
  if (v < 0 || v >= static_cast<MorId>(tgt.num_morphisms()) || tgt.dom(v) != under_y.y ||
      tgt.cod(v) != under_y2.y)
    throw InputError("induced_under_map: v does not go from Y to Y'");
  Functor r{under_y2.category, under_y.category, {}, {}};
  for (ObjId o = 0; o < static_cast<ObjId>(under_y2.x_of.size()); ++o)
    r.on_objects.push_back(*under_y.find(under_y2.x_of[o], tgt.compose(under_y2.v_of[o], v)));
  for (MorId m = 0; m < static_cast<MorId>(under_y2.w_of.size()); ++m)
    r.on_morphisms.push_back(
        *under_y.find_morphism(r.on_objects[under_y2.category->dom(m)], under_y2.w_of[m]));
  return r;
}

Functor induced_over_map(const CommaCategory& over_y, const CommaCategory& over_y2, MorId v) {
  const auto& tgt = *over_y.f.target;
  if (over_y.side != CommaSide::Over || over_y2.side != CommaSide::Over)
    throw Error("induced_over_map: expects over comma categories");
  if (v < 0 || v >= static_cast<MorId>(tgt.num_morphisms()) || tgt.dom(v) != over_y.y ||
      tgt.cod(v) != over_y2.y)
    throw InputError("induced_over_map: v does not go from Y to Y'");
  Functor r{over_y.category, over_y2.category, {}, {}};
  for (ObjId o = 0; o < static_cast<ObjId>(over_y.x_of.size()); ++o)
    r.on_objects.push_back(*over_y2.find(over_y.x_of[o], tgt.compose(v, over_y.v_of[o])));
  for (MorId m = 0; m < static_cast<MorId>(over_y.w_of.size()); ++m)
    r.on_morphisms.push_back(
        *over_y2.find_morphism(r.on_objects[over_y.category->cod(m)], over_y.w_of[m]));
  return r;
}

Functor induced_under_map(const Functor& f, MorId v) {
  if (v < 0 || v >= static_cast<MorId>(f.target->num_morphisms()))
    throw InputError("induced_under_map: v is not a morphism of the target");
  auto a = comma_under(f, f.target->dom(v));
  auto b = comma_under(f, f.target->cod(v));
  return induced_under_map(a, b, v);
}

Functor induced_over_map(const Functor& f, MorId v) {
  if (v < 0 || v >= static_cast<MorId>(f.target->num_morphisms()))
    throw InputError("induced_over_map: v is not a morphism of the target");
  auto a = comma_over(f, f.target->dom(v));
  auto b = comma_over(f, f.target->cod(v));
  return induced_over_map(a, b, v);
}

namespace {

Functor fiber_inclusion(const Fiber& fib, const CommaCategory& comma) {
  if (comma.y != fib.y) throw Error("fiber inclusion: comma category over a different object");
  const MorId idy = fib.f.target->identity(fib.y);
  Functor r{fib.category, comma.category, {}, {}};
  for (ObjId x : fib.inclusion.on_objects) r.on_objects.push_back(*comma.find(x, idy));
  const auto& fc = *fib.category;
  for (MorId m = 0; m < static_cast<MorId>(fc.num_morphisms()); ++m) {
    ObjId anchor = comma.side == CommaSide::Under ? fc.dom(m) : fc.cod(m);
    r.on_morphisms.push_back(*comma.find_morphism(r.on_objects[anchor], fib.inclusion.mor(m)));
  }
  return r;
}

}  // namespace

Functor fiber_inclusion_under(const Fiber& fib, const CommaCategory& under_y) {
  return fiber_inclusion(fib, under_y);
}

Functor fiber_inclusion_over(const Fiber& fib, const CommaCategory& over_y) {
  return fiber_inclusion(fib, over_y);
}

std::optional<ObjId> Pullback::find_object(ObjId a, ObjId b) const {
  auto it = object_index.find(key2(a, b));
  if (it == object_index.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> Pullback::find_morphism(MorId u, MorId v) const {
  auto it = morphism_index.find(key2(u, v));
  if (it == morphism_index.end()) return std::nullopt;
  return it->second;
}

Pullback pullback(const Functor& a, const Functor& b, const Budget& budget) {
  if (!(a.target == b.target || same_category(*a.target, *b.target)))
    throw Error("pullback: functors have different targets");
  const auto& ca = *a.source;
  const auto& cb = *b.source;
  const auto& cc = *a.target;
  std::vector<std::vector<ObjId>> b_over(cc.num_objects());
  for (ObjId y = 0; y < static_cast<ObjId>(cb.num_objects()); ++y) b_over[b.obj(y)].push_back(y);
  std::vector<std::vector<MorId>> bm_over(cc.num_morphisms());
  for (MorId m = 0; m < static_cast<MorId>(cb.num_morphisms()); ++m) bm_over[b.mor(m)].push_back(m);

  Pullback p;
  CategoryBuilder bld;
  for (ObjId x = 0; x < static_cast<ObjId>(ca.num_objects()); ++x)
    for (ObjId y : b_over[a.obj(x)]) {
      ObjId o = bld.add_object("(" + ca.object_id(x) + "," + cb.object_id(y) + ")");
      p.objects.emplace_back(x, y);
      p.object_index.emplace(key2(x, y), o);
    }
  for (MorId u = 0; u < static_cast<MorId>(ca.num_morphisms()); ++u) {
    for (MorId v : bm_over[a.mor(u)]) {
      MorId m = bld.add_morphism("(" + ca.morphism_id(u) + "," + cb.morphism_id(v) + ")",
                                 p.object_index.at(key2(ca.dom(u), cb.dom(v))),
                                 p.object_index.at(key2(ca.cod(u), cb.cod(v))));
      p.morphisms.emplace_back(u, v);
      p.morphism_index.emplace(key2(u, v), m);
    }
    budget.check(p.morphisms.size(), "pullback category");
  }
  for (ObjId o = 0; o < static_cast<ObjId>(p.objects.size()); ++o) {
    auto [x, y] = p.objects[o];
    bld.set_identity(o, p.morphism_index.at(key2(ca.identity(x), cb.identity(y))));
  }
  p.category = bld.build([&](MorId g, MorId f) {
    MorId u = ca.compose(p.morphisms[g].first, p.morphisms[f].first);
    MorId v = cb.compose(p.morphisms[g].second, p.morphisms[f].second);
    if (u == kNone || v == kNone) return kNone;
    auto it = p.morphism_index.find(key2(u, v));
    return it == p.morphism_index.end() ? kNone : it->second;
  });
  p.proj_a = Functor{p.category, a.source, {}, {}};
  p.proj_b = Functor{p.category, b.source, {}, {}};
  for (auto [x, y] : p.objects) {
    p.proj_a.on_objects.push_back(x);
    p.proj_b.on_objects.push_back(y);
  }
  for (auto [u, v] : p.morphisms) {
    p.proj_a.on_morphisms.push_back(u);
    p.proj_b.on_morphisms.push_back(v);
  }
  return p;
}

Subcategory full_subcategory(CategoryPtr c, const std::vector<ObjId>& objects) {
  Subcategory s;
  s.object_to_sub.assign(c->num_objects(), kNone);
  s.morphism_to_sub.assign(c->num_morphisms(), kNone);
  CategoryBuilder b;
  Functor inc{nullptr, c, {}, {}};
  for (ObjId x : objects) {
    if (s.object_to_sub[x] != kNone) continue;
    s.object_to_sub[x] = b.add_object(c->object_id(x));
    inc.on_objects.push_back(x);
  }
  for (ObjId x : inc.on_objects)
    for (MorId m : c->outgoing(x)) {
      if (s.object_to_sub[c->cod(m)] == kNone) continue;
      s.morphism_to_sub[m] =
          b.add_morphism(c->morphism_id(m), s.object_to_sub[x], s.object_to_sub[c->cod(m)]);
      inc.on_morphisms.push_back(m);
    }
  for (ObjId x : inc.on_objects) b.set_identity(s.object_to_sub[x], s.morphism_to_sub[c->identity(x)]);
  s.category = b.build([&](MorId g, MorId f) {
    MorId gf = c->compose(inc.on_morphisms[g], inc.on_morphisms[f]);
    return gf == kNone ? kNone : s.morphism_to_sub[gf];
  });
  inc.source = s.category;
  s.inclusion = std::move(inc);
  return s;
}

Functor restrict_functor(const Functor& f, const Functor& source_inclusion, CategoryPtr target_sub,
                         const std::vector<ObjId>& target_object_to_sub,
                         const std::vector<MorId>& target_morphism_to_sub) {
  Functor r{source_inclusion.source, std::move(target_sub), {}, {}};
  for (ObjId x : source_inclusion.on_objects) {
    ObjId y = target_object_to_sub[f.obj(x)];
    if (y == kNone) throw Error("restrict_functor: object leaves the target subcategory");
    r.on_objects.push_back(y);
  }
  for (MorId m : source_inclusion.on_morphisms) {
    MorId y = target_morphism_to_sub[f.mor(m)];
    if (y == kNone) throw Error("restrict_functor: morphism leaves the target subcategory");
    r.on_morphisms.push_back(y);
  }
  return r;
}

}  // namespace fibrep
