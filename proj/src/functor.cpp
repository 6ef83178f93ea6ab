#include "fibrep/functor.hpp"

namespace fibrep {

namespace {

bool same_cat(const CategoryPtr& a, const CategoryPtr& b) {
  return a == b || (a && b && same_category(*a, *b));
}

}  // namespace

bool functors_equal(const Functor& a, const Functor& b) {
  return same_cat(a.source, b.source) && same_cat(a.target, b.target) &&
         a.on_objects == b.on_objects && a.on_morphisms == b.on_morphisms;
}

std::string functor_difference(const Functor& a, const Functor& b) {
  if (!same_cat(a.source, b.source)) return "different source categories";
  if (!same_cat(a.target, b.target)) return "different target categories";
  const auto& s = *a.source;
  const auto& t = *a.target;
  auto oname = [&](ObjId y) { return y == kNone ? std::string("undefined") : t.object_id(y); };
  auto mname = [&](MorId y) { return y == kNone ? std::string("undefined") : t.morphism_id(y); };
  for (ObjId x = 0; x < static_cast<ObjId>(s.num_objects()); ++x)
    if (a.on_objects[x] != b.on_objects[x])
      return "object " + s.object_id(x) + ": " + oname(a.on_objects[x]) + " vs " +
             oname(b.on_objects[x]);
  for (MorId f = 0; f < static_cast<MorId>(s.num_morphisms()); ++f)
    if (a.on_morphisms[f] != b.on_morphisms[f])
      return "morphism " + s.morphism_id(f) + ": " + mname(a.on_morphisms[f]) + " vs " +
             mname(b.on_morphisms[f]);
  return {};
}

Functor identity_functor(CategoryPtr c) {
  Functor f{c, c, {}, {}};
  f.on_objects.resize(c->num_objects());
  f.on_morphisms.resize(c->num_morphisms());
  for (ObjId x = 0; x < static_cast<ObjId>(c->num_objects()); ++x) f.on_objects[x] = x;
  for (MorId m = 0; m < static_cast<MorId>(c->num_morphisms()); ++m) f.on_morphisms[m] = m;
  return f;
}

Functor constant_functor(CategoryPtr source, CategoryPtr target, ObjId y) {
  Functor f{source, target, {}, {}};
  f.on_objects.assign(source->num_objects(), y);
  f.on_morphisms.assign(source->num_morphisms(), target->identity(y));
  return f;
}

Functor compose_functors(const Functor& g, const Functor& f) {
  if (!same_cat(f.target, g.source))
    throw Error("compose_functors: target of the inner functor is not the source of the outer one");
  Functor r{f.source, g.target, {}, {}};
  r.on_objects.resize(f.on_objects.size());
  r.on_morphisms.resize(f.on_morphisms.size());
  for (std::size_t x = 0; x < f.on_objects.size(); ++x)
    r.on_objects[x] = f.on_objects[x] == kNone ? kNone : g.on_objects[f.on_objects[x]];
  for (std::size_t m = 0; m < f.on_morphisms.size(); ++m)
    r.on_morphisms[m] = f.on_morphisms[m] == kNone ? kNone : g.on_morphisms[f.on_morphisms[m]];
  return r;
}

NatTransformation identity_transformation(const Functor& f) {
  NatTransformation h{f, f, {}};
  h.components.resize(f.on_objects.size());
  for (std::size_t x = 0; x < f.on_objects.size(); ++x)
    h.components[x] = f.on_objects[x] == kNone ? kNone : f.target->identity(f.on_objects[x]);
  return h;
}

CheckReport validate_functor(const Functor& f) {
  CheckReport r;
  if (!f.source || !f.target) {
    r.fail("missing category", "source or target is null");
    return r;
  }
  const auto& s = *f.source;
  const auto& t = *f.target;
  const auto nobj = static_cast<ObjId>(s.num_objects());
  const auto nmor = static_cast<MorId>(s.num_morphisms());
  if (f.on_objects.size() != s.num_objects() || f.on_morphisms.size() != s.num_morphisms()) {
    r.fail("map size", "maps do not cover the source category");
    return r;
  }
  bool total = true;
  for (ObjId x = 0; x < nobj; ++x) {
    ObjId y = f.on_objects[x];
    if (y == kNone || y < 0 || y >= static_cast<ObjId>(t.num_objects())) {
      r.fail("object map not total", s.object_id(x));
      total = false;
    }
  }
  for (MorId m = 0; m < nmor; ++m) {
    MorId y = f.on_morphisms[m];
    if (y == kNone || y < 0 || y >= static_cast<MorId>(t.num_morphisms())) {
      r.fail("morphism map not total", s.morphism_id(m));
      total = false;
    }
  }
  if (!total) return r;
  for (MorId m = 0; m < nmor; ++m) {
    MorId y = f.on_morphisms[m];
    if (s.dom(m) == kNone || s.cod(m) == kNone) continue;
    if (t.dom(y) != f.on_objects[s.dom(m)])
      r.fail("dom preservation", s.morphism_id(m) + " -> " + t.morphism_id(y));
    if (t.cod(y) != f.on_objects[s.cod(m)])
      r.fail("cod preservation", s.morphism_id(m) + " -> " + t.morphism_id(y));
  }
  for (ObjId x = 0; x < nobj; ++x) {
    MorId e = s.identity(x);
    if (e == kNone) continue;
    if (f.on_morphisms[e] != t.identity(f.on_objects[x]))
      r.fail("identity preservation", s.object_id(x));
  }
  if (!r.passed()) return r;
  std::size_t reported = 0;
  for (MorId m = 0; m < nmor; ++m) {
    if (s.cod(m) == kNone) continue;
    for (MorId g : s.outgoing(s.cod(m))) {
      MorId gm = s.compose(g, m);
      if (gm == kNone) continue;
      if (f.on_morphisms[gm] != t.compose(f.on_morphisms[g], f.on_morphisms[m]) &&
          ++reported <= 100)
        r.fail("composition preservation", "(" + s.morphism_id(g) + ", " + s.morphism_id(m) + ")");
    }
  }
  return r;
}

CheckReport validate_nat_trans(const NatTransformation& h) {
  CheckReport r;
  if (!same_cat(h.from.source, h.to.source) || !same_cat(h.from.target, h.to.target)) {
    r.fail("functor mismatch", "endpoint functors have different source or target");
    return r;
  }
  const auto& s = *h.from.source;
  const auto& t = *h.from.target;
  const auto nobj = static_cast<ObjId>(s.num_objects());
  if (h.components.size() != s.num_objects()) {
    r.fail("component count", std::to_string(h.components.size()) + " components for " +
                                  std::to_string(s.num_objects()) + " objects");
    return r;
  }
  bool endpoints_ok = true;
  for (ObjId x = 0; x < nobj; ++x) {
    MorId c = h.components[x];
    if (c == kNone || c < 0 || c >= static_cast<MorId>(t.num_morphisms())) {
      r.fail("component missing", s.object_id(x));
      endpoints_ok = false;
    } else if (t.dom(c) != h.from.obj(x) || t.cod(c) != h.to.obj(x)) {
      r.fail("component endpoints", s.object_id(x) + " -> " + t.morphism_id(c));
      endpoints_ok = false;
    }
  }
  if (!endpoints_ok) return r;
  for (const Functor* f : {&h.from, &h.to})
    for (MorId w = 0; w < static_cast<MorId>(f->on_morphisms.size()); ++w)
      if (f->on_morphisms[w] == kNone) {
        r.fail("endpoint functor not total", s.morphism_id(w));
        return r;
      }
  std::size_t reported = 0;
  for (MorId w = 0; w < static_cast<MorId>(s.num_morphisms()); ++w) {
    ObjId x = s.dom(w), x2 = s.cod(w);
    MorId lhs = t.compose(h.to.mor(w), h.components[x]);
    MorId rhs = t.compose(h.components[x2], h.from.mor(w));
    if (lhs == kNone || lhs != rhs) {
      if (++reported <= 100) r.fail("naturality", s.morphism_id(w));
    }
  }
  if (reported > 100) r.note(std::to_string(reported) + " naturality failures in total");
  return r;
}

NatTransformation whisker_right(const NatTransformation& h, const Functor& f) {
  NatTransformation r{compose_functors(h.from, f), compose_functors(h.to, f), {}};
  r.components.resize(f.on_objects.size());
  for (std::size_t x = 0; x < f.on_objects.size(); ++x) r.components[x] = h.components[f.obj(x)];
  return r;
}

NatTransformation whisker_left(const Functor& g, const NatTransformation& h) {
  NatTransformation r{compose_functors(g, h.from), compose_functors(g, h.to), {}};
  r.components.resize(h.components.size());
  for (std::size_t x = 0; x < h.components.size(); ++x) r.components[x] = g.mor(h.components[x]);
  return r;
}

Functor inclusion_by_ids(const CategoryPtr& lo, const CategoryPtr& hi) {
  Functor inc{lo, hi, {}, {}};
  for (ObjId x = 0; x < static_cast<ObjId>(lo->num_objects()); ++x) {
    auto y = hi->find_object(lo->object_id(x));
    if (!y) throw Error("inclusion_by_ids: object " + lo->object_id(x) + " missing from the larger category");
    inc.on_objects.push_back(*y);
  }
  for (MorId m = 0; m < static_cast<MorId>(lo->num_morphisms()); ++m) {
    auto y = hi->find_morphism(lo->morphism_id(m));
    if (!y) throw Error("inclusion_by_ids: morphism " + lo->morphism_id(m) + " missing from the larger category");
    inc.on_morphisms.push_back(*y);
  }
  return inc;
}

}  // namespace fibrep
