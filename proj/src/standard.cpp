#include "fibrep/standard.hpp"

#include <map>

namespace fibrep {

CategoryPtr empty_category() { return CategoryBuilder().build(); }

CategoryPtr terminal_category() {
  CategoryBuilder b;
  ObjId x = b.add_object("*");
  MorId e = b.add_morphism("id*", x, x);
  b.set_identity(x, e);
  return b.build([&](MorId, MorId) { return e; });
}

CategoryPtr interval_category() {
  CategoryBuilder b;
  ObjId o0 = b.add_object("0");
  ObjId o1 = b.add_object("1");
  MorId e0 = b.add_morphism("id0", o0, o0);
  MorId e1 = b.add_morphism("id1", o1, o1);
  MorId i = b.add_morphism("i", o0, o1);
  b.set_identity(o0, e0);
  b.set_identity(o1, e1);
  return b.build([&](MorId g, MorId f) {
    if (g == e0 || g == e1) return f;
    (void)i;
    return g;
  });
}

CategoryPtr discrete_category(const std::vector<std::string>& names) {
  CategoryBuilder b;
  for (const auto& n : names) {
    ObjId x = b.add_object(n);
    b.set_identity(x, b.add_morphism("id_" + n, x, x));
  }
  return b.build([](MorId g, MorId) { return g; });
}

CategoryPtr poset_category(const std::vector<std::string>& elements,
                           const std::vector<std::pair<std::string, std::string>>& relations) {
  const std::size_t n = elements.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(elements[i], i).second)
      throw InputError("duplicate poset element '" + elements[i] + "'");
  }
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  for (const auto& [a, c] : relations) {
    auto ia = index.find(a), ic = index.find(c);
    if (ia == index.end() || ic == index.end())
      throw InputError("relation (" + a + ", " + c + ") mentions an unknown element");
    le[ia->second][ic->second] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (le[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (le[k][j]) le[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (le[i][j] && le[j][i])
        throw Error("not a poset: cycle between " + elements[i] + " and " + elements[j]);

  CategoryBuilder b;
  for (const auto& e : elements) b.add_object(e);
  std::vector<std::vector<MorId>> rel(n, std::vector<MorId>(n, kNone));
  for (std::size_t i = 0; i < n; ++i) {
    rel[i][i] = b.add_morphism("id_" + elements[i], static_cast<ObjId>(i), static_cast<ObjId>(i));
    b.set_identity(static_cast<ObjId>(i), rel[i][i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && le[i][j])
        rel[i][j] = b.add_morphism(elements[i] + "<" + elements[j], static_cast<ObjId>(i),
                                   static_cast<ObjId>(j));
  return b.build([&](MorId g, MorId f) { return rel[b.dom(f)][b.cod(g)]; });
}

CategoryPtr chain_category(int length) {
  std::vector<std::string> el;
  std::vector<std::pair<std::string, std::string>> rel;
  for (int i = 0; i < length; ++i) {
    el.push_back(std::to_string(i));
    if (i > 0) rel.emplace_back(std::to_string(i - 1), std::to_string(i));
  }
  return poset_category(el, rel);
}

CategoryPtr square_boundary_category() {
  return poset_category({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

Functor monotone_functor(CategoryPtr source, CategoryPtr target, const std::vector<ObjId>& objects) {
  Functor f{source, target, objects, {}};
  f.on_morphisms.resize(source->num_morphisms());
  for (MorId m = 0; m < static_cast<MorId>(source->num_morphisms()); ++m) {
    auto h = target->hom(objects[source->dom(m)], objects[source->cod(m)]);
    if (h.size() != 1) throw Error("monotone_functor: map is not monotone into a poset");
    f.on_morphisms[m] = h[0];
  }
  return f;
}

NatTransformation poset_transformation(const Functor& from, const Functor& to) {
  NatTransformation h{from, to, {}};
  for (ObjId x = 0; x < static_cast<ObjId>(from.source->num_objects()); ++x) {
    auto hs = from.target->hom(from.obj(x), to.obj(x));
    if (hs.size() != 1) throw Error("poset_transformation: no unique component");
    h.components.push_back(hs[0]);
  }
  return h;
}

ProductCategory product_category(CategoryPtr c, CategoryPtr d) {
  CategoryBuilder b;
  const auto nd = static_cast<ObjId>(d->num_objects());
  const auto md = static_cast<MorId>(d->num_morphisms());
  for (ObjId x = 0; x < static_cast<ObjId>(c->num_objects()); ++x)
    for (ObjId y = 0; y < nd; ++y) b.add_object("(" + c->object_id(x) + "," + d->object_id(y) + ")");
  for (MorId f = 0; f < static_cast<MorId>(c->num_morphisms()); ++f)
    for (MorId g = 0; g < md; ++g)
      b.add_morphism("(" + c->morphism_id(f) + "," + d->morphism_id(g) + ")",
                     c->dom(f) * nd + d->dom(g), c->cod(f) * nd + d->cod(g));
  for (ObjId x = 0; x < static_cast<ObjId>(c->num_objects()); ++x)
    for (ObjId y = 0; y < nd; ++y) b.set_identity(x * nd + y, c->identity(x) * md + d->identity(y));

  ProductCategory p;
  p.left = c;
  p.right = d;
  p.category = b.build([&](MorId g, MorId f) {
    MorId gc = c->compose(g / md, f / md);
    MorId gd = d->compose(g % md, f % md);
    return gc == kNone || gd == kNone ? kNone : gc * md + gd;
  });
  p.proj_left = Functor{p.category, c, {}, {}};
  p.proj_right = Functor{p.category, d, {}, {}};
  for (ObjId x = 0; x < static_cast<ObjId>(p.category->num_objects()); ++x) {
    p.proj_left.on_objects.push_back(x / nd);
    p.proj_right.on_objects.push_back(x % nd);
  }
  for (MorId f = 0; f < static_cast<MorId>(p.category->num_morphisms()); ++f) {
    p.proj_left.on_morphisms.push_back(f / md);
    p.proj_right.on_morphisms.push_back(f % md);
  }
  return p;
}

Cylinder cylinder_functor(const Functor& f, const Functor& g, const NatTransformation& h) {
  auto report = validate_nat_trans(h);
  if (!functors_equal(h.from, f) || !functors_equal(h.to, g))
    report.fail("endpoint mismatch", "transformation does not go from f to g");
  if (!report.passed()) throw CheckFailed("cylinder_functor: invalid transformation", report);

  auto interval = interval_category();
  Cylinder cyl{product_category(f.source, interval), Functor{}, Functor{}, Functor{}};
  const auto& p = cyl.product;
  const auto& src = *f.source;
  const auto& tgt = *f.target;
  const MorId i = *interval->find_morphism("i");
  cyl.functor = Functor{p.category, f.target, {}, {}};
  for (ObjId x = 0; x < static_cast<ObjId>(p.category->num_objects()); ++x) {
    ObjId base = x / 2;
    cyl.functor.on_objects.push_back(x % 2 == 0 ? f.obj(base) : g.obj(base));
  }
  const auto mi = static_cast<MorId>(interval->num_morphisms());
  for (MorId m = 0; m < static_cast<MorId>(p.category->num_morphisms()); ++m) {
    MorId w = m / mi, e = m % mi;
    if (e == i) {
      cyl.functor.on_morphisms.push_back(tgt.compose(g.mor(w), h.components[src.dom(w)]));
    } else {
      cyl.functor.on_morphisms.push_back(interval->dom(e) == 0 ? f.mor(w) : g.mor(w));
    }
  }
  for (int end = 0; end < 2; ++end) {
    Functor inc{f.source, p.category, {}, {}};
    const MorId e = interval->identity(end);
    for (ObjId x = 0; x < static_cast<ObjId>(src.num_objects()); ++x)
      inc.on_objects.push_back(p.object(x, end));
    for (MorId w = 0; w < static_cast<MorId>(src.num_morphisms()); ++w)
      inc.on_morphisms.push_back(p.morphism(w, e));
    (end == 0 ? cyl.end0 : cyl.end1) = std::move(inc);
  }
  return cyl;
}

}  // namespace fibrep
