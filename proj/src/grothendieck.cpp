#include "fibrep/grothendieck.hpp"

namespace fibrep {

namespace {

std::int64_t key2(std::int64_t a, std::int64_t b) { return (a << 32) | static_cast<std::uint32_t>(b); }

}  // namespace

CheckReport validate_cat_valued(const CatValuedFunctor& f) {
  CheckReport r;
  const auto& k = *f.source;
  if (f.on_objects.size() != k.num_objects() || f.on_morphisms.size() != k.num_morphisms()) {
    r.fail("map size", "on_objects/on_morphisms do not cover the index category");
    return r;
  }
  for (MorId m = 0; m < static_cast<MorId>(k.num_morphisms()); ++m) {
    const auto& fm = f.on_morphisms[m];
    if (fm.source != f.on_objects[k.dom(m)] || fm.target != f.on_objects[k.cod(m)]) {
      r.fail("functor endpoints", k.morphism_id(m));
      continue;
    }
    auto sub = validate_functor(fm);
    if (!sub.passed()) r.absorb(sub, "F(" + k.morphism_id(m) + ")");
  }
  if (!r.passed()) return r;
  for (ObjId x = 0; x < static_cast<ObjId>(k.num_objects()); ++x) {
    if (!functors_equal(f.on_morphisms[k.identity(x)], identity_functor(f.on_objects[x])))
      r.fail("strict identity", k.object_id(x));
  }
  for (MorId a = 0; a < static_cast<MorId>(k.num_morphisms()); ++a)
    for (MorId b : k.outgoing(k.cod(a))) {
      MorId ba = k.compose(b, a);
      if (!functors_equal(f.on_morphisms[ba], compose_functors(f.on_morphisms[b], f.on_morphisms[a])))
        r.fail("strict composition", "(" + k.morphism_id(b) + ", " + k.morphism_id(a) + ")");
    }
  return r;
}

std::optional<MorId> GrothendieckCategory::find_morphism(ObjId source, MorId k, MorId x) const {
  auto it = block_start.find(key2(k, objects[source].second));
  if (it == block_start.end()) return std::nullopt;
  const auto& fibre = *fibres[projection.target->cod(k)];
  return it->second + static_cast<MorId>(fibre.position_in_outgoing(x));
}

GrothendieckCategory grothendieck(const CatValuedFunctor& f, const Budget& budget) {
  auto report = validate_cat_valued(f);
  if (!report.passed()) throw CheckFailed("grothendieck: functor is not strict", report);
  const auto& k = *f.source;
  GrothendieckCategory g;
  g.fibres = f.on_objects;
  CategoryBuilder b;
  for (ObjId kk = 0; kk < static_cast<ObjId>(k.num_objects()); ++kk) {
    g.object_offset.push_back(static_cast<ObjId>(g.objects.size()));
    const auto& fib = *f.on_objects[kk];
    for (ObjId x = 0; x < static_cast<ObjId>(fib.num_objects()); ++x) {
      b.add_object("(" + k.object_id(kk) + "," + fib.object_id(x) + ")");
      g.objects.emplace_back(kk, x);
    }
  }
  for (MorId km = 0; km < static_cast<MorId>(k.num_morphisms()); ++km) {
    const ObjId k1 = k.dom(km), k0 = k.cod(km);
    const auto& fk = f.on_morphisms[km];
    const auto& f1 = *f.on_objects[k1];
    const auto& f0 = *f.on_objects[k0];
    for (ObjId x1 = 0; x1 < static_cast<ObjId>(f1.num_objects()); ++x1) {
      g.block_start.emplace(key2(km, x1), static_cast<MorId>(g.morphisms.size()));
      const ObjId src = g.object(k1, x1);
      for (MorId x : f0.outgoing(fk.obj(x1))) {
        b.add_morphism("(" + k.morphism_id(km) + "," + f0.morphism_id(x) + ")@" + f1.object_id(x1),
                       src, g.object(k0, f0.cod(x)));
        g.morphisms.emplace_back(km, x);
      }
      budget.check(g.morphisms.size(), "Grothendieck construction");
    }
  }
  for (ObjId o = 0; o < static_cast<ObjId>(g.objects.size()); ++o) {
    auto [kk, x] = g.objects[o];
    b.set_identity(o, g.block_start.at(key2(k.identity(kk), x)) +
                          static_cast<MorId>(f.on_objects[kk]->position_in_outgoing(
                              f.on_objects[kk]->identity(x))));
  }
  g.projection = Functor{nullptr, f.source, {}, {}};
  for (auto [kk, x] : g.objects) g.projection.on_objects.push_back(kk);
  for (auto [km, x] : g.morphisms) g.projection.on_morphisms.push_back(km);
  g.projection.target = f.source;
  // (k, x)∘(k', x') = (k k', x∘F(k)(x'))
  g.category = b.build([&](MorId outer, MorId inner) {
    auto [ka, xa] = g.morphisms[outer];
    auto [kb, xb] = g.morphisms[inner];
    const ObjId k0 = k.cod(ka);
    MorId x = f.on_objects[k0]->compose(xa, f.on_morphisms[ka].mor(xb));
    if (x == kNone) return kNone;
    return *g.find_morphism(b.dom(inner), k.compose(ka, kb), x);
  });
  g.projection.source = g.category;
  return g;
}

Functor grothendieck_map(const GrothendieckCategory& source, const GrothendieckCategory& target,
                         const CatValuedFunctor& f, const CatValuedFunctor& f2,
                         const std::vector<Functor>& alpha) {
  const auto& k = *f.source;
  CheckReport r;
  for (MorId km = 0; km < static_cast<MorId>(k.num_morphisms()); ++km) {
    auto lhs = compose_functors(alpha[k.cod(km)], f.on_morphisms[km]);
    auto rhs = compose_functors(f2.on_morphisms[km], alpha[k.dom(km)]);
    if (!functors_equal(lhs, rhs)) r.fail("strict naturality", k.morphism_id(km));
  }
  if (!r.passed()) throw CheckFailed("grothendieck_map: family is not strictly natural", r);
  Functor out{source.category, target.category, {}, {}};
  for (auto [kk, x] : source.objects) out.on_objects.push_back(target.object(kk, alpha[kk].obj(x)));
  const auto& sc = *source.category;
  for (MorId m = 0; m < static_cast<MorId>(source.morphisms.size()); ++m) {
    auto [km, x] = source.morphisms[m];
    out.on_morphisms.push_back(
        *target.find_morphism(out.on_objects[sc.dom(m)], km, alpha[k.cod(km)].mor(x)));
  }
  return out;
}

CheckReport validate_lax_data(const CatValuedFunctor& f, const LaxData& data) {
  CheckReport r;
  const auto& k = *f.source;
  for (MorId km = 0; km < static_cast<MorId>(k.num_morphisms()); ++km) {
    const auto& t = data.on_morphisms[km];
    if (!functors_equal(t.from, data.on_objects[k.dom(km)]) ||
        !functors_equal(t.to, compose_functors(data.on_objects[k.cod(km)], f.on_morphisms[km]))) {
      r.fail("lax data endpoints", k.morphism_id(km));
      continue;
    }
    auto sub = validate_nat_trans(t);
    if (!sub.passed()) r.absorb(sub, "g(" + k.morphism_id(km) + ")");
  }
  if (!r.passed()) return r;
  for (ObjId kk = 0; kk < static_cast<ObjId>(k.num_objects()); ++kk) {
    const auto& t = data.on_morphisms[k.identity(kk)];
    for (std::size_t x = 0; x < t.components.size(); ++x)
      if (!t.from.target->is_identity(t.components[x])) {
        r.fail("g(id) = id", k.object_id(kk));
        break;
      }
  }
  // g(k'k)_X = g(k')_{F(k)X} ∘ g(k)_X
  for (MorId a = 0; a < static_cast<MorId>(k.num_morphisms()); ++a)
    for (MorId b : k.outgoing(k.cod(a))) {
      const auto& ga = data.on_morphisms[a];
      const auto& gb = data.on_morphisms[b];
      const auto& gba = data.on_morphisms[k.compose(b, a)];
      const auto& c = *ga.from.target;
      for (std::size_t x = 0; x < ga.components.size(); ++x) {
        MorId rhs = c.compose(gb.components[f.on_morphisms[a].obj(static_cast<ObjId>(x))],
                              ga.components[x]);
        if (gba.components[x] != rhs) {
          r.fail("cocycle condition", "(" + k.morphism_id(a) + ", " + k.morphism_id(b) + ")");
          break;
        }
      }
    }
  return r;
}

Functor functor_from_lax_data(const GrothendieckCategory& g, const CatValuedFunctor& f,
                              const LaxData& data) {
  auto r = validate_lax_data(f, data);
  if (!r.passed()) throw CheckFailed("functor_from_lax_data: invalid data", r);
  const auto& k = *f.source;
  CategoryPtr target = data.on_objects.empty() ? nullptr : data.on_objects[0].target;
  Functor out{g.category, target, {}, {}};
  for (auto [kk, x] : g.objects) out.on_objects.push_back(data.on_objects[kk].obj(x));
  const auto& gc = *g.category;
  for (MorId m = 0; m < static_cast<MorId>(g.morphisms.size()); ++m) {
    auto [km, x] = g.morphisms[m];
    ObjId x1 = g.objects[gc.dom(m)].second;
    out.on_morphisms.push_back(target->compose(data.on_objects[k.cod(km)].mor(x),
                                               data.on_morphisms[km].components[x1]));
  }
  return out;
}

LaxData decompose_functor(const GrothendieckCategory& g, const CatValuedFunctor& f,
                          const Functor& functor) {
  const auto& k = *f.source;
  LaxData d;
  for (ObjId kk = 0; kk < static_cast<ObjId>(k.num_objects()); ++kk) {
    const auto& fib = *f.on_objects[kk];
    Functor gk{f.on_objects[kk], functor.target, {}, {}};
    for (ObjId x = 0; x < static_cast<ObjId>(fib.num_objects()); ++x)
      gk.on_objects.push_back(functor.obj(g.object(kk, x)));
    for (MorId x = 0; x < static_cast<MorId>(fib.num_morphisms()); ++x)
      gk.on_morphisms.push_back(functor.mor(*g.find_morphism(g.object(kk, fib.dom(x)), k.identity(kk), x)));
    d.on_objects.push_back(std::move(gk));
  }
  for (MorId km = 0; km < static_cast<MorId>(k.num_morphisms()); ++km) {
    const ObjId k1 = k.dom(km), k0 = k.cod(km);
    NatTransformation t{d.on_objects[k1], compose_functors(d.on_objects[k0], f.on_morphisms[km]), {}};
    const auto& f0 = *f.on_objects[k0];
    for (ObjId x1 = 0; x1 < static_cast<ObjId>(f.on_objects[k1]->num_objects()); ++x1) {
      MorId idx = f0.identity(f.on_morphisms[km].obj(x1));
      t.components.push_back(functor.mor(*g.find_morphism(g.object(k1, x1), km, idx)));
    }
    d.on_morphisms.push_back(std::move(t));
  }
  return d;
}

}  // namespace fibrep
