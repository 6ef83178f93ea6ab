#include "fibrep/evrard.hpp"

#include <algorithm>

namespace fibrep {

namespace {

// Y[min(p, cut)] with identity arrows past the cut.
ZigZag cut_zigzag(const FiniteCategory& d, const ZigZag& y, int cut) {
  ZigZag r = y;
  for (std::size_t p = cut + 1; p < r.objects.size(); ++p) r.objects[p] = y.objects[cut];
  for (std::size_t p = cut; p < r.arrows.size(); ++p) r.arrows[p] = d.identity(y.objects[cut]);
  return r;
}

// Components of the ladder map between two cuts of y that differ by one.
std::vector<MorId> ladder(const FiniteCategory& d, const ZigZag& y, int bar_cut, int mid_cut) {
  std::vector<MorId> comps;
  const int r = std::min(bar_cut, mid_cut);
  for (int p = 0; p < static_cast<int>(y.objects.size()); ++p) {
    if (bar_cut == mid_cut || p <= r)
      comps.push_back(d.identity(y.objects[std::min(p, bar_cut)]));
    else
      comps.push_back(y.arrows[r]);
  }
  return comps;
}

std::shared_ptr<const LambdaN> host_on(CategoryPtr c, int n, const std::vector<ZigZag>& images,
                                       const Budget& budget) {
  std::vector<ZigZag> distinct;
  for (const auto& z : images)
    if (std::find(distinct.begin(), distinct.end(), z) == distinct.end()) distinct.push_back(z);
  return std::make_shared<const LambdaN>(build_lambda_n_on(std::move(c), n, distinct, budget));
}

}  // namespace

CheckReport check_evrard_homotopy(const EvrardHomotopy& w) {
  CheckReport r;
  if (!w.host || w.h.target != w.host->category) {
    r.fail("host mismatch", "H does not land in the declared Lambda_n");
    return r;
  }
  auto v = validate_functor(w.h);
  if (!v.passed()) {
    r.absorb(v, "H");
    return r;
  }
  auto a = compose_functors(w.host->p0, w.h);
  if (!functors_equal(a, w.f)) r.fail("p0 mismatch", functor_difference(a, w.f));
  auto b = compose_functors(w.host->p1, w.h);
  if (!functors_equal(b, w.g)) r.fail("p1 mismatch", functor_difference(b, w.g));
  return r;
}

TransformationChain witness_to_nat_trans_chain(const EvrardHomotopy& w) {
  auto rep = check_evrard_homotopy(w);
  if (!rep.passed()) throw CheckFailed("witness_to_nat_trans_chain: invalid witness", rep);
  const auto& host = *w.host;
  const auto& c1 = *w.h.source;
  const int positions = 2 * host.n + 1;
  TransformationChain ch;
  for (int p = 0; p < positions; ++p) {
    Functor f{w.h.source, host.base, {}, {}};
    for (ObjId x = 0; x < static_cast<ObjId>(c1.num_objects()); ++x)
      f.on_objects.push_back(host.zigzags[w.h.obj(x)].objects[p]);
    for (MorId m = 0; m < static_cast<MorId>(c1.num_morphisms()); ++m)
      f.on_morphisms.push_back(host.components(w.h.mor(m))[p]);
    ch.functors.push_back(std::move(f));
  }
  for (int p = 0; p + 1 < positions; ++p) {
    const bool forward = p % 2 == 0;
    NatTransformation t{forward ? ch.functors[p] : ch.functors[p + 1], forward ? ch.functors[p + 1] : ch.functors[p],
                        {}};
    for (ObjId x = 0; x < static_cast<ObjId>(c1.num_objects()); ++x)
      t.components.push_back(host.zigzags[w.h.obj(x)].arrows[p]);
    ch.transformations.push_back(std::move(t));
  }
  return ch;
}

namespace {

// Witness of length 1 whose zig-zag at X and components at m are given.
EvrardHomotopy witness_from_tables(const Functor& f, const Functor& g, const std::vector<ZigZag>& at,
                                   const std::vector<std::vector<MorId>>& comps, const Budget& budget) {
  EvrardHomotopy w;
  w.f = f;
  w.g = g;
  w.host = host_on(f.target, 1, at, budget);
  w.h = Functor{f.source, w.host->category, {}, {}};
  for (const auto& z : at) w.h.on_objects.push_back(*w.host->find(z));
  const auto& c1 = *f.source;
  for (MorId m = 0; m < static_cast<MorId>(c1.num_morphisms()); ++m) {
    auto found = w.host->find_morphism(w.h.obj(c1.dom(m)), w.h.obj(c1.cod(m)), comps[m]);
    w.h.on_morphisms.push_back(found ? *found : kNone);
  }
  return w;
}

}  // namespace

EvrardHomotopy witness_from_transformation(const NatTransformation& h, const Budget& budget) {
  auto v = validate_nat_trans(h);
  if (!v.passed()) throw CheckFailed("witness_from_transformation: invalid transformation", v);
  const auto& d = *h.from.target;
  const auto& c1 = *h.from.source;
  std::vector<ZigZag> at;
  for (ObjId x = 0; x < static_cast<ObjId>(c1.num_objects()); ++x) {
    const ObjId gx = h.to.obj(x);
    at.push_back(ZigZag{{h.from.obj(x), gx, gx}, {h.components[x], d.identity(gx)}});
  }
  std::vector<std::vector<MorId>> comps;
  for (MorId m = 0; m < static_cast<MorId>(c1.num_morphisms()); ++m)
    comps.push_back({h.from.mor(m), h.to.mor(m), h.to.mor(m)});
  return witness_from_tables(h.from, h.to, at, comps, budget);
}

EvrardHomotopy constant_witness(const Functor& f, const Budget& budget) {
  const auto& d = *f.target;
  const auto& c1 = *f.source;
  std::vector<ZigZag> at;
  for (ObjId x = 0; x < static_cast<ObjId>(c1.num_objects()); ++x) at.push_back(constant_zigzag(d, f.obj(x), 1));
  std::vector<std::vector<MorId>> comps;
  for (MorId m = 0; m < static_cast<MorId>(c1.num_morphisms()); ++m)
    comps.push_back({f.mor(m), f.mor(m), f.mor(m)});
  return witness_from_tables(f, f, at, comps, budget);
}

Functor constant_start_functor(const LambdaN& l) {
  const auto& d = *l.base;
  const auto& c = *l.category;
  Functor r{l.category, l.category, {}, {}};
  for (ObjId y = 0; y < static_cast<ObjId>(c.num_objects()); ++y)
    r.on_objects.push_back(*l.find(constant_zigzag(d, l.zigzags[y].bar(0), l.n)));
  for (MorId m = 0; m < static_cast<MorId>(c.num_morphisms()); ++m) {
    std::vector<MorId> comps(2 * l.n + 1, l.components(m)[0]);
    r.on_morphisms.push_back(*l.find_morphism(r.obj(c.dom(m)), r.obj(c.cod(m)), comps));
  }
  return r;
}

EvrardHomotopy contraction_witness(const LambdaN& l, const Budget& budget) {
  const auto& d = *l.base;
  const auto& c = *l.category;
  const int n = l.n;
  const int positions = 2 * n + 1;
  // node q of the ladder at Y is Y cut at q
  auto node = [&](ObjId y, int q) { return *l.find(cut_zigzag(d, l.zigzags[y], q)); };
  std::vector<ZigZag> images;
  for (ObjId y = 0; y < static_cast<ObjId>(c.num_objects()); ++y) {
    const auto& zy = l.zigzags[y];
    ZigZag z;
    for (int q = 0; q < positions; ++q) z.objects.push_back(node(y, q));
    for (int q = 0; q + 1 < positions; ++q) {
      const int bar = q % 2 == 0 ? q : q + 1;
      const int mid = q % 2 == 0 ? q + 1 : q;
      auto m = l.find_morphism(z.objects[bar], z.objects[mid], ladder(d, zy, bar, mid));
      if (!m) throw Error("contraction_witness: ladder map missing from Lambda_n");
      z.arrows.push_back(*m);
    }
    images.push_back(std::move(z));
  }
  EvrardHomotopy w;
  w.f = constant_start_functor(l);
  w.g = identity_functor(l.category);
  w.host = host_on(l.category, n, images, budget);
  w.h = Functor{l.category, w.host->category, {}, {}};
  for (const auto& z : images) w.h.on_objects.push_back(*w.host->find(z));
  for (MorId m = 0; m < static_cast<MorId>(c.num_morphisms()); ++m) {
    const ObjId s = c.dom(m), t = c.cod(m);
    auto tm = l.components(m);
    std::vector<MorId> comps;
    for (int q = 0; q < positions; ++q) {
      std::vector<MorId> cq;
      for (int p = 0; p < positions; ++p) cq.push_back(tm[std::min(p, q)]);
      auto found = l.find_morphism(node(s, q), node(t, q), cq);
      if (!found) throw Error("contraction_witness: rung missing from Lambda_n");
      comps.push_back(*found);
    }
    auto found = w.host->find_morphism(w.h.obj(s), w.h.obj(t), comps);
    if (!found) throw Error("contraction_witness: ladder morphism missing from the host");
    w.h.on_morphisms.push_back(*found);
  }
  return w;
}

IqWitness iq_homotopy_witness(const ReplacementStage& st, const Budget& budget) {
  IqWitness out;
  const auto& d = *st.f.target;
  const auto& cs = *st.f.source;
  const auto& c = *st.category();
  const int len = st.max_stage + 1;
  const int positions = 2 * len + 1;
  const Functor iq = compose_functors(st.i, st.q);
  // cut position of node q >= 1 for a path of length n
  auto cut_at = [](int q, int n) { return std::clamp(q - 2, 0, 2 * n); };

  std::vector<ZigZag> images;
  for (ObjId o = 0; o < static_cast<ObjId>(c.num_objects()); ++o) {
    const auto& y = st.path(o);
    const int n = y.length();
    const ObjId x = st.x_of(o);
    ZigZag z;
    z.objects.push_back(iq.obj(o));
    for (int q = 1; q < positions; ++q) {
      auto node = st.object(x, cut_zigzag(d, y, cut_at(q, n)));
      if (!node) throw Error("iq_homotopy_witness: cut path missing from the stage");
      z.objects.push_back(*node);
    }
    const MorId idx = cs.identity(x);
    const std::vector<MorId> const_ids(2 * n + 1, d.identity(y.objects[0]));
    auto first = st.morphism(idx, z.objects[0], z.objects[1], inclusion_map(1, n), const_ids);
    if (!first) {
      out.issues.fail("start not hosted", "object " + c.object_id(o) + ": the map [1] -> [" + std::to_string(n) +
                                              "] is not in the index category");
      z.arrows.push_back(kNone);
    } else {
      z.arrows.push_back(*first);
    }
    for (int q = 1; q + 1 < positions; ++q) {
      const int bar = q % 2 == 0 ? q : q + 1;
      const int mid = q % 2 == 0 ? q + 1 : q;
      auto m = st.morphism(idx, z.objects[bar], z.objects[mid], identity_map(n),
                           ladder(d, y, cut_at(bar, n), cut_at(mid, n)));
      if (!m) throw Error("iq_homotopy_witness: ladder map missing from the stage");
      z.arrows.push_back(*m);
    }
    images.push_back(std::move(z));
  }

  std::vector<std::vector<MorId>> rungs(c.num_morphisms());
  for (MorId m = 0; m < static_cast<MorId>(c.num_morphisms()); ++m) {
    const ObjId s = c.dom(m), t = c.cod(m);
    const int n2 = st.length(t);
    auto tm = st.components(m);
    rungs[m].push_back(iq.mor(m));
    for (int q = 1; q < positions; ++q) {
      const int cut = cut_at(q, n2);
      std::vector<MorId> cq;
      for (int p = 0; p < 2 * n2 + 1; ++p) cq.push_back(tm[std::min(p, cut)]);
      auto found = st.morphism(st.w_of(m), images[s].objects[q], images[t].objects[q], st.phi(m), cq);
      if (!found) {
        out.issues.fail("rung not hosted", "morphism " + c.morphism_id(m) + " at node " + std::to_string(q) +
                                               ": the cut components do not form a morphism over phi");
        rungs[m].push_back(kNone);
      } else {
        rungs[m].push_back(*found);
      }
    }
  }
  if (!out.issues.passed()) return out;

  auto& w = out.witness;
  w.f = iq;
  w.g = identity_functor(st.category());
  w.host = host_on(st.category(), len, images, budget);
  w.h = Functor{st.category(), w.host->category, {}, {}};
  for (const auto& z : images) w.h.on_objects.push_back(*w.host->find(z));
  for (MorId m = 0; m < static_cast<MorId>(c.num_morphisms()); ++m) {
    auto found = w.host->find_morphism(w.h.obj(c.dom(m)), w.h.obj(c.cod(m)), rungs[m]);
    if (!found) {
      out.issues.fail("ladder not natural", "morphism " + c.morphism_id(m));
      w.h.on_morphisms.push_back(kNone);
    } else {
      w.h.on_morphisms.push_back(*found);
    }
  }
  return out;
}

}  // namespace fibrep
