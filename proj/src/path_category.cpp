#include "fibrep/path_category.hpp"

namespace fibrep {

const ZigZag& PathCategoryStage::path(ObjId o) const {
  auto [k, x] = total.objects[o];
  return levels[k]->zigzags[x];
}

std::optional<ObjId> PathCategoryStage::object(const ZigZag& y) const {
  const int n = y.length();
  if (n < 1 || n > max_stage) return std::nullopt;
  auto x = levels[n - 1]->find(y);
  if (!x) return std::nullopt;
  return total.object(index.object(n), *x);
}

std::span<const MorId> PathCategoryStage::components(MorId m) const {
  const auto& [k, x] = total.morphisms[m];
  const int n = index.maps[k].n;
  return levels[n - 1]->components(x);
}

std::optional<MorId> PathCategoryStage::morphism(ObjId source, ObjId target, const MonotoneMap& phi,
                                                 std::span<const MorId> comps) const {
  auto k = index.find(phi);
  if (!k || length(source) != phi.m || length(target) != phi.n) return std::nullopt;
  const auto& lvl = *levels[phi.n - 1];
  auto s = lvl.find(lambda_phi(*d, phi, path(source)));
  if (!s) return std::nullopt;
  auto x = lvl.find_morphism(*s, total.objects[target].second, comps);
  if (!x) return std::nullopt;
  return total.find_morphism(source, *k, *x);
}

PathCategoryStage build_path_category(CategoryPtr d, int max_stage, Variant variant,
                                      const Budget& budget) {
  PathCategoryStage st;
  st.d = d;
  st.max_stage = max_stage;
  st.variant = variant;
  st.index = build_index_category(variant, max_stage);
  st.lambda.source = st.index.category;
  for (int n = 1; n <= max_stage; ++n) {
    auto lvl = std::make_shared<const LambdaN>(build_lambda_n(d, n, budget));
    st.levels.push_back(lvl);
    st.lambda.on_objects.push_back(lvl->category);
  }
  for (const auto& phi : st.index.maps)
    st.lambda.on_morphisms.push_back(lambda_functor(*st.levels[phi.m - 1], *st.levels[phi.n - 1], phi));
  st.total = grothendieck(st.lambda, budget);

  // p0 / p1 from lax data whose transformations are identities
  for (int end = 0; end < 2; ++end) {
    LaxData data;
    for (const auto& lvl : st.levels) data.on_objects.push_back(end == 0 ? lvl->p0 : lvl->p1);
    for (std::size_t k = 0; k < st.index.maps.size(); ++k) {
      const auto& phi = st.index.maps[k];
      const auto& src = data.on_objects[phi.m - 1];
      NatTransformation t{src, compose_functors(data.on_objects[phi.n - 1], st.lambda.on_morphisms[k]), {}};
      for (ObjId y : src.on_objects) t.components.push_back(d->identity(y));
      data.on_morphisms.push_back(std::move(t));
    }
    (end == 0 ? st.p0 : st.p1) = functor_from_lax_data(st.total, st.lambda, data);
  }
  return st;
}

std::optional<ObjId> ReplacementStage::object(ObjId x, const ZigZag& y) const {
  auto p = paths->object(y);
  if (!p) return std::nullopt;
  return pb.find_object(x, *p);
}

std::optional<MorId> ReplacementStage::morphism(MorId w, ObjId source, ObjId target,
                                                const MonotoneMap& phi,
                                                std::span<const MorId> comps) const {
  auto pm = paths->morphism(path_object(source), path_object(target), phi, comps);
  if (!pm) return std::nullopt;
  return pb.find_morphism(w, *pm);
}

ReplacementStage build_replacement(const Functor& f, int max_stage, Variant variant,
                                   const Budget& budget) {
  ReplacementStage st;
  st.f = f;
  st.max_stage = max_stage;
  st.variant = variant;
  st.paths = std::make_shared<const PathCategoryStage>(
      build_path_category(f.target, max_stage, variant, budget));
  st.pb = pullback(f, st.paths->p0, budget);
  st.q = st.pb.proj_a;
  st.to_paths = st.pb.proj_b;
  st.f_h = compose_functors(st.paths->p1, st.to_paths);

  const auto& c = *f.source;
  const auto& d = *f.target;
  st.i = Functor{f.source, st.pb.category, {}, {}};
  for (ObjId x = 0; x < static_cast<ObjId>(c.num_objects()); ++x)
    st.i.on_objects.push_back(*st.object(x, constant_zigzag(d, f.obj(x), 1)));
  const auto id1 = identity_map(1);
  for (MorId w = 0; w < static_cast<MorId>(c.num_morphisms()); ++w) {
    const MorId fw = f.mor(w);
    std::vector<MorId> comps{fw, fw, fw};
    st.i.on_morphisms.push_back(
        *st.morphism(w, st.i.on_objects[c.dom(w)], st.i.on_objects[c.cod(w)], id1, comps));
  }
  return st;
}

Functor stage_inclusion(const PathCategoryStage& lo, const PathCategoryStage& hi) {
  if (lo.max_stage > hi.max_stage || lo.variant != hi.variant) throw Error("stage_inclusion: stage mismatch");
  return inclusion_by_ids(lo.category(), hi.category());
}

Functor stage_inclusion(const ReplacementStage& lo, const ReplacementStage& hi) {
  if (lo.max_stage > hi.max_stage || lo.variant != hi.variant) throw Error("stage_inclusion: stage mismatch");
  return inclusion_by_ids(lo.category(), hi.category());
}

CheckReport check_replacement_identities(const ReplacementStage& s) {
  CheckReport r;
  auto qi = compose_functors(s.q, s.i);
  if (!functors_equal(qi, identity_functor(s.f.source)))
    r.fail("q∘i = id", functor_difference(qi, identity_functor(s.f.source)));
  auto fi = compose_functors(s.f_h, s.i);
  if (!functors_equal(fi, s.f)) r.fail("f_h∘i = f", functor_difference(fi, s.f));
  auto left = compose_functors(s.paths->p0, s.to_paths);
  auto right = compose_functors(s.f, s.q);
  if (!functors_equal(left, right)) r.fail("pullback square", functor_difference(left, right));
  for (const auto* fn : {&s.q, &s.f_h, &s.i}) {
    auto v = validate_functor(*fn);
    if (!v.passed()) r.absorb(v, fn == &s.q ? "q" : fn == &s.f_h ? "f_h" : "i");
  }
  return r;
}

}  // namespace fibrep
