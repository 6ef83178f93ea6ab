#pragma once

#include <memory>

#include "fibrep/comma.hpp"
#include "fibrep/grothendieck.hpp"
#include "fibrep/zigzag.hpp"

namespace fibrep {

// Truncated free-path category: Grothendieck construction of [n] |-> Lambda_n D
// over the index category on [1..N].
struct PathCategoryStage {
  CategoryPtr d;
  int max_stage = 1;
  Variant variant = Variant::Strict;
  IndexCategory index;
  std::vector<std::shared_ptr<const LambdaN>> levels;  // levels[n-1] = Lambda_n D
  CatValuedFunctor lambda;
  GrothendieckCategory total;
  Functor p0, p1;

  CategoryPtr category() const { return total.category; }
  int length(ObjId o) const { return total.objects[o].first + 1; }
  const ZigZag& path(ObjId o) const;
  std::optional<ObjId> object(const ZigZag& y) const;
  const MonotoneMap& phi(MorId m) const { return index.maps[total.morphisms[m].first]; }
  // Components of the zig-zag morphism Lambda(phi)(source) -> target.
  std::span<const MorId> components(MorId m) const;
  std::optional<MorId> morphism(ObjId source, ObjId target, const MonotoneMap& phi,
                                std::span<const MorId> comps) const;
};

PathCategoryStage build_path_category(CategoryPtr d, int max_stage, Variant variant,
                                      const Budget& budget = {});

// Fibrant replacement: pullback of C --f--> D <--p0-- (path category).
struct ReplacementStage {
  Functor f;
  int max_stage = 1;
  Variant variant = Variant::Strict;
  std::shared_ptr<const PathCategoryStage> paths;
  Pullback pb;
  Functor q;         // -> C
  Functor to_paths;  // -> path category
  Functor f_h;       // endpoint p1 after to_paths
  Functor i;         // C -> stage, X |-> (X, [1], constant path on f(X))

  CategoryPtr category() const { return pb.category; }
  ObjId x_of(ObjId o) const { return pb.objects[o].first; }
  ObjId path_object(ObjId o) const { return pb.objects[o].second; }
  const ZigZag& path(ObjId o) const { return paths->path(path_object(o)); }
  int length(ObjId o) const { return paths->length(path_object(o)); }
  MorId w_of(MorId m) const { return pb.morphisms[m].first; }
  MorId path_morphism(MorId m) const { return pb.morphisms[m].second; }
  const MonotoneMap& phi(MorId m) const { return paths->phi(path_morphism(m)); }
  std::span<const MorId> components(MorId m) const { return paths->components(path_morphism(m)); }

  std::optional<ObjId> object(ObjId x, const ZigZag& y) const;
  std::optional<MorId> morphism(MorId w, ObjId source, ObjId target, const MonotoneMap& phi,
                                std::span<const MorId> comps) const;
};

ReplacementStage build_replacement(const Functor& f, int max_stage, Variant variant,
                                   const Budget& budget = {});

// Inclusion of stage N into stage N' >= N (matching generated ids).
Functor stage_inclusion(const PathCategoryStage& lo, const PathCategoryStage& hi);
Functor stage_inclusion(const ReplacementStage& lo, const ReplacementStage& hi);

// q∘i = id, f_h∘i = f, and the pullback square p0∘to_paths = f∘q.
CheckReport check_replacement_identities(const ReplacementStage& s);

}  // namespace fibrep
