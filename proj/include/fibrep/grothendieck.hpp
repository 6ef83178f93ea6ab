#pragma once

#include <optional>
#include <unordered_map>

#include "fibrep/functor.hpp"

namespace fibrep {

// Strict functor K -> Cat.
struct CatValuedFunctor {
  CategoryPtr source;
  std::vector<CategoryPtr> on_objects;
  std::vector<Functor> on_morphisms;
};

// Strictness: F(id) = id and F(k'k) = F(k')F(k) as exact map equality.
CheckReport validate_cat_valued(const CatValuedFunctor& f);

struct GrothendieckCategory {
  CategoryPtr category;
  Functor projection;                                // (K, X) |-> K
  std::vector<std::pair<ObjId, ObjId>> objects;      // (K, X)
  std::vector<std::pair<MorId, MorId>> morphisms;    // (k, x) with x: F(k)(X1) -> X0
  std::vector<ObjId> object_offset;                  // (K, X) has id object_offset[K] + X

  ObjId object(ObjId k, ObjId x) const { return object_offset[k] + x; }
  // Morphism (k, x) out of (K1, X1) = `source`.
  std::optional<MorId> find_morphism(ObjId source, MorId k, MorId x) const;

  std::unordered_map<std::int64_t, MorId> block_start;  // (k, X1) -> first morphism
  std::vector<CategoryPtr> fibres;
};

// Throws CheckFailed when F is not strict.
GrothendieckCategory grothendieck(const CatValuedFunctor& f, const Budget& budget = {});

// Strictly natural family alpha_K: F(K) -> F'(K) induces K∫F -> K∫F'.
// Throws CheckFailed on a naturality failure.
Functor grothendieck_map(const GrothendieckCategory& source, const GrothendieckCategory& target,
                         const CatValuedFunctor& f, const CatValuedFunctor& f2,
                         const std::vector<Functor>& alpha);

struct LaxData {
  std::vector<Functor> on_objects;               // g(K): F(K) -> C
  std::vector<NatTransformation> on_morphisms;   // g(k): g(K1) -> g(K0)∘F(k)
};

CheckReport validate_lax_data(const CatValuedFunctor& f, const LaxData& data);
// The functor K∫F -> C determined by the data; throws CheckFailed if the data
// violate g(id) = id or the cocycle condition.
Functor functor_from_lax_data(const GrothendieckCategory& g, const CatValuedFunctor& f,
                              const LaxData& data);
LaxData decompose_functor(const GrothendieckCategory& g, const CatValuedFunctor& f,
                          const Functor& functor);

}  // namespace fibrep
