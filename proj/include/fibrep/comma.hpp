#pragma once

#include <optional>
#include <unordered_map>

#include "fibrep/functor.hpp"

namespace fibrep {

enum class CommaSide {
  Under,  // Y\f: objects (X, v: Y -> f(X))
  Over,   // f\Y: objects (X, v: f(X) -> Y)
};

struct CommaCategory {
  CommaSide side = CommaSide::Under;
  Functor f;
  ObjId y = kNone;
  CategoryPtr category;
  Functor projection_j;           // (X, v) |-> X
  std::vector<ObjId> x_of;        // object decoding
  std::vector<MorId> v_of;
  std::vector<MorId> w_of;        // morphism decoding (underlying w)

  std::optional<ObjId> find(ObjId x, MorId v) const;
  // Comma morphism with underlying w, anchored at its source object for Y\f
  // and at its target object for f\Y (the anchor and w determine it).
  std::optional<MorId> find_morphism(ObjId anchor, MorId w) const;

  std::unordered_map<std::int64_t, ObjId> object_index;
  std::unordered_map<std::int64_t, MorId> morphism_index;
};

CommaCategory comma_under(const Functor& f, ObjId y, const Budget& budget = {});
CommaCategory comma_over(const Functor& f, ObjId y, const Budget& budget = {});
CommaCategory under_category(CategoryPtr d, ObjId y, const Budget& budget = {});
CommaCategory over_category(CategoryPtr d, ObjId y, const Budget& budget = {});

// Y\f -> Y\D (resp. f\Y -> D\Y): (X, v) |-> (f(X), v).
Functor bracket_projection(const CommaCategory& comma, const CommaCategory& base_comma);

struct Fiber {
  Functor f;
  ObjId y = kNone;
  CategoryPtr category;
  Functor inclusion;                 // fiber -> source(f)
  std::vector<ObjId> object_to_sub;  // kNone outside the fiber
  std::vector<MorId> morphism_to_sub;
};

Fiber fiber(const Functor& f, ObjId y);

// [v*]: Y'\f -> Y\f, (X, u) |-> (X, u∘v), for v: Y -> Y'.
Functor induced_under_map(const CommaCategory& under_y, const CommaCategory& under_y2, MorId v);
// [v_*]: f\Y -> f\Y', (X, u) |-> (X, v∘u), for v: Y -> Y'.
Functor induced_over_map(const CommaCategory& over_y, const CommaCategory& over_y2, MorId v);
// Conveniences building the two comma categories themselves.
Functor induced_under_map(const Functor& f, MorId v);
Functor induced_over_map(const Functor& f, MorId v);

// i_Y: f^{-1}Y -> Y\f and j_Y: f^{-1}Y -> f\Y, X |-> (X, id_Y).
Functor fiber_inclusion_under(const Fiber& fib, const CommaCategory& under_y);
Functor fiber_inclusion_over(const Fiber& fib, const CommaCategory& over_y);

// Strict pullback of a: A -> C <- B :b.
struct Pullback {
  CategoryPtr category;
  Functor proj_a, proj_b;
  std::vector<std::pair<ObjId, ObjId>> objects;
  std::vector<std::pair<MorId, MorId>> morphisms;
  std::unordered_map<std::int64_t, ObjId> object_index;
  std::unordered_map<std::int64_t, MorId> morphism_index;

  std::optional<ObjId> find_object(ObjId a, ObjId b) const;
  std::optional<MorId> find_morphism(MorId u, MorId v) const;
};

Pullback pullback(const Functor& a, const Functor& b, const Budget& budget = {});

// Full subcategory on the given objects (ids and order preserved).
struct Subcategory {
  CategoryPtr category;
  Functor inclusion;
  std::vector<ObjId> object_to_sub;
  std::vector<MorId> morphism_to_sub;
};
Subcategory full_subcategory(CategoryPtr c, const std::vector<ObjId>& objects);

// Re-express F: A -> B between subcategories: `source_inclusion` is A' -> A,
// and the target subcategory B' is given by its parent-to-sub maps. Throws
// Error if F leaves B'.
Functor restrict_functor(const Functor& f, const Functor& source_inclusion, CategoryPtr target_sub,
                         const std::vector<ObjId>& target_object_to_sub,
                         const std::vector<MorId>& target_morphism_to_sub);

}  // namespace fibrep
