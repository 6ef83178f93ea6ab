#pragma once

#include "fibrep/category.hpp"

namespace fibrep {

struct Functor {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<ObjId> on_objects;    // kNone = undefined
  std::vector<MorId> on_morphisms;  // kNone = undefined

  ObjId obj(ObjId x) const { return on_objects[x]; }
  MorId mor(MorId f) const { return on_morphisms[f]; }
};

struct NatTransformation {
  Functor from;
  Functor to;
  std::vector<MorId> components;  // indexed by source objects
};

// Same categories (pointer or table equality) and identical maps.
bool functors_equal(const Functor& a, const Functor& b);
// First disagreement between a and b, for reports; empty when equal.
std::string functor_difference(const Functor& a, const Functor& b);

Functor identity_functor(CategoryPtr c);
Functor constant_functor(CategoryPtr source, CategoryPtr target, ObjId y);
// g∘f; throws Error when target(f) and source(g) differ.
Functor compose_functors(const Functor& g, const Functor& f);
NatTransformation identity_transformation(const Functor& f);

CheckReport validate_functor(const Functor& f);
CheckReport validate_nat_trans(const NatTransformation& h);

// Whiskering: (h F) for F: B -> A with h between functors out of A; and G h.
NatTransformation whisker_right(const NatTransformation& h, const Functor& f);
NatTransformation whisker_left(const Functor& g, const NatTransformation& h);

// Inclusion of a category into a larger one containing every object and
// morphism under the same id; throws Error otherwise.
Functor inclusion_by_ids(const CategoryPtr& lo, const CategoryPtr& hi);

}  // namespace fibrep
