#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fibrep/functor.hpp"

namespace fibrep {

CategoryPtr empty_category();
CategoryPtr terminal_category();                          // *
CategoryPtr interval_category();                          // 0 --i--> 1
CategoryPtr discrete_category(const std::vector<std::string>& names);
// Closure of the relation; throws Error("not a poset") on a cycle.
CategoryPtr poset_category(const std::vector<std::string>& elements,
                           const std::vector<std::pair<std::string, std::string>>& relations);
CategoryPtr chain_category(int length);                   // 0 < 1 < ... < length-1
CategoryPtr square_boundary_category();                   // a<c, a<d, b<c, b<d

// Functor between posets determined by its object map; throws if not monotone.
Functor monotone_functor(CategoryPtr source, CategoryPtr target, const std::vector<ObjId>& objects);
// Transformation between functors into a poset (components forced); throws if F ≰ G.
NatTransformation poset_transformation(const Functor& from, const Functor& to);

struct ProductCategory {
  CategoryPtr category;
  CategoryPtr left, right;
  Functor proj_left, proj_right;
  ObjId object(ObjId x, ObjId y) const {
    return static_cast<ObjId>(x * right->num_objects() + y);
  }
  MorId morphism(MorId f, MorId g) const {
    return static_cast<MorId>(f * right->num_morphisms() + g);
  }
};

ProductCategory product_category(CategoryPtr c, CategoryPtr d);

struct Cylinder {
  ProductCategory product;  // C1 x I
  Functor functor;          // C1 x I -> C2
  Functor end0, end1;       // C1 -> C1 x I at 0 and 1
};

// Throws CheckFailed when h is not a valid transformation f -> g.
Cylinder cylinder_functor(const Functor& f, const Functor& g, const NatTransformation& h);

}  // namespace fibrep
