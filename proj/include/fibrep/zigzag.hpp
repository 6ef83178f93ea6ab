#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>

#include "fibrep/functor.hpp"

namespace fibrep {

// str: all strictly monotone maps [m] -> [n]; le: only i |-> i for m <= n.
enum class Variant { Strict, Ordered };

std::string to_string(Variant v);
Variant parse_variant(std::string_view text);  // "str" | "le"

// phi: [m] -> [n], values[i-1] = phi(i), strictly increasing in 1..n.
struct MonotoneMap {
  int m = 1;
  int n = 1;
  std::vector<int> values;

  int operator()(int i) const { return values[i - 1]; }
  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;
};

MonotoneMap identity_map(int n);
MonotoneMap inclusion_map(int m, int n);
MonotoneMap compose_maps(const MonotoneMap& psi, const MonotoneMap& phi);  // psi∘phi
// [m+1] -> [n+1], agreeing with phi and sending m+1 to n+1.
MonotoneMap extend_last(const MonotoneMap& phi);
bool is_admissible(const MonotoneMap& phi, Variant v);
std::string to_string(const MonotoneMap& phi);

// Positions of a length-n zig-zag are 0..2n (even = bar, odd = mid). For
// phi: [m] -> [n], entry p is the position of the length-m zig-zag that
// Lambda(phi) copies into position p.
std::vector<int> position_map(const MonotoneMap& phi);

// Full subcategory of the strict (or ordered) simplex category on [1..N].
struct IndexCategory {
  Variant variant = Variant::Strict;
  int max_stage = 1;
  CategoryPtr category;
  std::vector<MonotoneMap> maps;  // per morphism

  ObjId object(int n) const { return n - 1; }
  std::optional<MorId> find(const MonotoneMap& phi) const;
};

IndexCategory build_index_category(Variant v, int max_stage);

// Ybar_0 -a1-> Y_1 <-b1- Ybar_1 -a2-> ... -an-> Y_n <-bn- Ybar_n, stored by
// position: objects[2i] = Ybar_i, objects[2i-1] = Y_i; arrows[p] joins
// positions p and p+1 and always points from the bar to the mid position.
struct ZigZag {
  std::vector<ObjId> objects;
  std::vector<MorId> arrows;

  int length() const { return static_cast<int>(objects.size() / 2); }
  ObjId bar(int i) const { return objects[2 * i]; }
  ObjId mid(int i) const { return objects[2 * i - 1]; }
  MorId forward(int i) const { return arrows[2 * i - 2]; }
  MorId backward(int i) const { return arrows[2 * i - 1]; }
  friend bool operator==(const ZigZag&, const ZigZag&) = default;
};

std::string zigzag_id(const FiniteCategory& d, const ZigZag& y);
CheckReport validate_zigzag(const FiniteCategory& d, const ZigZag& y);
ZigZag constant_zigzag(const FiniteCategory& d, ObjId x, int n);
// Componentwise family s -> t; true iff every square commutes.
bool is_zigzag_morphism(const FiniteCategory& d, const ZigZag& s, const ZigZag& t,
                        std::span<const MorId> components);

ZigZag lambda_phi(const FiniteCategory& d, const MonotoneMap& phi, const ZigZag& y);
std::vector<MorId> lambda_phi_morphism(const MonotoneMap& phi, std::span<const MorId> t);
// Appends -id-> Ybar_n <-id- Ybar_n.
ZigZag shift_zigzag(const FiniteCategory& d, const ZigZag& y);

// Lambda_n D (or its full subcategory on a chosen set of zig-zags).
struct LambdaN {
  CategoryPtr base;
  int n = 1;
  CategoryPtr category;
  std::vector<ZigZag> zigzags;             // per object
  std::vector<MorId> component_table;      // (2n+1) entries per morphism
  Functor p0, p1;

  std::span<const MorId> components(MorId m) const {
    const std::size_t w = 2 * static_cast<std::size_t>(n) + 1;
    return {component_table.data() + w * m, w};
  }
  std::optional<ObjId> find(const ZigZag& y) const;
  std::optional<MorId> find_morphism(ObjId s, ObjId t, std::span<const MorId> comps) const;

  std::unordered_map<std::string, ObjId> index;
};

LambdaN build_lambda_n(CategoryPtr d, int n, const Budget& budget = {});
LambdaN build_lambda_n_on(CategoryPtr d, int n, const std::vector<ZigZag>& objects,
                          const Budget& budget = {});

// Lambda(phi): Lambda_m D -> Lambda_n D.
Functor lambda_functor(const LambdaN& source, const LambdaN& target, const MonotoneMap& phi);

}  // namespace fibrep
