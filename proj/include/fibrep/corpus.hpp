#pragma once

#include <cstdint>
#include <random>

#include "fibrep/functor.hpp"

namespace fibrep {

// Deterministic random posets, monotone functors and transformations.
class Corpus {
 public:
  explicit Corpus(std::uint64_t seed) : rng_(seed) {}

  // 1..max_objects elements named p0, p1, ...; each pair i < j of a random
  // linear order is related with probability `density`, then closed.
  CategoryPtr poset(int max_objects = 6, double density = 0.35);
  // A poset with a minimum element (an extra bottom below a random poset).
  CategoryPtr poset_with_minimum(int max_objects = 6, double density = 0.35);
  // Random monotone map between posets; falls back to a constant map when
  // the sampling gets stuck.
  Functor monotone_functor(CategoryPtr source, CategoryPtr target);
  // G >= F pointwise and monotone, with the forced components F(x) <= G(x).
  NatTransformation transformation_from(const Functor& f);

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  int counter_ = 0;
};

// One named functor of the fixture set used by the replacement checks.
struct NamedFunctor {
  std::string name;
  Functor f;
};

// id_*, id_I, I -> *, discrete-2 -> I, square-boundary inclusion.
std::vector<NamedFunctor> standard_functors();
// standard_functors() plus `extra` random monotone functors between corpus
// posets with at most `max_objects` elements.
std::vector<NamedFunctor> functor_corpus(std::uint64_t seed, int extra, int max_objects = 3);

}  // namespace fibrep
