#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fibrep/functor.hpp"
#include "fibrep/integer.hpp"

namespace fibrep {

bool is_loop_free(const FiniteCategory& c);

// Nondegenerate chains (f1, ..., fd) with f_{i+1} composable after f_i, stored
// flat and sorted lexicographically by morphism id. Dimension 0 = objects.
struct NerveTruncation {
  CategoryPtr category;
  int max_dim = 0;
  bool loop_free = false;
  // true when no nondegenerate chain exists above max_dim, i.e. the
  // complex is the full normalized chain complex.
  bool complete = false;
  std::vector<std::vector<MorId>> chains;  // chains[d], d >= 1; chains[0] unused

  std::size_t count(int d) const;
  std::span<const MorId> simplex(int d, std::size_t i) const {
    return {chains[d].data() + static_cast<std::size_t>(d) * i, static_cast<std::size_t>(d)};
  }
  std::optional<std::size_t> find(std::span<const MorId> chain) const;
};

inline constexpr std::size_t kDefaultSimplexLimit = 40'000'000;

NerveTruncation nerve(CategoryPtr c, int k, std::size_t simplex_limit = kDefaultSimplexLimit);

// Column-compressed integer matrix.
struct SparseMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::size_t> col_start{0};
  std::vector<std::uint32_t> row;
  std::vector<std::int64_t> value;

  std::size_t nnz() const { return row.size(); }
  void push_column(std::span<const std::pair<std::uint32_t, std::int64_t>> entries);
  std::vector<std::vector<std::int64_t>> dense() const;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
bool operator==(const SparseMatrix& a, const SparseMatrix& b);

// Degrees base .. base + ranks.size() - 1; boundary[i] maps degree base+i to
// base+i-1 (boundary[0] is empty). `complete` means no cells exist above the
// last degree.
struct ChainComplex {
  int base = 0;
  std::vector<std::size_t> ranks;
  std::vector<SparseMatrix> boundary;
  bool complete = false;

  int top() const { return base + static_cast<int>(ranks.size()) - 1; }
  std::size_t rank(int d) const {
    return d < base || d > top() ? 0 : ranks[d - base];
  }
};

ChainComplex chain_complex(const NerveTruncation& nv);
CheckReport check_boundary_squares(const ChainComplex& cx);
// Adds the degree -1 cell with the augmentation as boundary of every vertex.
ChainComplex augment(const ChainComplex& cx);

struct HomologyGroup {
  int degree = 0;
  std::size_t betti = 0;
  std::vector<BigInt> torsion;
  bool truncated = false;

  bool is_zero() const { return betti == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

std::string to_string(const HomologyGroup& h);  // "Z^2 + Z/2", "0"
std::string to_string(const std::vector<HomologyGroup>& hs);  // "H0=Z H1=Z"

// Homology of the complex as given, degrees base .. min(up_to, top).
std::vector<HomologyGroup> raw_homology(const ChainComplex& cx, int up_to);
// Unreduced homology of a nerve complex (base 0), computed through the
// augmentation.
std::vector<HomologyGroup> homology(const ChainComplex& cx, int up_to);
std::vector<HomologyGroup> homology(const FiniteCategory& c, int up_to);

// Per-degree matrices, degrees base .. top of the smaller complex.
struct ChainMap {
  const ChainComplex* source = nullptr;
  const ChainComplex* target = nullptr;
  std::vector<SparseMatrix> degree;  // degree[d - base]
};

struct InducedMap {
  NerveTruncation source_nerve, target_nerve;
  ChainComplex source, target;
  ChainMap map;
};

// Chain complexes of both nerves to degree k and the simplicial chain map.
InducedMap induced_chain_map(const Functor& f, int k);
// Same, but reusing already built nerves.
ChainMap induced_chain_map(const Functor& f, const NerveTruncation& source_nerve,
                           const NerveTruncation& target_nerve, const ChainComplex& source,
                           const ChainComplex& target);
CheckReport check_chain_map(const ChainMap& m);

// Homology isomorphism through degree k: the mapping cone of the augmented
// map is acyclic through degree k and H_k of both sides agree (a surjection
// between isomorphic finitely generated groups is an isomorphism).
CheckReport is_quasi_iso(const Functor& f, int k);
CheckReport is_quasi_iso(const ChainMap& m, int k);

// F_* = G_* on H_d for d <= k: (F - G) sends every cycle into the boundaries.
CheckReport nat_trans_homology_agreement(const NatTransformation& h, int k);
CheckReport chain_maps_agree_on_homology(const ChainMap& a, const ChainMap& b, int k);

}  // namespace fibrep
