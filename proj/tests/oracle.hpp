#pragma once

// Independent reference computations for the tests. Nothing here calls the
// zig-zag, nerve or homology code of the library: counts come from nested
// loops over the composition table and homology from a dense Smith form.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "fibrep/category.hpp"
#include "fibrep/integer.hpp"

namespace oracle {

using fibrep::BigInt;
using fibrep::FiniteCategory;
using fibrep::MorId;
using fibrep::ObjId;

inline std::vector<MorId> all_morphisms(const FiniteCategory& d) {
  std::vector<MorId> out(d.num_morphisms());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// A zig-zag as the list of its 2n arrows a1, b1, ..., an, bn with
// cod a_i = cod b_i and dom b_i = dom a_{i+1}.
using Arrows = std::vector<MorId>;

inline void extend(const FiniteCategory& d, int n, Arrows& cur, std::vector<Arrows>& out) {
  if (static_cast<int>(cur.size()) == 2 * n) {
    out.push_back(cur);
    return;
  }
  for (MorId m : all_morphisms(d)) {
    const std::size_t k = cur.size();
    if (k % 2 == 1 && d.cod(m) != d.cod(cur[k - 1])) continue;           // b_i meets a_i
    if (k % 2 == 0 && k > 0 && d.dom(m) != d.dom(cur[k - 1])) continue;  // a_{i+1} leaves dom b_i
    cur.push_back(m);
    extend(d, n, cur, out);
    cur.pop_back();
  }
}

// Triples (n = 1) and quintuples (n = 2) of objects with their arrows.
inline std::vector<Arrows> zigzags(const FiniteCategory& d, int n) {
  std::vector<Arrows> out;
  Arrows cur;
  extend(d, n, cur, out);
  return out;
}

// Objects along positions 0..2n: bar_0, mid_1, bar_1, ...
inline std::vector<ObjId> positions(const FiniteCategory& d, const Arrows& z) {
  std::vector<ObjId> p{d.dom(z[0])};
  for (std::size_t i = 0; i < z.size(); i += 2) {
    p.push_back(d.cod(z[i]));
    p.push_back(d.dom(z[i + 1]));
  }
  return p;
}

// Componentwise families s -> t (one morphism per position) making every
// square commute.
inline std::size_t morphisms_between(const FiniteCategory& d, const Arrows& s, const Arrows& t) {
  const auto ps = positions(d, s), pt = positions(d, t);
  std::size_t count = 0;
  std::vector<MorId> comp(ps.size());
  auto rec = [&](auto&& self, std::size_t p) -> void {
    if (p == ps.size()) {
      ++count;
      return;
    }
    for (MorId c : d.hom(ps[p], pt[p])) {
      comp[p] = c;
      bool ok = true;
      if (p % 2 == 1) {  // mid: t.a ∘ comp[p-1] = comp[p] ∘ s.a
        ok = d.compose(t[p - 1], comp[p - 1]) == d.compose(comp[p], s[p - 1]);
      } else if (p > 0) {  // bar: t.b ∘ comp[p] = comp[p-1] ∘ s.b
        ok = d.compose(t[p - 1], comp[p]) == d.compose(comp[p - 1], s[p - 1]);
      }
      if (ok) self(self, p + 1);
    }
  };
  rec(rec, 0);
  return count;
}

inline std::size_t lambda_morphism_count(const FiniteCategory& d, int n) {
  const auto zs = zigzags(d, n);
  std::size_t total = 0;
  for (const auto& s : zs)
    for (const auto& t : zs) total += morphisms_between(d, s, t);
  return total;
}

// Sum over Y1 of (sum over X of |hom(X, Y1)|)^2: the closed form for n = 1.
inline std::size_t lambda1_closed_form(const FiniteCategory& d) {
  std::size_t total = 0;
  for (ObjId y = 0; y < static_cast<ObjId>(d.num_objects()); ++y) {
    std::size_t into = 0;
    for (ObjId x = 0; x < static_cast<ObjId>(d.num_objects()); ++x) into += d.hom(x, y).size();
    total += into * into;
  }
  return total;
}

// Strictly increasing chains x0 < ... < xd in a poset.
inline std::vector<std::size_t> poset_chain_counts(const FiniteCategory& p, int max_dim) {
  const auto n = static_cast<ObjId>(p.num_objects());
  auto lt = [&](ObjId a, ObjId b) { return a != b && !p.hom(a, b).empty(); };
  std::vector<std::vector<std::size_t>> ending(max_dim + 1, std::vector<std::size_t>(n, 0));
  for (ObjId x = 0; x < n; ++x) ending[0][x] = 1;
  for (int k = 1; k <= max_dim; ++k)
    for (ObjId y = 0; y < n; ++y)
      for (ObjId x = 0; x < n; ++x)
        if (lt(x, y)) ending[k][y] += ending[k - 1][x];
  std::vector<std::size_t> out;
  for (int k = 0; k <= max_dim; ++k)
    out.push_back(std::accumulate(ending[k].begin(), ending[k].end(), std::size_t{0}));
  return out;
}

// Dense Smith normal form; returns the nonzero diagonal as invariant factors
// (each dividing the next, all positive).
inline std::vector<BigInt> invariant_factors(std::vector<std::vector<BigInt>> a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<BigInt> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry in the remaining block as pivot
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) pr = i, pc = j;
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& r : a) std::swap(r[t], r[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& r : a) std::swap(r[t], r[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the rest of the block
      for (std::size_t i = t + 1; i < rows && clean; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            clean = false;
            break;
          }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  return diag;
}

struct Group {
  std::size_t betti = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1
};

// boundary[k] is the dense matrix of C_k -> C_{k-1} (rows = rank C_{k-1});
// boundary[0] is ignored. ranks[k] = rank C_k. Groups for k < ranks.size()-1.
inline std::vector<Group> homology(const std::vector<std::size_t>& ranks,
                                   const std::vector<std::vector<std::vector<BigInt>>>& boundary) {
  std::vector<std::vector<BigInt>> factors(ranks.size());
  for (std::size_t k = 1; k < ranks.size(); ++k) factors[k] = invariant_factors(boundary[k]);
  std::vector<Group> out;
  for (std::size_t k = 0; k + 1 < ranks.size(); ++k) {
    Group g;
    const std::size_t rank_out = k == 0 ? 0 : factors[k].size();
    g.betti = ranks[k] - rank_out - factors[k + 1].size();
    for (const auto& f : factors[k + 1])
      if (f > 1) g.torsion.push_back(f);
    out.push_back(g);
  }
  return out;
}

}  // namespace oracle
