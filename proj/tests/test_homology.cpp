#include <doctest.h>

#include <random>

#include "fibrep/corpus.hpp"
#include "fibrep/homology.hpp"
#include "fibrep/io.hpp"
#include "fibrep/standard.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace fibrep;

namespace {

std::vector<std::vector<BigInt>> to_big(const std::vector<std::vector<std::int64_t>>& m) {
  std::vector<std::vector<BigInt>> out;
  for (const auto& row : m) out.emplace_back(row.begin(), row.end());
  return out;
}

// Dense oracle on the same complex the engine reads.
std::vector<oracle::Group> dense_homology(const ChainComplex& cx) {
  std::vector<std::vector<std::vector<BigInt>>> bd(cx.ranks.size());
  for (std::size_t k = 1; k < cx.ranks.size(); ++k) {
    bd[k] = to_big(cx.boundary[k].dense());
    if (bd[k].empty()) bd[k].assign(cx.ranks[k - 1], {});
  }
  return oracle::homology(cx.ranks, bd);
}

void agree(const FiniteCategory& c, int k) {
  auto cx = chain_complex(nerve(std::shared_ptr<const FiniteCategory>(&c, [](auto*) {}), k + 1));
  auto engine = homology(cx, k);
  auto dense = dense_homology(cx);
  REQUIRE(engine.size() >= static_cast<std::size_t>(k + 1));
  for (int d = 0; d <= k; ++d) {
    INFO("degree " << d << ": " << to_string(engine[d]));
    CHECK(engine[d].betti == dense[d].betti);
    CHECK(engine[d].torsion == dense[d].torsion);
  }
}

}  // namespace

TEST_CASE("known homology") {
  // zero groups are omitted from the summary
  CHECK(to_string(homology(*terminal_category(), 3)) == "H0=Z");
  CHECK(to_string(homology(*interval_category(), 2)) == "H0=Z");
  CHECK(to_string(homology(*square_boundary_category(), 2)) == "H0=Z H1=Z");
  CHECK(to_string(homology(*discrete_category({"a", "b"}), 1)) == "H0=Z^2");
  CHECK(to_string(homology(*chain_category(4), 1)) == "H0=Z");
  auto z2 = load_category(fixture("z2.json"));
  auto h = homology(*z2, 3);
  CHECK(h[0].betti == 1);
  CHECK(h[1].betti == 0);
  CHECK(h[1].torsion == std::vector<BigInt>{2});
  CHECK(h[2].is_zero());
  CHECK(h[3].torsion == std::vector<BigInt>{2});
}

TEST_CASE("nerve counts match chains of the poset") {
  Corpus corpus(5);
  for (int t = 0; t < 20; ++t) {
    auto p = corpus.poset(6, 0.5);
    auto nv = nerve(p, 3);
    auto expect = oracle::poset_chain_counts(*p, 3);
    CHECK(p->num_objects() == expect[0]);
    for (int d = 1; d <= 3; ++d) CHECK(nv.count(d) == expect[d]);
    CHECK(nv.loop_free);
    CHECK(check_boundary_squares(chain_complex(nv)).passed());
  }
  auto sb = nerve(square_boundary_category(), 2);
  CHECK(sb.count(1) == 4);
  CHECK(sb.count(2) == 0);
  CHECK(sb.complete);
}

TEST_CASE("engine agrees with a dense Smith form") {
  Corpus corpus(9);
  for (int t = 0; t < 15; ++t) agree(*corpus.poset(6, 0.45), 2);
  agree(*load_category(fixture("z2.json")), 3);
  agree(*load_category(fixture("idempotent.json")), 3);
  agree(*load_category(fixture("kronecker.json")), 2);
}

TEST_CASE("Smith form oracle sanity") {
  auto f = oracle::invariant_factors({{2, 0}, {0, 3}});
  CHECK(f == std::vector<BigInt>{1, 6});
  f = oracle::invariant_factors({{2, 4}, {4, 2}});
  CHECK(f == std::vector<BigInt>{2, 6});
}

TEST_CASE("quasi-isomorphisms") {
  auto i = interval_category(), star = terminal_category(), sb = square_boundary_category();
  CHECK(is_quasi_iso(monotone_functor(i, star, {0, 0}), 2).passed());
  CHECK(is_quasi_iso(monotone_functor(star, i, {1}), 2).passed());
  CHECK_FALSE(is_quasi_iso(monotone_functor(discrete_category({"a", "b"}), star, {0, 0}), 1).passed());
  CHECK_FALSE(is_quasi_iso(monotone_functor(sb, star, {0, 0, 0, 0}), 1).passed());
  // S^1 -> S^1 folding both arcs onto one still kills H1
  auto fold = monotone_functor(sb, sb, {0, 1, 2, 2});
  CHECK_FALSE(is_quasi_iso(fold, 1).passed());
  CHECK(is_quasi_iso(identity_functor(sb), 2).passed());

  auto m = induced_chain_map(monotone_functor(i, star, {0, 0}), 2);
  CHECK(check_chain_map(m.map).passed());
}

TEST_CASE("transformations agree on homology") {
  auto i = interval_category();
  CHECK(nat_trans_homology_agreement(poset_transformation(constant_functor(i, i, 0), identity_functor(i)), 2).passed());
  auto sb = square_boundary_category();
  CHECK(nat_trans_homology_agreement(poset_transformation(monotone_functor(sb, sb, {0, 1, 2, 2}), monotone_functor(sb, sb, {0, 1, 2, 2})), 2).passed());
  // id and the fold are not related by a transformation and differ on H1
  auto a = induced_chain_map(identity_functor(sb), 2);
  auto r = chain_maps_agree_on_homology(
      a.map, induced_chain_map(monotone_functor(sb, sb, {0, 1, 2, 2}), a.source_nerve, a.target_nerve, a.source, a.target), 1);
  CHECK(r.has_failure("induced maps differ on homology"));
}
