#include <doctest.h>

#include "fibrep/corpus.hpp"
#include "fibrep/evrard.hpp"
#include "fibrep/homology.hpp"
#include "fibrep/path_category.hpp"
#include "fibrep/standard.hpp"
#include "oracle.hpp"

using namespace fibrep;

TEST_CASE("monotone maps") {
  auto phi = MonotoneMap{2, 3, {1, 3}};
  CHECK(is_admissible(phi, Variant::Strict));
  CHECK_FALSE(is_admissible(phi, Variant::Ordered));
  CHECK(is_admissible(inclusion_map(2, 3), Variant::Ordered));
  CHECK(compose_maps(identity_map(3), phi) == phi);
  CHECK(extend_last(phi) == MonotoneMap{3, 4, {1, 3, 4}});
  CHECK(parse_variant("le") == Variant::Ordered);
  CHECK_THROWS(parse_variant("lax"));

  auto str = build_index_category(Variant::Strict, 3);
  auto le = build_index_category(Variant::Ordered, 3);
  CHECK(str.category->num_morphisms() == 11);  // sum of C(n, m) over 1 <= m <= n <= 3
  CHECK(le.category->num_morphisms() == 6);
  CHECK(validate_category(*str.category).passed());
  CHECK(validate_category(*le.category).passed());
}

TEST_CASE("Lambda_1 of the interval has five objects") {
  auto l = build_lambda_n(interval_category(), 1);
  CHECK(l.category->num_objects() == 5);
  CHECK(validate_category(*l.category).passed());
  CHECK(validate_functor(l.p0).passed());
  CHECK(validate_functor(l.p1).passed());
}

TEST_CASE("zig-zag counts against brute force") {
  Corpus corpus(21);
  std::vector<CategoryPtr> ds{interval_category(), square_boundary_category(), chain_category(3)};
  for (int t = 0; t < 12; ++t) ds.push_back(corpus.poset(3, 0.5));
  for (const auto& d : ds) {
    for (int n = 1; n <= 2; ++n) {
      auto l = build_lambda_n(d, n);
      CHECK(l.category->num_objects() == oracle::zigzags(*d, n).size());
      if (d->num_objects() <= 3) CHECK(l.category->num_morphisms() == oracle::lambda_morphism_count(*d, n));
    }
    CHECK(oracle::zigzags(*d, 1).size() == oracle::lambda1_closed_form(*d));
  }
}

TEST_CASE("Lambda(phi) is functorial") {
  auto d = square_boundary_category();
  auto l1 = build_lambda_n(d, 1), l2 = build_lambda_n(d, 2), l3 = build_lambda_n(d, 3);
  auto a = lambda_functor(l1, l2, MonotoneMap{1, 2, {2}});
  auto b = lambda_functor(l2, l3, MonotoneMap{2, 3, {1, 3}});
  auto ba = lambda_functor(l1, l3, MonotoneMap{1, 3, {3}});
  CHECK(validate_functor(a).passed());
  CHECK(validate_functor(b).passed());
  CHECK(functors_equal(compose_functors(b, a), ba));
  CHECK(functors_equal(lambda_functor(l2, l2, identity_map(2)), identity_functor(l2.category)));
}

TEST_CASE("path categories are valid Grothendieck constructions") {
  for (auto v : {Variant::Strict, Variant::Ordered}) {
    auto st = build_path_category(interval_category(), 2, v);
    CHECK(validate_category(*st.category()).passed());
    CHECK(validate_functor(st.p0).passed());
    CHECK(validate_functor(st.p1).passed());
    auto hi = build_path_category(interval_category(), 3, v);
    CHECK(validate_functor(stage_inclusion(st, hi)).passed());
  }
}

TEST_CASE("replacement identities hold in both variants") {
  for (const auto& [name, f] : standard_functors()) {
    for (auto v : {Variant::Strict, Variant::Ordered}) {
      for (int n = 1; n <= 2; ++n) {
        auto r = build_replacement(f, n, v);
        INFO(name << " " << to_string(v) << " N=" << n);
        CHECK(check_replacement_identities(r).passed());
        CHECK(validate_functor(r.f_h).passed());
      }
    }
  }
}

TEST_CASE("p1 on Lambda_n is a homology isomorphism") {
  for (auto d : {interval_category(), square_boundary_category()}) {
    for (int n = 1; n <= 2; ++n) {
      auto l = build_lambda_n(d, n);
      CHECK(is_quasi_iso(l.p1, 2).passed());
      CHECK(is_quasi_iso(l.p0, 2).passed());
    }
  }
}

TEST_CASE("budget is enforced") {
  CHECK_THROWS_AS(build_lambda_n(chain_category(4), 2, Budget{100}), BudgetExceeded);
}
