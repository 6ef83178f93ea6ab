#include <doctest.h>

#include "fibrep/corpus.hpp"
#include "fibrep/evrard.hpp"
#include "fibrep/path_functors.hpp"
#include "fibrep/standard.hpp"

using namespace fibrep;

TEST_CASE("homotopy from a transformation") {
  auto i = interval_category();
  auto h = poset_transformation(constant_functor(i, i, 0), identity_functor(i));
  auto w = witness_from_transformation(h);
  CHECK(check_evrard_homotopy(w).passed());
  auto chain = witness_to_nat_trans_chain(w);
  CHECK(chain.functors.size() == 3);
  CHECK(chain.transformations.size() == 2);
  for (const auto& t : chain.transformations) CHECK(validate_nat_trans(t).passed());
  CHECK(check_evrard_homotopy(constant_witness(identity_functor(i))).passed());

  auto wrong = w;
  wrong.g = constant_functor(i, i, 1);
  CHECK(check_evrard_homotopy(wrong).has_failure("p1 mismatch"));
}

TEST_CASE("contraction of Lambda_n") {
  for (auto d : {interval_category(), chain_category(3), square_boundary_category()}) {
    for (int n = 1; n <= 2; ++n) {
      auto l = build_lambda_n(d, n);
      auto w = contraction_witness(l);
      CHECK(check_evrard_homotopy(w).passed());
      CHECK(functors_equal(w.f, constant_start_functor(l)));
      CHECK(functors_equal(w.g, identity_functor(l.category)));
    }
  }
}

TEST_CASE("shift and theta are valid in both variants") {
  for (const auto& [name, f] : standard_functors()) {
    for (auto v : {Variant::Strict, Variant::Ordered}) {
      for (int n = 1; n <= 2; ++n) {
        auto lo = build_replacement(f, n, v), hi = build_replacement(f, n + 1, v);
        auto sh = shift_functor(lo, hi);
        INFO(name << " " << to_string(v) << " N=" << n);
        CHECK(validate_functor(sh.shift).passed());
        CHECK(validate_nat_trans(sh.theta).passed());
        for (ObjId y = 0; y < static_cast<ObjId>(f.target->num_objects()); ++y)
          CHECK(check_ell_identity(ell_y(lo, hi, y)).passed());
      }
    }
  }
}

TEST_CASE("transport and ell in the strict variant") {
  for (const auto& [name, f] : standard_functors()) {
    for (int n = 1; n <= 2; ++n) {
      auto lo = build_replacement(f, n, Variant::Strict), hi = build_replacement(f, n + 1, Variant::Strict);
      INFO(name << " N=" << n);
      for (MorId u = 0; u < static_cast<MorId>(f.target->num_morphisms()); ++u) {
        auto t = transport(lo, hi, u);
        CHECK(validate_functor(t.lower).passed());
        CHECK(validate_functor(t.upper_lo).passed());
        CHECK(validate_nat_trans(t.theta1).passed());
        CHECK(validate_nat_trans(t.theta2).passed());
      }
      for (ObjId y = 0; y < static_cast<ObjId>(f.target->num_objects()); ++y) {
        auto e = ell_y(lo, hi, y);
        CHECK(validate_functor(e.ell).passed());
        CHECK(validate_nat_trans(e.omega).passed());
      }
    }
  }
}

// In the ordered variant a tail cannot be appended to a path that is padded
// by i |-> i; the first stage where this bites is N = 2.
TEST_CASE("ell_Y is partial in the ordered variant") {
  auto f = identity_functor(interval_category());
  auto lo = build_replacement(f, 2, Variant::Ordered), hi = build_replacement(f, 3, Variant::Ordered);
  bool partial = false;
  for (ObjId y = 0; y < 2; ++y) partial |= validate_functor(ell_y(lo, hi, y).ell).has_failure("morphism map not total");
  CHECK(partial);
  auto lo1 = build_replacement(f, 1, Variant::Ordered), hi1 = build_replacement(f, 2, Variant::Ordered);
  for (ObjId y = 0; y < 2; ++y) CHECK(validate_functor(ell_y(lo1, hi1, y).ell).passed());
}

TEST_CASE("iq ladder") {
  auto f = identity_functor(interval_category());
  for (int n = 1; n <= 2; ++n) {
    auto iq = iq_homotopy_witness(build_replacement(f, n, Variant::Ordered));
    REQUIRE(iq.built());
    CHECK(check_evrard_homotopy(iq.witness).passed());
  }
  // with gaps in phi the rungs are not morphisms over phi, or (when they
  // are, as over a point) they are not natural
  auto iq = iq_homotopy_witness(build_replacement(f, 2, Variant::Strict));
  CHECK(iq.issues.has_failure("rung not hosted"));
  auto to_point = monotone_functor(interval_category(), terminal_category(), {0, 0});
  CHECK(iq_homotopy_witness(build_replacement(to_point, 2, Variant::Strict)).issues.has_failure("ladder not natural"));
  CHECK(iq_homotopy_witness(build_replacement(to_point, 1, Variant::Strict)).built());
}
