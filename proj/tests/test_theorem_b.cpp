#include <doctest.h>

#include "fibrep/homology.hpp"
#include "fibrep/standard.hpp"
#include "fibrep/theorem_b.hpp"

using namespace fibrep;

TEST_CASE("extremal objects") {
  auto i = interval_category();
  CHECK(find_terminal(*i)->object == 1);
  CHECK(find_initial(*i)->object == 0);
  CHECK_FALSE(find_terminal(*discrete_category({"a", "b"})));
  CHECK_FALSE(find_initial(*square_boundary_category()));
}

TEST_CASE("adjoint search") {
  auto i = interval_category(), star = terminal_category();
  auto pick0 = monotone_functor(star, i, {0});
  auto r = find_right_adjoint(pick0);
  CHECK(r.found);
  CHECK(r.report.passed());
  auto l = find_left_adjoint(pick0);
  CHECK_FALSE(l.found);
  CHECK(l.witness == 1);  // 1\pick0 is empty

  auto pick1 = monotone_functor(star, i, {1});
  CHECK(find_left_adjoint(pick1).found);

  // a point has no right adjoint into two points
  auto two = monotone_functor(discrete_category({"a", "b"}), star, {0, 0});
  CHECK_FALSE(find_right_adjoint(two).found);
  CHECK(find_right_adjoint(identity_functor(square_boundary_category())).found);
}

TEST_CASE("projections are prefibred and base change is defined") {
  auto i = interval_category();
  auto p = product_category(i, i);
  auto pf = is_prefibred(p.proj_right);
  REQUIRE(pf.found());
  auto pc = is_precofibred(p.proj_right);
  CHECK(pc.found());
  auto bc = base_change(pf, *i->find_morphism("i"));
  CHECK(validate_functor(bc).passed());
  CHECK(bc.source->num_objects() == 2);
  CHECK(bc.target->num_objects() == 2);

  TheoremBOptions opt;
  opt.degree = 1;
  CHECK(check_theorem_b_hypothesis(p.proj_right, opt).passed());
  CHECK(check_corollary_hypothesis(p.proj_right, opt).passed());
}

TEST_CASE("the two-point inclusion into I fails Theorem B") {
  auto f = monotone_functor(discrete_category({"a", "b"}), interval_category(), {0, 1});
  TheoremBOptions opt;
  opt.degree = 1;
  auto r = check_theorem_b_hypothesis(f, opt);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(is_prefibred(f).found());
  CHECK_THROWS_AS(check_corollary_hypothesis(f, opt), Error);
}

TEST_CASE("replacement of the identity of the point") {
  EvrardOptions opt;
  opt.variant = Variant::Ordered;
  auto e = verify_evrard_replacement(identity_functor(terminal_category()), opt);
  CHECK(e.strict.passed());
  CHECK(e.witnesses.passed());
  CHECK(e.stability.passed());
  CHECK(e.verdict == Verdict::Pass);
}

TEST_CASE("replacement repairs the two-point inclusion on homology") {
  auto f = monotone_functor(discrete_category({"a", "b"}), interval_category(), {0, 1});
  EvrardOptions opt;
  opt.variant = Variant::Ordered;
  auto e = verify_evrard_replacement(f, opt);
  CHECK(e.strict.passed());
  CHECK(e.homological.report.passed());
  CHECK(e.homological.theorem_b.passed());
  // f_h is prefibred but not precofibred
  CHECK(is_prefibred(e.homological.theorem_b.f).found());
  CHECK_FALSE(is_precofibred(e.homological.theorem_b.f).found());
}
