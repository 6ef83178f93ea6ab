#include <doctest.h>

#include "examples.hpp"
#include "fibrep/comma.hpp"
#include "fibrep/corpus.hpp"
#include "fibrep/homology.hpp"

using namespace fibrep;

TEST_CASE("comma categories of the square boundary") {
  auto sb = square_boundary_category();
  auto under_a = under_category(sb, 0);
  CHECK(under_a.category->num_objects() == 3);  // a, c, d
  CHECK(validate_category(*under_a.category).passed());
  CHECK(validate_functor(under_a.projection_j).passed());

  auto incl = monotone_functor(discrete_category({"a", "b"}), sb, {0, 1});
  auto over_c = comma_over(incl, 2);
  CHECK(over_c.category->num_objects() == 2);
  CHECK(to_string(homology(*over_c.category, 1)) == to_string(homology(*discrete_category({"x", "y"}), 1)));
  CHECK(comma_under(incl, 2).category->num_objects() == 0);
  CHECK(comma_under(incl, 0).category->num_objects() == 1);

  auto proj = bracket_projection(comma_under(identity_functor(sb), 0), under_a);
  CHECK(validate_functor(proj).passed());
}

TEST_CASE("induced maps between comma categories") {
  auto i = interval_category(), star = terminal_category();
  auto f = monotone_functor(i, i, {0, 1});
  const MorId a = *i->find_morphism("i");
  auto up = induced_under_map(f, a);    // 1\f -> 0\f
  auto down = induced_over_map(f, a);   // f\0 -> f\1
  CHECK(validate_functor(up).passed());
  CHECK(validate_functor(down).passed());
  CHECK(up.source->num_objects() == 1);
  CHECK(up.target->num_objects() == 2);
  CHECK(down.source->num_objects() == 1);
  CHECK(down.target->num_objects() == 2);

  auto g = monotone_functor(i, star, {0, 0});
  auto fib = fiber(g, 0);
  CHECK(fib.category->num_objects() == 2);
  CHECK(fib.category->num_morphisms() == 3);
  auto comma = comma_under(g, 0);
  CHECK(validate_functor(fiber_inclusion_under(fib, comma)).passed());
  CHECK(validate_functor(fiber_inclusion_over(fib, comma_over(g, 0))).passed());

  // fiber of the identity of I over 1 is just the object 1
  auto f1 = fiber(f, 1);
  CHECK(f1.category->num_objects() == 1);
  CHECK(f1.object_to_sub[0] == kNone);
}

TEST_CASE("pullbacks and full subcategories") {
  auto i = interval_category(), star = terminal_category();
  auto g = monotone_functor(i, star, {0, 0});
  auto pb = pullback(g, g);
  CHECK(pb.category->num_objects() == 4);
  CHECK(pb.category->num_morphisms() == 9);
  CHECK(validate_category(*pb.category).passed());
  CHECK(functors_equal(compose_functors(g, pb.proj_a), compose_functors(g, pb.proj_b)));

  auto sb = square_boundary_category();
  auto sub = full_subcategory(sb, {0, 2});
  CHECK(sub.category->num_objects() == 2);
  CHECK(sub.category->num_morphisms() == 3);
  CHECK(validate_functor(sub.inclusion).passed());
  CHECK_THROWS_AS(pullback(g, g, Budget{5}), BudgetExceeded);
}

TEST_CASE("Grothendieck construction of a tower") {
  auto t = examples::tower();
  CHECK(validate_cat_valued(t.f).passed());
  auto gf = grothendieck(t.f);
  CHECK(gf.category->num_objects() == 5);
  CHECK(gf.category->num_morphisms() == 14);  // 6 + 3 over identities, 5 over i
  CHECK(validate_category(*gf.category).passed());
  CHECK(validate_functor(gf.projection).passed());

  auto gg = grothendieck(t.g), gh = grothendieck(t.h);
  auto a = grothendieck_map(gf, gg, t.f, t.g, t.alpha);
  auto b = grothendieck_map(gg, gh, t.g, t.h, t.beta);
  std::vector<Functor> ba{compose_functors(t.beta[0], t.alpha[0]), compose_functors(t.beta[1], t.alpha[1])};
  auto c = grothendieck_map(gf, gh, t.f, t.h, ba);
  CHECK(validate_functor(a).passed());
  CHECK(functors_equal(c, compose_functors(b, a)));
  auto id = grothendieck_map(gg, gg, t.g, t.g, {identity_functor(t.g.on_objects[0]), identity_functor(t.g.on_objects[1])});
  CHECK(functors_equal(id, identity_functor(gg.category)));

  // alpha_1 = const 0 breaks naturality
  auto i = interval_category();
  std::vector<Functor> bad{t.alpha[0], constant_functor(i, i, 0)};
  CHECK_THROWS_AS(grothendieck_map(gf, gg, t.f, t.g, bad), CheckFailed);
}

TEST_CASE("lax data round trip") {
  auto t = examples::tower();
  auto gf = grothendieck(t.f);
  for (const auto& functor : {gf.projection, grothendieck_map(gf, grothendieck(t.g), t.f, t.g, t.alpha)}) {
    auto data = decompose_functor(gf, t.f, functor);
    CHECK(validate_lax_data(t.f, data).passed());
    CHECK(functors_equal(functor_from_lax_data(gf, t.f, data), functor));
  }
}

TEST_CASE("constant Cat-valued functors give products") {
  Corpus corpus(11);
  for (int k = 0; k < 5; ++k) {
    auto base = corpus.poset(4), fibre = corpus.poset(4);
    auto g = grothendieck(examples::constant_cat_valued(base, fibre));
    CHECK(g.category->num_objects() == base->num_objects() * fibre->num_objects());
    CHECK(g.category->num_morphisms() == base->num_morphisms() * fibre->num_morphisms());
    CHECK(validate_category(*g.category).passed());
  }
}

TEST_CASE("non-strict Cat-valued functor is rejected") {
  auto i = interval_category();
  auto f = examples::arrow_cat_valued(identity_functor(i));
  f.on_morphisms[0] = constant_functor(i, i, 0);  // F(id0) != id
  CHECK_FALSE(validate_cat_valued(f).passed());
  CHECK_THROWS_AS(grothendieck(f), CheckFailed);
}
