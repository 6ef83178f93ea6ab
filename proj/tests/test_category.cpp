#include <doctest.h>

#include "fibrep/corpus.hpp"
#include "fibrep/io.hpp"
#include "fibrep/standard.hpp"
#include "fixtures.hpp"

using namespace fibrep;

TEST_CASE("standard categories satisfy the axioms") {
  for (auto c : {terminal_category(), interval_category(), discrete_category({"a", "b", "c"}),
                 chain_category(4), square_boundary_category(), empty_category()}) {
    CHECK(validate_category(*c).passed());
  }
  auto sb = square_boundary_category();
  CHECK(sb->num_objects() == 4);
  CHECK(sb->num_morphisms() == 8);
  CHECK(chain_category(4)->num_morphisms() == 10);
}

TEST_CASE("poset closure and cycle rejection") {
  auto p = poset_category({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}});
  CHECK(p->hom(0, 2).size() == 1);
  CHECK(p->hom(2, 0).empty());
  CHECK_THROWS_AS(poset_category({"x", "y"}, {{"x", "y"}, {"y", "x"}}), Error);
  CHECK_THROWS_AS(poset_category({"x"}, {{"x", "q"}}), InputError);
}

TEST_CASE("composition table lookups") {
  auto i = interval_category();
  const MorId e0 = *i->find_morphism("id0"), e1 = *i->find_morphism("id1"), a = *i->find_morphism("i");
  CHECK(i->compose(a, e0) == a);
  CHECK(i->compose(e1, a) == a);
  CHECK(i->compose(a, a) == kNone);
  CHECK(i->is_identity(e0));
  CHECK_FALSE(i->is_identity(a));
  CHECK(i->outgoing(0).size() == 2);
  CHECK(i->incoming(1).size() == 2);
}

TEST_CASE("broken fixtures name the violated law") {
  auto check = [](const char* file, const char* law) {
    auto doc = load_document(fixture(file));
    CheckReport r;
    switch (doc.kind) {
      case DocumentKind::Category: r = validate_category(*doc.category); break;
      case DocumentKind::Functor: r = validate_functor(doc.functor); break;
      case DocumentKind::NatTransformation: r = validate_nat_trans(doc.transformation); break;
    }
    INFO(file << ": " << r.summary());
    CHECK(r.has_failure(law));
  };
  check("broken_composition.json", "composition undefined");
  check("broken_associativity.json", "associativity");
  check("broken_identity.json", "identity missing");
  check("broken_functor.json", "cod preservation");
  check("broken_functor_composition.json", "composition preservation");
  check("broken_nat_trans.json", "naturality");
}

TEST_CASE("functor validation") {
  auto i = interval_category(), star = terminal_category();
  CHECK(validate_functor(identity_functor(i)).passed());
  CHECK(validate_functor(constant_functor(i, i, 1)).passed());
  Functor partial = identity_functor(i);
  partial.on_morphisms[2] = kNone;
  CHECK(validate_functor(partial).has_failure("morphism map not total"));
  CHECK_THROWS_AS(monotone_functor(i, i, {1, 0}), Error);

  auto g = monotone_functor(i, star, {0, 0});
  auto h = compose_functors(g, identity_functor(i));
  CHECK(functors_equal(h, g));
  CHECK(functor_difference(h, g).empty());
  CHECK_FALSE(functor_difference(constant_functor(i, i, 0), constant_functor(i, i, 1)).empty());
}

TEST_CASE("transformations, whiskering and cylinders") {
  auto i = interval_category();
  auto h = poset_transformation(constant_functor(i, i, 0), constant_functor(i, i, 1));
  CHECK(validate_nat_trans(h).passed());
  CHECK_THROWS_AS(poset_transformation(constant_functor(i, i, 1), constant_functor(i, i, 0)), Error);

  auto star = terminal_category();
  auto pick0 = monotone_functor(star, i, {0});
  CHECK(validate_nat_trans(whisker_right(h, pick0)).passed());
  CHECK(validate_nat_trans(whisker_left(identity_functor(i), h)).passed());

  auto cyl = cylinder_functor(h.from, h.to, h);
  CHECK(validate_functor(cyl.functor).passed());
  CHECK(functors_equal(compose_functors(cyl.functor, cyl.end0), h.from));
  CHECK(functors_equal(compose_functors(cyl.functor, cyl.end1), h.to));
  CHECK(cyl.product.category->num_objects() == 4);
  CHECK(cyl.product.category->num_morphisms() == 9);
}

TEST_CASE("corpus is deterministic and valid") {
  Corpus a(7), b(7);
  for (int k = 0; k < 10; ++k) {
    auto p = a.poset(), q = b.poset();
    CHECK(same_category(*p, *q));
    CHECK(validate_category(*p).passed());
    auto f = a.monotone_functor(p, a.poset());
    CHECK(validate_functor(f).passed());
    CHECK(validate_nat_trans(a.transformation_from(f)).passed());
    b.monotone_functor(q, b.poset());
    b.transformation_from(f);
  }
  auto m = Corpus(3).poset_with_minimum();
  const auto bottom = *m->find_object(m->object_id(0));
  for (ObjId x = 0; x < static_cast<ObjId>(m->num_objects()); ++x) CHECK(m->hom(bottom, x).size() == 1);
}
