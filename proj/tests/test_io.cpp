#include <doctest.h>

#include "fibrep/io.hpp"
#include "fibrep/standard.hpp"
#include "fixtures.hpp"

using namespace fibrep;

TEST_CASE("fixtures load") {
  auto i = load_category(fixture("interval.json"));
  CHECK(same_category(*i, *interval_category()));
  auto sb = load_category(fixture("square_boundary.json"));
  CHECK(sb->num_morphisms() == 8);
  auto f = load_functor(fixture("square_inclusion.json"));
  CHECK(validate_functor(f).passed());
  auto h = load_document(fixture("const0_to_const1.json"));
  CHECK(h.kind == DocumentKind::NatTransformation);
  CHECK(validate_nat_trans(h.transformation).passed());
}

TEST_CASE("category round trip") {
  for (auto c : {interval_category(), square_boundary_category(), load_category(fixture("z2.json"))}) {
    auto back = category_from_json(category_to_json(*c));
    CHECK(same_category(*c, *back));
  }
}

TEST_CASE("inline references and functor round trip") {
  auto i = interval_category();
  auto f = monotone_functor(i, i, {0, 0});
  Json doc = functor_to_json(f, category_to_json(*i), category_to_json(*i));
  auto back = document_from_json(doc, ".");
  REQUIRE(back.kind == DocumentKind::Functor);
  CHECK(back.functor.on_objects == f.on_objects);
  CHECK(back.functor.on_morphisms == f.on_morphisms);
}

TEST_CASE("malformed input is an InputError") {
  CHECK_THROWS_AS(load_document(fixture("no_such_file.json")), InputError);
  CHECK_THROWS_AS(category_from_json(Json::parse(R"({"type": "category", "objects": ["x"],
      "morphisms": [{"id": "f", "dom": "x", "cod": "nowhere"}]})")), InputError);
  CHECK_THROWS_AS(document_from_json(Json::parse(R"({"type": "sheaf"})"), "."), InputError);
  CHECK_THROWS_AS(category_from_json(Json::parse(R"({"type": "category", "poset": true,
      "objects": ["x", "y"], "relations": [["x", "y"], ["y", "x"]]})")), Error);
}

TEST_CASE("reports serialise") {
  CheckReport r;
  r.fail("associativity", "(a, b, c)");
  auto j = report_to_json(r);
  CHECK(j["passed"] == false);
  CHECK(j["failures"][0]["law"] == "associativity");
  auto hj = homology_to_json(homology(*square_boundary_category(), 1));
  CHECK(hj.size() == 2);
}
