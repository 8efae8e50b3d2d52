#include <catch_amalgamated.hpp>

#include <distcat/category.hpp>

#include "oracles.hpp"

using namespace distcat;

TEST_CASE("built-in categories satisfy the laws", "[category]") {
  for (const auto& cat : {categories::terminal(), categories::discrete({"a", "b"}), categories::arrow(),
                          categories::parallel_pair(), categories::isomorphic_pair(),
                          categories::idempotent(), categories::involution()}) {
    const auto report = validate_category(cat);
    CHECK(report.passed());
  }
}

TEST_CASE("hom-sets follow declaration order", "[category]") {
  const auto cat = categories::parallel_pair();
  const auto homs = enumerate_hom(cat, "a", "b");
  REQUIRE(homs.size() == 2);
  CHECK(cat.name(homs[0]) == "f");
  CHECK(cat.name(homs[1]) == "g");
  CHECK(enumerate_hom(cat, "b", "a").empty());
  CHECK(cat.hom_count(cat.object("a"), cat.object("a")) == 1);
  CHECK_THROWS_AS(enumerate_hom(cat, ObjectId{7}, ObjectId{0}), UnknownObject);
  CHECK_THROWS_AS(cat.object("zz"), UnknownObject);
}

TEST_CASE("composition table", "[category]") {
  const auto cat = categories::isomorphic_pair();
  const auto u = *cat.find_morphism("u");
  const auto v = *cat.find_morphism("v");
  CHECK(cat.compose(v, u) == cat.identity(cat.object("a")));
  CHECK(cat.compose(u, v) == cat.identity(cat.object("b")));
  CHECK_FALSE(cat.try_compose(u, u).has_value());
  CHECK_THROWS_AS(cat.compose(u, u), TypeMismatch);

  const auto z2 = categories::involution();
  const auto s = *z2.find_morphism("s");
  CHECK(z2.compose(s, s) == z2.identity(z2.object("x")));
}

TEST_CASE("validation reports every broken law", "[category]") {
  using D = PresentedCategory::MorphismDecl;
  // e idempotent, s an involution, but e . s = e and s . e = s breaks associativity:
  // s . (s . e) = s . s = id, while (s . s) . e = e.
  const PresentedCategory bad({"x"}, {D{"id_x", "x", "x"}, D{"e", "x", "x"}, D{"s", "x", "x"}},
                              {{"x", "id_x"}},
                              {{"id_x", "id_x", "id_x"}, {"id_x", "e", "e"}, {"e", "id_x", "e"},
                               {"id_x", "s", "s"}, {"s", "id_x", "s"}, {"e", "e", "e"},
                               {"s", "s", "id_x"}, {"e", "s", "e"}, {"s", "e", "s"}});
  const auto report = validate_category(bad);
  REQUIRE_FALSE(report.passed());
  for (const auto& v : report.violations) CHECK(v.law == "associativity");

  const PresentedCategory missing({"x"}, {D{"id_x", "x", "x"}, D{"e", "x", "x"}}, {{"x", "id_x"}},
                                  {{"id_x", "id_x", "id_x"}, {"id_x", "e", "e"}, {"e", "id_x", "e"}});
  const auto r2 = validate_category(missing);
  REQUIRE(r2.violations.size() == 1);
  CHECK(r2.violations[0].law == "compose-totality");
  CHECK(r2.violations[0].witness == std::vector<std::string>{"e", "e"});

  const PresentedCategory bad_unit({"x"}, {D{"id_x", "x", "x"}, D{"e", "x", "x"}}, {{"x", "id_x"}},
                                   {{"id_x", "id_x", "id_x"}, {"id_x", "e", "id_x"}, {"e", "id_x", "e"},
                                    {"e", "e", "e"}});
  const auto r3 = validate_category(bad_unit);
  REQUIRE_FALSE(r3.passed());
  CHECK(r3.violations[0].law == "left-unit");
}

TEST_CASE("malformed presentations are rejected", "[category]") {
  using D = PresentedCategory::MorphismDecl;
  CHECK_THROWS_AS(PresentedCategory({"x", "x"}, {}, {}, {}), MalformedInput);
  CHECK_THROWS_AS(PresentedCategory({"x"}, {D{"f", "x", "y"}}, {}, {}), MalformedInput);
  CHECK_THROWS_AS(PresentedCategory({"x"}, {D{"id", "x", "x"}}, {}, {}), MalformedInput);
  CHECK_THROWS_AS(PresentedCategory({"x"}, {D{"id", "x", "x"}}, {{"x", "nope"}}, {}), MalformedInput);
  CHECK_THROWS_AS(PresentedCategory({"x"}, {D{"id", "x", "x"}}, {{"x", "id"}},
                                    {{"id", "id", "id"}, {"id", "id", "id"}}),
                  MalformedInput);
}

TEST_CASE("opposite category", "[category]") {
  const auto cat = categories::arrow();
  const auto op = opposite(cat);
  CHECK(validate_category(op).passed());
  CHECK(enumerate_hom(op, "b", "a").size() == 1);
  CHECK(enumerate_hom(op, "a", "b").empty());
  CHECK(opposite(op) == cat);
}

TEST_CASE("small category enumeration", "[category][oracle]") {
  // Monoids of order 1, 2, 3 up to isomorphism: 1, 2, 7.
  const auto one = oracle::small_categories(1, 2);
  std::map<std::size_t, std::size_t> by_size;
  for (const auto& c : one) ++by_size[c.morphism_count()];
  CHECK(by_size[1] == 1);
  CHECK(by_size[2] == 2);
  CHECK(by_size[3] == 7);
  // Two objects: 1 discrete, 3 with one arrow and 16 with two (7 monoids
  // beside a bare object, 4 arrow-plus-endomorphism, 3 endomorphism pairs,
  // the parallel pair and the isomorphic pair).
  const auto two = oracle::small_categories(2, 2);
  CHECK(two.size() == 20);
  for (const auto& c : one) CHECK(validate_category(c).passed());
  for (const auto& c : two) CHECK(validate_category(c).passed());
}
