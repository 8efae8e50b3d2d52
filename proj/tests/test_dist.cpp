#include <catch_amalgamated.hpp>

#include <random>

#include <distcat/dist.hpp>
#include <distcat/iso.hpp>
#include <distcat/models.hpp>
#include <distcat/universal.hpp>

#include "oracles.hpp"

using namespace distcat;

namespace {

using Obj = DistObject<ObjectId>;

/// Over the terminal base: one shape per entry of `sizes`.
Obj container(const std::vector<std::size_t>& sizes) {
  Obj x;
  for (std::size_t j = 0; j < sizes.size(); ++j)
    x.add_shape(std::to_string(j), numbered_labels(sizes[j]), std::vector<ObjectId>(sizes[j], ObjectId{0}));
  return x;
}

}  // namespace

TEST_CASE("object generation counts", "[dist]") {
  // Multisets of at most two shapes, each a multiset of at most two objects.
  const auto one = categories::terminal();
  CHECK(generate_dist_objects<PresentedCategory>(one.objects(), {2, 2}, true).size() == 10);
  const auto two = categories::arrow();
  CHECK(generate_dist_objects<PresentedCategory>(two.objects(), {2, 2}, true).size() == 28);
  // Without the reduction: shapes are words, objects words of shapes.
  CHECK(generate_dist_objects<PresentedCategory>(two.objects(), {2, 2}, false).size() == 1 + 7 + 49);
  CHECK(generate_dist_objects<PresentedCategory>(one.objects(), {0, 2}, true).size() == 1);
}

TEST_CASE("hom counts agree with enumeration and the brute-force oracle", "[dist][oracle]") {
  for (const auto& base : {categories::terminal(), categories::arrow(), categories::parallel_pair(),
                           categories::idempotent(), categories::isomorphic_pair()}) {
    const Dist<PresentedCategory> dist(base);
    const auto objs = generate_dist_objects<PresentedCategory>(base.objects(), {2, 2}, true);
    for (const auto& x : objs)
      for (const auto& y : objs) {
        const auto n = dist.hom_count(x, y);
        CHECK(n == oracle::brute_dist_hom_count(base, x, y));
        if (n <= 5000) CHECK(dist.hom(x, y).size() == n);
      }
  }
}

TEST_CASE("container formula over the terminal base", "[dist][oracle]") {
  const auto one = categories::terminal();
  const Dist<PresentedCategory> dist(one);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    std::vector<std::size_t> xs(rng() % 4), ys(rng() % 4);
    for (auto& n : xs) n = rng() % 4;
    for (auto& n : ys) n = rng() % 4;
    const auto x = container(xs);
    const auto y = container(ys);
    CHECK(dist.hom_count(x, y) == oracle::container_formula(xs, ys));
    CHECK(container_hom_count(x, y) == oracle::container_formula(xs, ys));
  }
  // 1 > 1 to 1 > 2: the shape goes to the only shape, both positions pull back to the single one.
  CHECK(dist.hom_count(container({1}), container({2})) == 1);
  CHECK(dist.hom_count(container({2}), container({1})) == 2);
  CHECK(dist.hom_count(container({}), container({})) == 1);
  CHECK(dist.hom_count(container({0}), container({})) == 0);
  CHECK(dist.hom_count(container({0}), container({1})) == 0);
}

TEST_CASE("composition matches the container oracle", "[dist][oracle]") {
  const auto one = categories::terminal();
  const Dist<PresentedCategory> dist(one);
  const std::vector<Obj> objs{container({1, 2}), container({2}), container({0, 1}), container({2, 2})};
  for (const auto& x : objs)
    for (const auto& y : objs)
      for (const auto& z : objs) {
        const auto fs = dist.hom(x, y);
        const auto gs = dist.hom(y, z);
        for (const auto& f : fs)
          for (const auto& g : gs)
            CHECK(oracle::from_dist(dist.compose(g, f)) ==
                  oracle::compose(oracle::from_dist(g), oracle::from_dist(f)));
      }
}

TEST_CASE("identities, typing and composition", "[dist]") {
  const auto base = categories::arrow();
  const Dist<PresentedCategory> dist(base);
  const auto a = base.object("a");
  const auto b = base.object("b");
  Obj x;
  x.add_shape("s", {"p", "q"}, {a, b});
  Obj y;
  y.add_shape("t", {"r"}, {b});
  const auto homs = dist.hom(x, y);
  // r pulls back to p (via f) or to q (via id_b).
  REQUIRE(homs.size() == 2);
  CHECK(homs[0].table[0].positions[0].source == 0);
  CHECK(base.name(homs[0].table[0].positions[0].morphism) == "f");
  CHECK(homs[1].table[0].positions[0].source == 1);
  for (const auto& h : homs) {
    CHECK_NOTHROW(dist.check_morphism(h));
    CHECK(dist.compose(dist.identity(y), h) == h);
    CHECK(dist.compose(h, dist.identity(x)) == h);
  }
  auto bad = homs[0];
  bad.table[0].positions[0].source = 1;  // f does not start at b
  CHECK_THROWS_AS(dist.check_morphism(bad), TypeMismatch);
  CHECK_THROWS_AS(dist.compose(homs[0], homs[0]), TypeMismatch);

  Obj broken = x;
  broken.entries[0].pop_back();
  CHECK_THROWS_AS(Dist<PresentedCategory>::check_object(broken), MalformedInput);
}

TEST_CASE("budget refuses large hom-sets", "[dist]") {
  const auto one = categories::terminal();
  const Dist<PresentedCategory> dist(one, 10);
  CHECK(dist.hom_count(container({2, 2}), container({2, 2})) == 64);
  CHECK_THROWS_AS(dist.hom(container({2, 2}), container({2, 2})), EnumerationBudgetExceeded);
  CHECK(dist.hom(container({1}), container({2})).size() == 1);
}

TEST_CASE("products and coproducts are universal", "[dist]") {
  const auto base = categories::arrow();
  const Dist<PresentedCategory> dist(base);
  const auto objs = generate_dist_objects<PresentedCategory>(base.objects(), {2, 1}, true);
  using C = Dist<PresentedCategory>;
  for (std::size_t p = 0; p < objs.size(); p += 3)
    for (std::size_t q = 1; q < objs.size(); q += 4) {
      const std::vector<Obj> diagram{objs[p], objs[q]};
      const auto prod = dist.product(diagram);
      const auto sum = dist.coproduct(diagram);
      // Shapes of the product are pairs of shapes; positions add up.
      CHECK(prod.object.shape_count() == objs[p].shape_count() * objs[q].shape_count());
      CHECK(sum.object.shape_count() == objs[p].shape_count() + objs[q].shape_count());
      Budget budget(50'000'000);
      const auto limits = all_cones(dist, std::span<const Obj>(diagram), std::span<const Obj>(objs),
                                    ConeDirection::limit, budget);
      const auto colimits = all_cones(dist, std::span<const Obj>(diagram), std::span<const Obj>(objs),
                                      ConeDirection::colimit, budget);
      CHECK(verify_universal(dist, ConeOf<C>{prod.object, prod.projections, ConeDirection::limit},
                             std::span<const ConeOf<C>>(limits), 50'000'000));
      CHECK(verify_universal(dist, ConeOf<C>{sum.object, sum.injections, ConeDirection::colimit},
                             std::span<const ConeOf<C>>(colimits), 50'000'000));
    }
  // Nullary cases: the terminal and initial objects.
  const auto top = dist.product({});
  CHECK(top.object == terminal_object<ObjectId>());
  const auto bottom = dist.coproduct({});
  CHECK(bottom.object == initial_object<ObjectId>());
  for (const auto& x : objs) {
    CHECK(dist.hom_count(x, top.object) == 1);
    CHECK(dist.hom_count(bottom.object, x) == 1);
  }
}

TEST_CASE("a wrong cone is rejected", "[dist]") {
  const auto one = categories::terminal();
  const Dist<PresentedCategory> dist(one);
  using C = Dist<PresentedCategory>;
  const std::vector<Obj> diagram{container({1}), container({1})};
  const auto sum = dist.coproduct(diagram);
  // Both injections into one summand: not jointly universal.
  const ConeOf<C> fake{sum.object, {sum.injections[0], sum.injections[0]}, ConeDirection::colimit};
  const std::vector<Obj> apexes{container({1}), container({1, 1})};
  Budget budget(kDefaultBudget);
  const auto cones = all_cones(dist, std::span<const Obj>(diagram), std::span<const Obj>(apexes),
                               ConeDirection::colimit, budget);
  CHECK_FALSE(verify_universal(dist, fake, std::span<const ConeOf<C>>(cones)));
  Budget b2(kDefaultBudget);
  CHECK(count_mediators(dist, ConeOf<C>{sum.object, sum.injections, ConeDirection::colimit}, cones.back(), b2) ==
        1);
}

TEST_CASE("tuple and cotuple", "[dist]") {
  const auto one = categories::terminal();
  const Dist<PresentedCategory> dist(one);
  const std::vector<Obj> factors{container({1, 2}), container({1})};
  const auto apex = container({2});
  const auto cone = dist.product(factors);
  for (const auto& f : dist.hom(apex, factors[0]))
    for (const auto& g : dist.hom(apex, factors[1])) {
      const std::vector<DistMorphism<ObjectId, MorphismId>> legs{f, g};
      const auto t = dist.tuple(factors, apex, legs);
      CHECK(dist.compose(cone.projections[0], t) == f);
      CHECK(dist.compose(cone.projections[1], t) == g);
    }
  const auto sum = dist.coproduct(factors);
  for (const auto& f : dist.hom(factors[0], apex))
    for (const auto& g : dist.hom(factors[1], apex)) {
      const std::vector<DistMorphism<ObjectId, MorphismId>> legs{f, g};
      const auto t = dist.cotuple(factors, apex, legs);
      CHECK(dist.compose(t, sum.injections[0]) == f);
      CHECK(dist.compose(t, sum.injections[1]) == g);
    }
  const std::vector<DistMorphism<ObjectId, MorphismId>> one_leg{dist.identity(apex)};
  CHECK_THROWS_AS(dist.tuple(factors, apex, one_leg), TypeMismatch);
}

TEST_CASE("isomorphisms", "[dist][oracle]") {
  const auto base = categories::isomorphic_pair();
  const Dist<PresentedCategory> dist(base);
  const auto a = base.object("a");
  const auto b = base.object("b");
  Obj x;
  x.add_shape("s", {"p", "q"}, {a, b});
  x.add_shape("t", {}, {});
  Obj y;
  y.add_shape("u", {}, {});
  y.add_shape("v", {"r", "w"}, {a, a});
  const auto iso = iso_check(dist, x, y);
  REQUIRE(iso.has_value());
  CHECK(dist.compose(iso->second, iso->first) == dist.identity(x));
  CHECK(dist.compose(iso->first, iso->second) == dist.identity(y));

  // Brute force: some pair of the hom-sets composes to identities both ways.
  auto brute = [&](const Obj& p, const Obj& q) {
    for (const auto& f : dist.hom(p, q))
      for (const auto& g : dist.hom(q, p))
        if (dist.compose(g, f) == dist.identity(p) && dist.compose(f, g) == dist.identity(q)) return true;
    return false;
  };
  const auto objs = generate_dist_objects<PresentedCategory>(base.objects(), {2, 1}, false);
  for (std::size_t i = 0; i < objs.size(); i += 2)
    for (std::size_t j = 0; j < objs.size(); j += 3)
      CHECK(iso_check(dist, objs[i], objs[j]).has_value() == brute(objs[i], objs[j]));

  for (const auto& f : dist.hom(x, y)) {
    const auto inv = dist_inverse(dist, f);
    if (inv) CHECK(dist.compose(*inv, f) == dist.identity(x));
  }
  const auto arrow = categories::arrow();
  const Dist<PresentedCategory> d2(arrow);
  CHECK_FALSE(iso_check(d2, generator_object(arrow.object("a")), generator_object(arrow.object("b"))));
}
