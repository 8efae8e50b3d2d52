#include <catch_amalgamated.hpp>

#include <distcat/fam.hpp>
#include <distcat/finset.hpp>
#include <distcat/universal.hpp>

using namespace distcat;

namespace {

FamObject<ObjectId> family(const PresentedCategory& c, std::vector<std::string> objs) {
  FamObject<ObjectId> x;
  for (std::size_t k = 0; k < objs.size(); ++k) {
    x.index.push_back("i" + std::to_string(k));
    x.entries.push_back(c.object(objs[k]));
  }
  return x;
}

}  // namespace

TEST_CASE("Fam hom counts match enumeration", "[fam]") {
  const auto c = categories::parallel_pair();
  const Fam<PresentedCategory> fam(c);
  const std::vector<FamObject<ObjectId>> objs{family(c, {}), family(c, {"a"}), family(c, {"b"}),
                                              family(c, {"a", "b"}), family(c, {"a", "a"}),
                                              family(c, {"b", "b", "a"})};
  for (const auto& x : objs)
    for (const auto& y : objs) {
      // Pi_i Sigma_j |C(x_i, y_j)| by hand.
      std::size_t expected = 1;
      for (auto cx : x.entries) {
        std::size_t s = 0;
        for (auto cy : y.entries) s += c.hom(cx, cy).size();
        expected *= s;
      }
      CHECK(fam.hom_count(x, y) == expected);
      CHECK(fam.hom(x, y).size() == expected);
    }
  // (a, a) -> (b): f or g at each index.
  CHECK(fam.hom_count(family(c, {"a", "a"}), family(c, {"b"})) == 4);
  // The empty family is initial.
  CHECK(fam.hom_count(family(c, {}), family(c, {"b"})) == 1);
  CHECK(fam.hom_count(family(c, {"a"}), family(c, {})) == 0);
}

TEST_CASE("Fam composition is associative and unital", "[fam]") {
  const auto c = categories::isomorphic_pair();
  const Fam<PresentedCategory> fam(c);
  const std::vector<FamObject<ObjectId>> objs{family(c, {"a"}), family(c, {"a", "b"}),
                                              family(c, {"b", "b"})};
  for (const auto& x : objs)
    for (const auto& y : objs) {
      for (const auto& f : fam.hom(x, y)) {
        CHECK(fam.compose(fam.identity(y), f) == f);
        CHECK(fam.compose(f, fam.identity(x)) == f);
        for (const auto& z : objs)
          for (const auto& g : fam.hom(y, z))
            for (const auto& w : objs)
              for (const auto& h : fam.hom(z, w))
                CHECK(fam.compose(h, fam.compose(g, f)) == fam.compose(fam.compose(h, g), f));
      }
    }
  CHECK_THROWS_AS(fam.compose(fam.identity(objs[0]), fam.identity(objs[1])), TypeMismatch);
}

TEST_CASE("Fam coproducts are disjoint unions", "[fam]") {
  const auto c = categories::arrow();
  const Fam<PresentedCategory> fam(c);
  const std::vector<FamObject<ObjectId>> xs{family(c, {"a"}), family(c, {"b", "a"})};
  const auto [sum, inj] = fam.coproduct(xs);
  CHECK(sum.size() == 3);
  CHECK(sum.index == std::vector<std::string>{"(0,i0)", "(1,i0)", "(1,i1)"});
  REQUIRE(inj.size() == 2);
  CHECK(inj[1].table[0].target == 1);
  CHECK(inj[1].table[1].target == 2);

  // Unique mediator into every apex with at most two entries.
  std::vector<FamObject<ObjectId>> apexes{family(c, {}), family(c, {"b"}), family(c, {"a", "b"})};
  ConeOf<Fam<PresentedCategory>> universal{sum, inj, ConeDirection::colimit};
  Budget budget(kDefaultBudget);
  const auto cones =
      all_cones(fam, std::span<const FamObject<ObjectId>>(xs), std::span<const FamObject<ObjectId>>(apexes),
                ConeDirection::colimit, budget);
  CHECK_FALSE(cones.empty());
  CHECK(verify_universal(fam, universal, std::span<const ConeOf<Fam<PresentedCategory>>>(cones)));
}

TEST_CASE("Fam products over FinSet", "[fam]") {
  const FinSetModel sets(3);
  const Fam<FinSetModel> fam(sets);
  const FamObject<std::size_t> x{{"p", "q"}, {1, 2}};
  const FamObject<std::size_t> y{{"r"}, {2}};
  const std::vector<FamObject<std::size_t>> xs{x, y};
  const auto [prod, proj] = fam.product(xs, product_hooks(sets));
  // Choice functions (p,r), (q,r) with entries 1*2 and 2*2.
  CHECK(prod.entries == std::vector<std::size_t>{2, 4});
  CHECK(prod.index.size() == 2);
  REQUIRE(proj.size() == 2);
  CHECK(proj[0].table[1].target == 1);

  Budget budget(kDefaultBudget);
  const std::vector<FamObject<std::size_t>> apexes{FamObject<std::size_t>{{"u"}, {1}},
                                                   FamObject<std::size_t>{{"u", "v"}, {0, 2}}};
  const auto cones = all_cones(fam, std::span<const FamObject<std::size_t>>(xs),
                               std::span<const FamObject<std::size_t>>(apexes), ConeDirection::limit, budget);
  ConeOf<Fam<FinSetModel>> universal{prod, proj, ConeDirection::limit};
  CHECK(verify_universal(fam, universal, std::span<const ConeOf<Fam<FinSetModel>>>(cones)));

  CHECK_THROWS_AS(fam.product(xs, {}), MissingStructure);
}

TEST_CASE("coproduct functor into FinSet", "[fam]") {
  const FinSetModel sets(4);
  const FamObject<std::size_t> x{{"a", "b", "c"}, {1, 0, 2}};
  CHECK(coproduct_functor(sets, x) == 3);
  CHECK(coproduct_functor(sets, FamObject<std::size_t>{{"a"}, {2}}) == 2);

  const Fam<FinSetModel> fam(sets);
  const FamObject<std::size_t> y{{"u", "v"}, {2, 1}};
  for (const auto& f : fam.hom(x, y)) {
    const auto g = coproduct_functor(sets, f);
    CHECK(g.src == 3);
    CHECK(g.dst == 3);
  }
  // Functoriality on a composable pair.
  const auto fs = fam.hom(x, y);
  const auto gs = fam.hom(y, y);
  for (const auto& f : fs)
    for (const auto& g : gs)
      CHECK(coproduct_functor(sets, fam.compose(g, f)) ==
            sets.compose(coproduct_functor(sets, g), coproduct_functor(sets, f)));
}

TEST_CASE("unit and multiplication", "[fam]") {
  const auto c = categories::arrow();
  const Fam<PresentedCategory> fam(c);
  const Fam<Fam<PresentedCategory>> fam2(fam);
  const auto x = family(c, {"a", "b", "a"});
  // mu . eta and mu . Fam(eta) are the identity up to relabelling.
  CHECK(fam.flatten(fam2.unit(x)).entries == x.entries);
  FamObject<FamObject<ObjectId>> singletons;
  for (std::size_t i = 0; i < x.size(); ++i) {
    singletons.index.push_back(x.index[i]);
    singletons.entries.push_back(fam.unit(x.entries[i]));
  }
  CHECK(fam.flatten(singletons).entries == x.entries);
  CHECK(fam.flatten(singletons).size() == 3);

  const auto f = *c.find_morphism("f");
  const auto uf = fam.unit(f);
  CHECK(uf.table.size() == 1);
  CHECK(uf.table[0].morphism == f);

  // mu is functorial on a composable pair of Fam(Fam(C)) morphisms.
  FamObject<FamObject<ObjectId>> p{{"u", "v"}, {family(c, {"a"}), family(c, {"a", "b"})}};
  FamObject<FamObject<ObjectId>> q{{"w"}, {family(c, {"b", "a"})}};
  const auto fs = fam2.hom(p, q);
  const auto gs = fam2.hom(q, q);
  REQUIRE_FALSE(fs.empty());
  for (const auto& a : fs) {
    CHECK(fam.flatten(a).table.size() == 3);
    for (const auto& b : gs) CHECK(fam.flatten(fam2.compose(b, a)) == fam.compose(fam.flatten(b), fam.flatten(a)));
  }
}
