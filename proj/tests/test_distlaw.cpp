#include <catch_amalgamated.hpp>

#include <random>

#include <distcat/distlaw.hpp>
#include <distcat/models.hpp>

#include "oracles.hpp"

using namespace distcat;

namespace {

using Obj = DistObject<ObjectId>;

DistributorFamily<std::size_t> random_family(std::mt19937_64& rng, std::size_t max_j, std::size_t max_i,
                                             std::size_t max_size) {
  DistributorFamily<std::size_t> fam;
  const std::size_t nj = rng() % (max_j + 1);
  for (std::size_t j = 0; j < nj; ++j) {
    fam.outer.push_back(std::to_string(j));
    const std::size_t ni = rng() % (max_i + 1);
    fam.inner.push_back(numbered_labels(ni));
    std::vector<std::size_t> col;
    for (std::size_t i = 0; i < ni; ++i) col.push_back(rng() % (max_size + 1));
    fam.entries.push_back(col);
  }
  return fam;
}

}  // namespace

TEST_CASE("lambda on objects enumerates choice functions", "[distlaw]") {
  Obj x;
  x.add_shape("1", {"0", "1"}, {ObjectId{0}, ObjectId{0}});
  x.add_shape("2", {"0", "1"}, {ObjectId{0}, ObjectId{0}});
  const auto d = lambda_obj(x);
  REQUIRE(d.shape_count() == 4);
  for (std::size_t s = 0; s < 4; ++s) {
    CHECK(d.position_count(s) == 2);
    CHECK(d.inner[s] == std::vector<std::string>{"1", "2"});
  }
  CHECK(d.outer == std::vector<std::string>{"[0,0]", "[0,1]", "[1,0]", "[1,1]"});

  // An empty summand leaves no choice functions; an empty product leaves one.
  Obj y;
  y.add_shape("1", {}, {});
  CHECK(lambda_obj(y).shape_count() == 0);
  CHECK(lambda_obj(Obj{}).shape_count() == 1);
  CHECK(lambda_obj(Obj{}).position_count(0) == 0);
}

TEST_CASE("lambda on objects picks entries", "[distlaw]") {
  const auto base = categories::arrow();
  const auto a = base.object("a");
  const auto b = base.object("b");
  Obj x;
  x.add_shape("j", {"p", "q"}, {a, b});
  x.add_shape("k", {"r"}, {b});
  const auto d = lambda_obj(x);
  REQUIRE(d.shape_count() == 2);
  CHECK(d.entries[0] == std::vector<ObjectId>{a, b});
  CHECK(d.entries[1] == std::vector<ObjectId>{b, b});
}

TEST_CASE("lambda is a functor", "[distlaw]") {
  for (const auto& base : {categories::terminal(), categories::arrow(), categories::involution()}) {
    const Dist<PresentedCategory> dist(base);
    const ProdOfSums<PresentedCategory> pos(base);
    const auto objs = generate_dist_objects<PresentedCategory>(base.objects(), {2, 2}, true);
    for (const auto& x : objs) CHECK(lambda_mor(pos, pos.identity(x)) == dist.identity(lambda_obj(x)));
    std::size_t pairs = 0;
    for (std::size_t p = 0; p < objs.size(); p += 2)
      for (std::size_t q = 0; q < objs.size(); q += 3)
        for (std::size_t r = 1; r < objs.size(); r += 3) {
          if (pos.hom_count(objs[p], objs[q]) * pos.hom_count(objs[q], objs[r]) > 2000) continue;
          for (const auto& g1 : pos.hom(objs[p], objs[q]))
            for (const auto& g2 : pos.hom(objs[q], objs[r])) {
              CHECK(lambda_mor(pos, pos.compose(g2, g1)) ==
                    dist.compose(lambda_mor(pos, g2), lambda_mor(pos, g1)));
              ++pairs;
            }
        }
    CHECK(pairs > 0);
  }
}

TEST_CASE("products of coproducts: hom counts", "[distlaw]") {
  const auto base = categories::arrow();
  const ProdOfSums<PresentedCategory> pos(base);
  const auto objs = generate_dist_objects<PresentedCategory>(base.objects(), {2, 2}, true);
  for (std::size_t p = 0; p < objs.size(); p += 2)
    for (std::size_t q = 0; q < objs.size(); q += 3) {
      const auto& x = objs[p];
      const auto& y = objs[q];
      // Pi_j' Sigma_j Pi_i Sigma_i' |C(C_ij, C'_i'j')|
      std::size_t expected = 1;
      for (std::size_t jp = 0; jp < y.shape_count(); ++jp) {
        std::size_t sum = 0;
        for (std::size_t j = 0; j < x.shape_count(); ++j) {
          std::size_t prod = 1;
          for (auto c : x.entries[j]) {
            std::size_t s = 0;
            for (auto cp : y.entries[jp]) s += base.hom_count(c, cp);
            prod *= s;
          }
          sum += prod;
        }
        expected *= sum;
      }
      CHECK(pos.hom_count(x, y) == expected);
      if (expected <= 2000) CHECK(pos.hom(x, y).size() == expected);
    }
}

TEST_CASE("the FinSet distributor is invertible", "[distlaw][oracle]") {
  const FinSetModel model(3);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 60; ++k) {
    const auto fam = random_family(rng, 3, 3, 2);
    const auto d = canonical_distributor(model, fam);
    const auto [prod_of_sums, sum_of_prods] = oracle::distributive_sizes(fam.entries);
    CHECK(d.target == prod_of_sums);
    CHECK(d.source == sum_of_prods);
    CHECK(check_distributor_iso(model, fam));
    const auto inv = distributor_inverse_finset(fam);
    CHECK(model.compose(inv, d.morphism) == model.identity(d.source));
    CHECK(model.compose(d.morphism, inv) == model.identity(d.target));
  }
  // J empty: 1 -> 1.
  const auto d = canonical_distributor(model, DistributorFamily<std::size_t>{});
  CHECK(d.source == 1);
  CHECK(d.target == 1);
}

TEST_CASE("the distributor in Dist(1) is invertible", "[distlaw]") {
  const auto one = categories::terminal();
  const auto model = dist_as_model(one, {2, 2});
  const auto objs = model.objects();
  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    DistributorFamily<Obj> fam;
    const std::size_t nj = 1 + rng() % 2;
    for (std::size_t j = 0; j < nj; ++j) {
      fam.outer.push_back(std::to_string(j));
      const std::size_t ni = 1 + rng() % 2;
      fam.inner.push_back(numbered_labels(ni));
      std::vector<Obj> col;
      for (std::size_t i = 0; i < ni; ++i) col.push_back(objs[rng() % objs.size()]);
      fam.entries.push_back(col);
    }
    CHECK(check_distributor_iso(model, fam));
  }
}

TEST_CASE("M3 and N5 families are not inverted", "[distlaw]") {
  // M3: 0 < a, b, c < 1. N5: 0 < a < b < 1, 0 < c < 1.
  const FiniteLattice m3({"0", "a", "b", "c", "1"},
                         {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
  const FiniteLattice n5({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}});
  const LatticeModel lm3(m3);
  const LatticeModel ln5(n5);
  // a /\ (b \/ c) = a, while (a /\ b) \/ (a /\ c) = 0.
  DistributorFamily<std::size_t> f3{{"l", "r"}, {{"a"}, {"b", "c"}}, {{m3.index("a")}, {m3.index("b"), m3.index("c")}}};
  CHECK_FALSE(check_distributor_iso(lm3, f3));
  // b /\ (a \/ c) = b, while (b /\ a) \/ (b /\ c) = a.
  DistributorFamily<std::size_t> f5{{"l", "r"}, {{"b"}, {"a", "c"}}, {{n5.index("b")}, {n5.index("a"), n5.index("c")}}};
  CHECK_FALSE(check_distributor_iso(ln5, f5));
  const auto d = canonical_distributor(ln5, f5);
  CHECK(n5.name(d.source) == "a");
  CHECK(n5.name(d.target) == "b");
}
