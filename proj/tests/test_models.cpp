#include <catch_amalgamated.hpp>

#include <distcat/models.hpp>
#include <distcat/universal.hpp>

#include "oracles.hpp"

using namespace distcat;

namespace {

FiniteLattice to_lattice(const oracle::Poset& p) {
  const auto [names, leq] = oracle::lattice_spec(p);
  return FiniteLattice(names, leq);
}

}  // namespace

TEST_CASE("lattice enumeration oracle", "[models][oracle]") {
  // Lattices with 1..6 elements up to isomorphism.
  const std::vector<std::size_t> expected{1, 1, 1, 2, 5, 15};
  for (std::size_t n = 1; n <= 6; ++n) CHECK(oracle::all_lattices(n).size() == expected[n - 1]);
  // Distributive lattices with 1..6 elements: 1, 1, 1, 2, 3, 5.
  const std::vector<std::size_t> distributive{1, 1, 1, 2, 3, 5};
  for (std::size_t n = 1; n <= 6; ++n) {
    std::size_t count = 0;
    for (const auto& p : oracle::all_lattices(n)) count += oracle::binary_distributive(p);
    CHECK(count == distributive[n - 1]);
  }
}

TEST_CASE("finite distributivity agrees with the M3/N5 criterion", "[models][oracle]") {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& p : oracle::all_lattices(n)) {
      const LatticeModel model(to_lattice(p));
      const auto verdict = is_completely_distributive_finite(model);
      const bool expected = !oracle::has_m3_or_n5(p);
      CHECK(verdict.distributive == expected);
      CHECK(verdict.distributive == oracle::binary_distributive(p));
      if (!verdict.distributive) {
        REQUIRE(verdict.witness.has_value());
        CHECK_FALSE(check_distributor_iso(model, *verdict.witness));
      }
    }
}

TEST_CASE("lattice construction", "[models]") {
  const FiniteLattice chain({"0", "m", "1"}, {{"0", "m"}, {"m", "1"}});
  CHECK(chain.leq(chain.index("0"), chain.index("1")));
  CHECK(chain.top() == chain.index("1"));
  CHECK(chain.bottom() == chain.index("0"));
  CHECK(chain.meet(chain.index("m"), chain.index("1")) == chain.index("m"));
  CHECK_THROWS_AS(FiniteLattice({"a", "b"}, {}), NotALattice);
  CHECK_THROWS_AS(FiniteLattice({"a", "b"}, {{"a", "b"}, {"b", "a"}}), NotALattice);
  CHECK_THROWS_AS(FiniteLattice({}, {}), NotALattice);
  CHECK_THROWS_AS(FiniteLattice({"a", "a"}, {}), NotALattice);

  const LatticeModel model(chain);
  const std::vector<std::size_t> all{0, 1, 2};
  CHECK(model.product(all).object == chain.bottom());
  CHECK(model.coproduct(all).object == chain.top());
  CHECK(model.product({}).object == chain.top());
  CHECK(model.coproduct({}).object == chain.bottom());
}

TEST_CASE("FinSet model structure", "[models]") {
  const FinSetModel sets(3);
  CHECK(sets.hom_count(2, 3) == 9);
  CHECK(sets.hom(2, 3).size() == 9);
  CHECK(sets.hom(0, 0).size() == 1);
  CHECK(sets.hom(1, 0).empty());
  const std::vector<std::size_t> factors{2, 3};
  const auto prod = sets.product(factors);
  CHECK(prod.object == 6);
  const auto sum = sets.coproduct(factors);
  CHECK(sum.object == 5);

  using C = FinSetModel;
  const std::vector<std::size_t> apexes{0, 1, 2, 3};
  Budget budget(kDefaultBudget);
  const auto limits = all_cones(sets, std::span<const std::size_t>(factors), std::span<const std::size_t>(apexes),
                                ConeDirection::limit, budget);
  CHECK(verify_universal(sets, ConeOf<C>{prod.object, prod.projections, ConeDirection::limit},
                         std::span<const ConeOf<C>>(limits)));
  const auto colimits = all_cones(sets, std::span<const std::size_t>(factors), std::span<const std::size_t>(apexes),
                                  ConeDirection::colimit, budget);
  CHECK(verify_universal(sets, ConeOf<C>{sum.object, sum.injections, ConeDirection::colimit},
                         std::span<const ConeOf<C>>(colimits)));

  const FinMap swap{2, 2, {1, 0}};
  CHECK(sets.inverse(swap) == swap);
  CHECK_FALSE(sets.inverse(FinMap{2, 2, {0, 0}}).has_value());
}

TEST_CASE("Dist as a model", "[models]") {
  const auto base = categories::arrow();
  const auto model = dist_as_model(base, {1, 1});
  // Shapes: empty, (a), (b); objects: none or one of those.
  CHECK(model.objects().size() == 4);
  for (const auto& x : model.objects())
    for (const auto& y : model.objects())
      for (const auto& f : model.hom(x, y)) {
        const auto inv = model.inverse(f);
        if (inv) CHECK(model.compose(*inv, f) == model.identity(x));
      }
}
