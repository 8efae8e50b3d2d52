#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <span>
#include <vector>

#include "category.hpp"
#include "error.hpp"

namespace distcat {

enum class ConeDirection { limit, colimit };

/// A cone over a discrete diagram: legs point out of the apex (limit) or
/// into it (colimit). Leg k corresponds to diagram position k.
template <class Obj, class Mor>
struct Cone {
  Obj apex;
  std::vector<Mor> legs;
  ConeDirection direction = ConeDirection::limit;
};

template <FiniteCategory C>
using ConeOf = Cone<typename C::Object, typename C::Morphism>;

namespace detail {

template <FiniteCategory C>
void check_cone(const C& cat, const ConeOf<C>& cone) {
  for (const auto& leg : cone.legs) {
    const auto end = cone.direction == ConeDirection::limit ? cat.source(leg) : cat.target(leg);
    if (!(end == cone.apex)) throw TypeMismatch("cone leg does not touch the apex");
  }
}

template <FiniteCategory C>
void check_same_diagram(const C& cat, const ConeOf<C>& a, const ConeOf<C>& b) {
  if (a.direction != b.direction || a.legs.size() != b.legs.size())
    throw TypeMismatch("cones are over different diagrams");
  for (std::size_t k = 0; k < a.legs.size(); ++k) {
    const bool same = a.direction == ConeDirection::limit
                          ? cat.target(a.legs[k]) == cat.target(b.legs[k])
                          : cat.source(a.legs[k]) == cat.source(b.legs[k]);
    if (!same) throw TypeMismatch("cones are over different diagrams");
  }
}

}  // namespace detail

/// Number of morphisms m between the candidate apex and the universal apex
/// that commute with every leg, found by exhausting the hom-set.
template <FiniteCategory C>
std::size_t count_mediators(const C& cat, const ConeOf<C>& universal, const ConeOf<C>& candidate,
                            Budget& budget) {
  detail::check_cone(cat, universal);
  detail::check_cone(cat, candidate);
  detail::check_same_diagram(cat, universal, candidate);
  const bool limit = universal.direction == ConeDirection::limit;
  const auto& from = limit ? candidate.apex : universal.apex;
  const auto& to = limit ? universal.apex : candidate.apex;
  budget.charge(cat.hom_count(from, to), "mediator search");
  std::size_t count = 0;
  for (const auto& m : cat.hom(from, to)) {
    bool commutes = true;
    for (std::size_t k = 0; k < universal.legs.size() && commutes; ++k) {
      const auto composite = limit ? cat.compose(universal.legs[k], m)
                                   : cat.compose(m, universal.legs[k]);
      commutes = composite == candidate.legs[k];
    }
    if (commutes) ++count;
  }
  return count;
}

/// True iff every candidate cone factors through `cone` by exactly one
/// mediating morphism. Hom-sets are exhausted; the budget caps the total
/// number of mediator candidates examined.
template <FiniteCategory C>
bool verify_universal(const C& cat, const ConeOf<C>& cone, std::span<const ConeOf<C>> candidates,
                      std::size_t budget = kDefaultBudget) {
  Budget b(budget);
  for (const auto& candidate : candidates)
    if (count_mediators(cat, cone, candidate, b) != 1) return false;
  return true;
}

/// Every cone over the diagram with apex drawn from `apexes`: all leg
/// combinations, enumerated lexicographically.
template <FiniteCategory C>
std::vector<ConeOf<C>> all_cones(const C& cat, std::span<const typename C::Object> diagram,
                                 std::span<const typename C::Object> apexes,
                                 ConeDirection direction, Budget& budget) {
  std::vector<ConeOf<C>> out;
  for (const auto& apex : apexes) {
    std::vector<std::vector<typename C::Morphism>> options;
    std::size_t total = 1;
    for (const auto& d : diagram) {
      const std::size_t n = direction == ConeDirection::limit ? cat.hom_count(apex, d)
                                                              : cat.hom_count(d, apex);
      total = detail::sat_mul(total, n);
    }
    budget.charge(total, "cone enumeration");
    for (const auto& d : diagram)
      options.push_back(direction == ConeDirection::limit ? cat.hom(apex, d) : cat.hom(d, apex));
    std::vector<std::size_t> radices;
    for (const auto& o : options) radices.push_back(o.size());
    if (total == 0) continue;
    std::vector<std::size_t> digits(radices.size(), 0);
    while (true) {
      ConeOf<C> cone{apex, {}, direction};
      for (std::size_t k = 0; k < digits.size(); ++k) cone.legs.push_back(options[k][digits[k]]);
      out.push_back(std::move(cone));
      std::size_t k = digits.size();
      bool done = true;
      while (k > 0) {
        --k;
        if (++digits[k] < radices[k]) {
          done = false;
          break;
        }
        digits[k] = 0;
      }
      if (done) break;
    }
  }
  return out;
}

/// Outcome of checking a universal cone against every cone at one apex.
template <class Obj, class Mor>
struct ApexCheck {
  std::size_t cones = 0;                        // candidate cones at the apex
  std::optional<Cone<Obj, Mor>> failing;        // a cone without exactly one mediator
};

/// Checks every cone over the diagram with the given apex at once: the map
/// sending a morphism m between the apexes to the cone (leg_k . m) (limit)
/// or (m . leg_k) (colimit) must be a bijection onto all cones. This is the
/// universal property at that apex, decided with one pass over the hom-set
/// instead of one mediator search per candidate. `key` must map morphisms
/// of each hom-set injectively to strings.
template <FiniteCategory C, class Key>
ApexCheck<typename C::Object, typename C::Morphism> verify_universal_at(
    const C& cat, const ConeOf<C>& universal, std::span<const typename C::Object> diagram,
    const typename C::Object& apex, Key&& key, Budget& budget) {
  using Mor = typename C::Morphism;
  detail::check_cone(cat, universal);
  const bool limit = universal.direction == ConeDirection::limit;
  if (universal.legs.size() != diagram.size()) throw TypeMismatch("cone is over a different diagram");
  ApexCheck<typename C::Object, Mor> out;
  std::vector<std::size_t> leg_counts;
  std::size_t expected = 1;
  for (const auto& d : diagram) {
    leg_counts.push_back(limit ? cat.hom_count(apex, d) : cat.hom_count(d, apex));
    expected = detail::sat_mul(expected, leg_counts.back());
  }
  const auto& from = limit ? apex : universal.apex;
  const auto& to = limit ? universal.apex : apex;
  budget.charge(detail::sat_add(cat.hom_count(from, to), expected), "mediator search");
  out.cones = expected;

  auto legs_of = [&](const Mor& m) {
    std::vector<Mor> legs;
    for (const auto& leg : universal.legs) legs.push_back(limit ? cat.compose(leg, m) : cat.compose(m, leg));
    return legs;
  };
  auto cone_key = [&](const std::vector<Mor>& legs) {
    std::string k;
    for (const auto& leg : legs) {
      const std::string part = key(leg);
      k += std::to_string(part.size());
      k += ':';
      k += part;
    }
    return k;
  };
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& m : cat.hom(from, to)) {
    auto legs = legs_of(m);
    if (++seen[cone_key(legs)] == 2) {
      out.failing = Cone<typename C::Object, Mor>{apex, std::move(legs), universal.direction};
      return out;
    }
  }
  if (seen.size() == expected) return out;
  // Some cone has no mediator: find the first one in enumeration order.
  std::vector<std::vector<Mor>> options;
  for (const auto& d : diagram) options.push_back(limit ? cat.hom(apex, d) : cat.hom(d, apex));
  std::vector<std::size_t> digits(options.size(), 0);
  while (true) {
    std::vector<Mor> legs;
    for (std::size_t k = 0; k < digits.size(); ++k) legs.push_back(options[k][digits[k]]);
    if (!seen.count(cone_key(legs))) {
      out.failing = Cone<typename C::Object, Mor>{apex, std::move(legs), universal.direction};
      return out;
    }
    std::size_t k = digits.size();
    while (k > 0 && ++digits[k - 1] == options[k - 1].size()) digits[--k] = 0;
    if (k == 0) break;
  }
  throw Error("universal check: cone count disagrees with enumeration");
}

}  // namespace distcat
