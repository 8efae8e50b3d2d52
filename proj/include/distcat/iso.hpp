#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dist.hpp"
#include "error.hpp"

namespace distcat {

/// A two-sided inverse of base morphism c found by searching hom(dst, src).
template <FiniteCategory Base>
std::optional<typename Base::Morphism> base_inverse(const Base& base,
                                                    const typename Base::Morphism& c) {
  const auto a = base.source(c);
  const auto b = base.target(c);
  const auto id_a = base.identity(a);
  const auto id_b = base.identity(b);
  for (const auto& d : base.hom(b, a))
    if (base.compose(d, c) == id_a && base.compose(c, d) == id_b) return d;
  return std::nullopt;
}

/// Inverse of a Dist morphism, if it has one. Isomorphisms are exactly the
/// morphisms that are bijective on shapes, bijective on positions within
/// each shape, and invertible on every base component; the candidate built
/// from that description is then checked against both identities.
template <FiniteCategory Base>
std::optional<typename Dist<Base>::Morphism> dist_inverse(const Dist<Base>& dist,
                                                          const typename Dist<Base>::Morphism& m) {
  using Mor = typename Base::Morphism;
  const auto& x = m.source();
  const auto& y = m.target();
  if (x.shape_count() != y.shape_count()) return std::nullopt;
  std::vector<std::optional<ShapeComponent<Mor>>> back(y.shape_count());
  for (std::size_t j = 0; j < m.table.size(); ++j) {
    const auto& sc = m.table[j];
    if (back[sc.target]) return std::nullopt;
    if (x.position_count(j) != y.position_count(sc.target)) return std::nullopt;
    std::vector<std::optional<PositionComponent<Mor>>> inner(x.position_count(j));
    for (std::size_t ip = 0; ip < sc.positions.size(); ++ip) {
      const auto& pc = sc.positions[ip];
      if (inner[pc.source]) return std::nullopt;
      const auto inv = base_inverse(dist.base(), pc.morphism);
      if (!inv) return std::nullopt;
      inner[pc.source] = PositionComponent<Mor>{ip, *inv};
    }
    ShapeComponent<Mor> rev{j, {}};
    for (auto& pc : inner) rev.positions.push_back(*pc);
    back[sc.target] = std::move(rev);
  }
  typename Dist<Base>::Morphism inverse{m.dst, m.src, {}};
  for (auto& sc : back) inverse.table.push_back(std::move(*sc));
  if (!(dist.compose(inverse, m) == dist.identity(m.src))) return std::nullopt;
  if (!(dist.compose(m, inverse) == dist.identity(m.dst))) return std::nullopt;
  return inverse;
}

namespace detail {

template <FiniteCategory Base>
class IsoSearch {
 public:
  using Mor = typename Base::Morphism;
  using Morphism = typename Dist<Base>::Morphism;

  IsoSearch(const Dist<Base>& dist, const typename Dist<Base>::Object& a,
            const typename Dist<Base>::Object& b, Budget& budget)
      : dist_(dist), a_(Dist<Base>::share(a)), b_(Dist<Base>::share(b)), budget_(budget) {}

  std::optional<std::pair<Morphism, Morphism>> run() {
    if (a_->shape_count() != b_->shape_count()) return std::nullopt;
    used_.assign(b_->shape_count(), false);
    table_.clear();
    if (shape(0)) return result_;
    return std::nullopt;
  }

 private:
  // Shapes are assigned in order j = 0, 1, ... and each shape's options are
  // tried in hom-enumeration order, so the first isomorphism found is the
  // first one in the enumeration of hom(A, B).
  bool shape(std::size_t j) {
    if (j == a_->shape_count()) {
      Morphism m{a_, b_, table_};
      auto inv = dist_inverse(dist_, m);
      if (!inv) return false;
      result_ = {std::move(m), std::move(*inv)};
      return true;
    }
    for (std::size_t jp = 0; jp < b_->shape_count(); ++jp) {
      if (used_[jp] || a_->position_count(j) != b_->position_count(jp)) continue;
      used_[jp] = true;
      ShapeComponent<Mor> sc{jp, {}};
      std::vector<bool> taken(a_->position_count(j), false);
      if (positions(j, jp, 0, sc, taken)) return true;
      used_[jp] = false;
    }
    return false;
  }

  bool positions(std::size_t j, std::size_t jp, std::size_t ip, ShapeComponent<Mor>& sc,
                 std::vector<bool>& taken) {
    budget_.charge(1, "isomorphism search");
    if (ip == b_->position_count(jp)) {
      table_.push_back(sc);
      if (shape(j + 1)) return true;
      table_.pop_back();
      return false;
    }
    const auto& target = b_->entries[jp][ip];
    for (std::size_t i = 0; i < a_->position_count(j); ++i) {
      if (taken[i]) continue;
      for (const auto& c : dist_.base().hom(a_->entries[j][i], target)) {
        if (!base_inverse(dist_.base(), c)) continue;
        taken[i] = true;
        sc.positions.push_back({i, c});
        if (positions(j, jp, ip + 1, sc, taken)) return true;
        sc.positions.pop_back();
        taken[i] = false;
      }
    }
    return false;
  }

  const Dist<Base>& dist_;
  std::shared_ptr<const typename Dist<Base>::Object> a_;
  std::shared_ptr<const typename Dist<Base>::Object> b_;
  Budget& budget_;
  std::vector<bool> used_;
  std::vector<ShapeComponent<Mor>> table_;
  std::pair<Morphism, Morphism> result_;
};

}  // namespace detail

/// A mutually inverse pair A -> B, B -> A, the first in hom(A, B)
/// enumeration order, or nullopt. The budget caps search nodes.
template <FiniteCategory Base>
std::optional<std::pair<typename Dist<Base>::Morphism, typename Dist<Base>::Morphism>> iso_check(
    const Dist<Base>& dist, const typename Dist<Base>::Object& a,
    const typename Dist<Base>::Object& b, std::size_t budget = kDefaultBudget) {
  Budget b_(budget);
  return detail::IsoSearch<Base>(dist, a, b, b_).run();
}

}  // namespace distcat
