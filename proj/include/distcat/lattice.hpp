#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "category.hpp"
#include "error.hpp"

namespace distcat {

/// A finite lattice: named elements, the order relation, and meet/join
/// tables derived from it at construction.
class FiniteLattice {
 public:
  /// Builds the lattice generated by the given order pairs (a <= b). The
  /// reflexive-transitive closure is taken; throws NotALattice if the result
  /// is not antisymmetric or some pair lacks a meet or join.
  FiniteLattice(std::vector<std::string> elements,
                const std::vector<std::pair<std::string, std::string>>& leq_pairs)
      : names_(std::move(elements)) {
    const std::size_t n = names_.size();
    if (n == 0) throw NotALattice("a lattice needs at least one element");
    for (std::size_t k = 0; k < n; ++k)
      if (!index_.emplace(names_[k], k).second)
        throw NotALattice("duplicate element '" + names_[k] + "'");
    leq_.assign(n * n, false);
    for (std::size_t k = 0; k < n; ++k) leq_[k * n + k] = true;
    for (const auto& [a, b] : leq_pairs) leq_[index(a) * n + index(b)] = true;
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t a = 0; a < n; ++a)
        if (leq_[a * n + m])
          for (std::size_t b = 0; b < n; ++b)
            if (leq_[m * n + b]) leq_[a * n + b] = true;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && leq(a, b) && leq(b, a))
          throw NotALattice("order is not antisymmetric on " + names_[a] + ", " + names_[b]);
    meet_.assign(n * n, n);
    join_.assign(n * n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        meet_[a * n + b] = extremal_bound(a, b, /*lower=*/true);
        join_[a * n + b] = extremal_bound(a, b, /*lower=*/false);
      }
    }
    top_ = 0;
    bottom_ = 0;
    for (std::size_t a = 1; a < n; ++a) {
      top_ = join(top_, a);
      bottom_ = meet(bottom_, a);
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t a) const { return names_.at(a); }
  const std::vector<std::string>& names() const { return names_; }

  std::size_t index(const std::string& name) const {
    const auto it = index_.find(name);
    if (it == index_.end()) throw UnknownObject("unknown lattice element '" + name + "'");
    return it->second;
  }

  bool leq(std::size_t a, std::size_t b) const { return leq_[a * size() + b]; }
  std::size_t meet(std::size_t a, std::size_t b) const { return meet_[a * size() + b]; }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }
  std::size_t top() const { return top_; }
  std::size_t bottom() const { return bottom_; }

  /// The strict order as (a, b) pairs with a < b.
  std::vector<std::pair<std::string, std::string>> order_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t a = 0; a < size(); ++a)
      for (std::size_t b = 0; b < size(); ++b)
        if (a != b && leq(a, b)) out.emplace_back(names_[a], names_[b]);
    return out;
  }

 private:
  std::size_t extremal_bound(std::size_t a, std::size_t b, bool lower) const {
    const std::size_t n = size();
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < n; ++c) {
      const bool bound = lower ? (leq(c, a) && leq(c, b)) : (leq(a, c) && leq(b, c));
      if (!bound) continue;
      if (!best || (lower ? leq(*best, c) : leq(c, *best))) best = c;
    }
    if (best) {
      for (std::size_t c = 0; c < n; ++c) {
        const bool bound = lower ? (leq(c, a) && leq(c, b)) : (leq(a, c) && leq(b, c));
        if (bound && !(lower ? leq(c, *best) : leq(*best, c))) best.reset();
        if (!best) break;
      }
    }
    if (!best)
      throw NotALattice(std::string("no ") + (lower ? "meet" : "join") + " for " + names_[a] +
                        ", " + names_[b]);
    return *best;
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<bool> leq_;
  std::vector<std::size_t> meet_;
  std::vector<std::size_t> join_;
  std::size_t top_ = 0;
  std::size_t bottom_ = 0;
};

/// The unique arrow a -> b of a thin category, present iff a <= b.
struct LatticeArrow {
  std::size_t src = 0;
  std::size_t dst = 0;
  bool operator==(const LatticeArrow&) const = default;
  auto operator<=>(const LatticeArrow&) const = default;
};

/// A finite lattice as a thin category: products are meets (the empty
/// product is the top), coproducts are joins (the empty coproduct is the
/// bottom), and every structure morphism is the unique arrow.
class LatticeModel {
 public:
  using Object = std::size_t;
  using Morphism = LatticeArrow;

  explicit LatticeModel(FiniteLattice lattice) : lattice_(std::move(lattice)) {}

  const FiniteLattice& lattice() const { return lattice_; }

  std::vector<Object> objects() const {
    std::vector<Object> out;
    for (std::size_t a = 0; a < lattice_.size(); ++a) out.push_back(a);
    return out;
  }

  std::size_t hom_count(Object a, Object b) const { return lattice_.leq(a, b) ? 1 : 0; }

  std::vector<Morphism> hom(Object a, Object b) const {
    if (!lattice_.leq(a, b)) return {};
    return {LatticeArrow{a, b}};
  }

  Morphism identity(Object a) const { return {a, a}; }

  Morphism compose(const Morphism& g, const Morphism& f) const {
    if (f.dst != g.src) throw TypeMismatch("lattice composition: endpoints disagree");
    return {f.src, g.dst};
  }

  Object source(const Morphism& m) const { return m.src; }
  Object target(const Morphism& m) const { return m.dst; }

  ProductCone<Object, Morphism> product(std::span<const Object> xs) const {
    Object m = lattice_.top();
    for (Object x : xs) m = lattice_.meet(m, x);
    ProductCone<Object, Morphism> cone{m, {}};
    for (Object x : xs) cone.projections.push_back({m, x});
    return cone;
  }

  CoproductCone<Object, Morphism> coproduct(std::span<const Object> xs) const {
    Object j = lattice_.bottom();
    for (Object x : xs) j = lattice_.join(j, x);
    CoproductCone<Object, Morphism> cone{j, {}};
    for (Object x : xs) cone.injections.push_back({x, j});
    return cone;
  }

  Morphism tuple(std::span<const Object> factors, Object apex, std::span<const Morphism> legs) const {
    if (legs.size() != factors.size()) throw TypeMismatch("tuple: leg count mismatch");
    for (std::size_t k = 0; k < legs.size(); ++k)
      if (legs[k].src != apex || legs[k].dst != factors[k])
        throw TypeMismatch("tuple: leg has the wrong type");
    return {apex, product(factors).object};
  }

  Morphism cotuple(std::span<const Object> factors, Object apex, std::span<const Morphism> legs) const {
    if (legs.size() != factors.size()) throw TypeMismatch("cotuple: leg count mismatch");
    for (std::size_t k = 0; k < legs.size(); ++k)
      if (legs[k].dst != apex || legs[k].src != factors[k])
        throw TypeMismatch("cotuple: leg has the wrong type");
    return {coproduct(factors).object, apex};
  }

  std::optional<Morphism> inverse(const Morphism& m) const {
    if (!lattice_.leq(m.dst, m.src)) return std::nullopt;
    return LatticeArrow{m.dst, m.src};
  }

 private:
  FiniteLattice lattice_;
};

inline LatticeModel lattice_model(FiniteLattice lattice) { return LatticeModel(std::move(lattice)); }

inline std::string describe(const LatticeModel& m, std::size_t a) { return m.lattice().name(a); }
inline std::string describe(const LatticeModel& m, const LatticeArrow& f) {
  return m.lattice().name(f.src) + "<=" + m.lattice().name(f.dst);
}

}  // namespace distcat
