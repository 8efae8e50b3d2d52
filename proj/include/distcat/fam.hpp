#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "category.hpp"
#include "error.hpp"
#include "labels.hpp"

namespace distcat {

/// A finite family <C_i>_{i in I} of base objects. `index` lists I in
/// declaration order and `entries[k]` is the object at `index[k]`.
template <class Obj>
struct FamObject {
  std::vector<std::string> index;
  std::vector<Obj> entries;

  std::size_t size() const { return index.size(); }
  bool operator==(const FamObject&) const = default;
};

/// One component of a Fam morphism: the target index j (as a position in
/// the target family) and the base morphism C_i -> C'_j.
template <class Mor>
struct FamComponent {
  std::size_t target = 0;
  Mor morphism;
  bool operator==(const FamComponent&) const = default;
};

/// An element of Pi_{i in I} Sigma_{j in J} C(C_i, C'_j), stored positionally:
/// table[k] is the component at src.index[k].
template <class Obj, class Mor>
struct FamMorphism {
  FamObject<Obj> src;
  FamObject<Obj> dst;
  std::vector<FamComponent<Mor>> table;
  bool operator==(const FamMorphism&) const = default;
};

/// Chosen products supplied by a base category, used by the Fam product
/// construction. Both hooks must be set.
template <class Obj, class Mor>
struct ProductHooks {
  std::function<ProductCone<Obj, Mor>(std::span<const Obj>)> product;
  std::function<Mor(std::span<const Obj>, const Obj&, std::span<const Mor>)> tuple;

  explicit operator bool() const { return product && tuple; }
};

template <ModelCategory M>
ProductHooks<typename M::Object, typename M::Morphism> product_hooks(const M& model) {
  return {[&model](std::span<const typename M::Object> objs) { return model.product(objs); },
          [&model](std::span<const typename M::Object> objs, const typename M::Object& apex,
                   std::span<const typename M::Morphism> legs) {
            return model.tuple(objs, apex, legs);
          }};
}

/// The free coproduct completion of a finite base category, restricted to
/// finite index sets.
template <FiniteCategory Base>
class Fam {
 public:
  using BaseObject = typename Base::Object;
  using BaseMorphism = typename Base::Morphism;
  using Object = FamObject<BaseObject>;
  using Morphism = FamMorphism<BaseObject, BaseMorphism>;

  explicit Fam(const Base& base) : base_(&base) {}

  const Base& base() const { return *base_; }

  Morphism identity(const Object& x) const {
    Morphism m{x, x, {}};
    m.table.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      m.table.push_back({i, base_->identity(x.entries[i])});
    return m;
  }

  /// f . g: i |-> let <i', g'> = g(i) in let <i'', f'> = f(i') in <i'', f' . g'>.
  Morphism compose(const Morphism& f, const Morphism& g) const {
    if (!(g.dst == f.src)) throw TypeMismatch("Fam composition: target/source disagree");
    Morphism out{g.src, f.dst, {}};
    out.table.reserve(g.table.size());
    for (const auto& [mid, g1] : g.table) {
      const auto& [last, f1] = f.table[mid];
      out.table.push_back({last, base_->compose(f1, g1)});
    }
    return out;
  }

  Object source(const Morphism& m) const { return m.src; }
  Object target(const Morphism& m) const { return m.dst; }

  /// |hom| = Pi_i Sigma_j |C(C_i, C'_j)|, saturating.
  std::size_t hom_count(const Object& x, const Object& y) const {
    std::size_t total = 1;
    for (const auto& c : x.entries) {
      std::size_t sum = 0;
      for (const auto& d : y.entries) sum = detail::sat_add(sum, base_->hom_count(c, d));
      total = detail::sat_mul(total, sum);
    }
    return total;
  }

  /// Every morphism x -> y, lexicographic in (component at index 0, ...),
  /// each component ordered by target position then base hom order.
  std::vector<Morphism> hom(const Object& x, const Object& y) const {
    std::vector<std::vector<FamComponent<BaseMorphism>>> options(x.size());
    std::vector<std::size_t> radices;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < y.size(); ++j)
        for (const auto& c : base_->hom(x.entries[i], y.entries[j])) options[i].push_back({j, c});
      radices.push_back(options[i].size());
    }
    std::vector<Morphism> out;
    for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> d) {
      Morphism m{x, y, {}};
      m.table.reserve(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) m.table.push_back(options[i][d[i]]);
      out.push_back(std::move(m));
    });
    return out;
  }

  /// The pseudomonad unit: the singleton family <c>_{* in 1}.
  Object unit(const BaseObject& c) const { return Object{{"*"}, {c}}; }

  /// The unit on morphisms: f |-> (_ |-> <*, f>).
  Morphism unit(const BaseMorphism& f) const {
    return Morphism{unit(base_->source(f)), unit(base_->target(f)), {{0, f}}};
  }

  /// Disjoint union of a family of families; index labels are "(j,i)".
  Object flatten(const FamObject<Object>& xs) const {
    Object out;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const auto& inner = xs.entries[j];
      for (std::size_t i = 0; i < inner.size(); ++i) {
        out.index.push_back(pair_label(xs.index[j], inner.index[i]));
        out.entries.push_back(inner.entries[i]);
      }
    }
    return out;
  }

  /// The multiplication on morphisms:
  /// <j,i> |-> let <j', g> = f(j) in let <i', h> = g(i) in <<j', i'>, h>.
  Morphism flatten(const FamMorphism<Object, Morphism>& f) const {
    Morphism out{flatten(f.src), flatten(f.dst), {}};
    std::vector<std::size_t> offset;
    std::size_t acc = 0;
    for (const auto& family : f.dst.entries) {
      offset.push_back(acc);
      acc += family.size();
    }
    for (const auto& [jt, g] : f.table)
      for (const auto& [it, h] : g.table) out.table.push_back({offset[jt] + it, h});
    return out;
  }

  /// Disjoint union of index sets, labels "(k,i)"; injections reindex with
  /// identity components.
  std::pair<Object, std::vector<Morphism>> coproduct(std::span<const Object> xs) const {
    Object sum;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      for (std::size_t i = 0; i < xs[k].size(); ++i) {
        sum.index.push_back(pair_label(std::to_string(k), xs[k].index[i]));
        sum.entries.push_back(xs[k].entries[i]);
      }
    }
    std::vector<Morphism> injections;
    std::size_t offset = 0;
    for (const auto& x : xs) {
      Morphism m{x, sum, {}};
      for (std::size_t i = 0; i < x.size(); ++i)
        m.table.push_back({offset + i, base_->identity(x.entries[i])});
      offset += x.size();
      injections.push_back(std::move(m));
    }
    return {std::move(sum), std::move(injections)};
  }

  /// Products from chosen base products: index = choice functions
  /// f in Pi_k J_k (lexicographic), entry at f = product of (D_{k f(k)})_k.
  std::pair<Object, std::vector<Morphism>> product(
      std::span<const Object> xs, const ProductHooks<BaseObject, BaseMorphism>& hooks) const {
    if (!hooks) throw MissingStructure("Fam product needs chosen products in the base");
    std::vector<std::size_t> radices;
    for (const auto& x : xs) radices.push_back(x.size());
    Object prod;
    std::vector<std::vector<std::size_t>> choices;
    std::vector<ProductCone<BaseObject, BaseMorphism>> cones;
    for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> f) {
      std::vector<std::string> picks;
      std::vector<BaseObject> factors;
      for (std::size_t k = 0; k < f.size(); ++k) {
        picks.push_back(xs[k].index[f[k]]);
        factors.push_back(xs[k].entries[f[k]]);
      }
      prod.index.push_back(choice_label(picks));
      auto cone = hooks.product(std::span<const BaseObject>(factors));
      prod.entries.push_back(cone.object);
      cones.push_back(std::move(cone));
      choices.emplace_back(f.begin(), f.end());
    });
    std::vector<Morphism> projections;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      Morphism p{prod, xs[k], {}};
      for (std::size_t f = 0; f < choices.size(); ++f)
        p.table.push_back({choices[f][k], cones[f].projections[k]});
      projections.push_back(std::move(p));
    }
    return {std::move(prod), std::move(projections)};
  }

 private:
  const Base* base_;
};

/// Structural equality after forgetting index labels: same entries in the
/// same order.
template <class Obj>
bool same_up_to_relabeling(const FamObject<Obj>& a, const FamObject<Obj>& b) {
  return a.entries == b.entries;
}

/// The coproduct functor Fam(M) -> M on objects: the model's chosen
/// coproduct of the entries. A singleton family maps to its entry.
template <ModelCategory M>
typename M::Object coproduct_functor(const M& model, const FamObject<typename M::Object>& x) {
  if (x.size() == 1) return x.entries.front();
  return model.coproduct(std::span<const typename M::Object>(x.entries)).object;
}

/// The coproduct functor on morphisms: cotuple of (injection . component).
template <ModelCategory M>
typename M::Morphism coproduct_functor(
    const M& model, const FamMorphism<typename M::Object, typename M::Morphism>& f) {
  using Obj = typename M::Object;
  using Mor = typename M::Morphism;
  const auto src = coproduct_functor(model, f.src);
  const auto dst = coproduct_functor(model, f.dst);
  std::vector<Mor> injections;
  if (f.dst.size() == 1) {
    injections.push_back(model.identity(dst));
  } else {
    injections = model.coproduct(std::span<const Obj>(f.dst.entries)).injections;
  }
  std::vector<Mor> legs;
  for (const auto& [j, c] : f.table) legs.push_back(model.compose(injections[j], c));
  if (f.src.size() == 1) return legs.front();
  return model.cotuple(std::span<const Obj>(f.src.entries), dst, std::span<const Mor>(legs));
}

}  // namespace distcat
