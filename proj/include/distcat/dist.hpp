#pragma once

#include <concepts>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "category.hpp"
#include "error.hpp"
#include "labels.hpp"

namespace distcat {

/// Base categories whose objects and morphisms have printable names.
template <class C>
concept DescribedCategory = FiniteCategory<C> && requires(const C& c, const typename C::Object& a,
                                                          const typename C::Morphism& m) {
  { describe(c, a) } -> std::convertible_to<std::string>;
  { describe(c, m) } -> std::convertible_to<std::string>;
};

/// A family of families <[C_ji]_{i in I_j}>_{j in J}: outer index J
/// (shapes), inner index I_j (positions) and the base object at each (j, i).
template <class Obj>
struct DistObject {
  std::vector<std::string> outer;
  std::vector<std::vector<std::string>> inner;
  std::vector<std::vector<Obj>> entries;

  std::size_t shape_count() const { return outer.size(); }
  std::size_t position_count(std::size_t j) const { return inner[j].size(); }

  void add_shape(std::string label, std::vector<std::string> positions, std::vector<Obj> objs) {
    outer.push_back(std::move(label));
    inner.push_back(std::move(positions));
    entries.push_back(std::move(objs));
  }

  bool operator==(const DistObject&) const = default;
};

template <class Obj>
DistObject<Obj> initial_object() {
  return {};
}

/// One shape with no positions: the empty product.
template <class Obj>
DistObject<Obj> terminal_object() {
  DistObject<Obj> t;
  t.add_shape(choice_label({}), {}, {});
  return t;
}

/// The image of a base object: one shape with one position.
template <class Obj>
DistObject<Obj> generator_object(const Obj& c) {
  DistObject<Obj> x;
  x.add_shape("*", {"*"}, {c});
  return x;
}

/// Shape `j` of x as a one-shape object.
template <class Obj>
DistObject<Obj> shape_object(const DistObject<Obj>& x, std::size_t j) {
  DistObject<Obj> s;
  s.add_shape(x.outer[j], x.inner[j], x.entries[j]);
  return s;
}

/// Inner component of a Dist morphism: for a target position i', the source
/// position i and the base morphism C_ji -> C'_j'i'.
template <class Mor>
struct PositionComponent {
  std::size_t source = 0;
  Mor morphism;
  bool operator==(const PositionComponent&) const = default;
  auto operator<=>(const PositionComponent&) const = default;
};

/// Outer component for a source shape j: the target shape j' and the
/// (contravariant) inner table keyed by the positions of j'.
template <class Mor>
struct ShapeComponent {
  std::size_t target = 0;
  std::vector<PositionComponent<Mor>> positions;
  bool operator==(const ShapeComponent&) const = default;
};

/// An element of Pi_j Sigma_j' Pi_i' Sigma_i C(C_ji, C'_j'i'), stored
/// positionally. Source and target objects are shared immutable values.
template <class Obj, class Mor>
struct DistMorphism {
  std::shared_ptr<const DistObject<Obj>> src;
  std::shared_ptr<const DistObject<Obj>> dst;
  std::vector<ShapeComponent<Mor>> table;

  const DistObject<Obj>& source() const { return *src; }
  const DistObject<Obj>& target() const { return *dst; }

  bool operator==(const DistMorphism& o) const {
    return table == o.table && (src == o.src || *src == *o.src) && (dst == o.dst || *dst == *o.dst);
  }
};

/// The free doubly-infinitary distributive category Dist(C) over a finite
/// base, with finite index sets. Hom enumeration refuses hom-sets larger
/// than the configured budget.
template <FiniteCategory Base>
class Dist {
 public:
  using BaseObject = typename Base::Object;
  using BaseMorphism = typename Base::Morphism;
  using Object = DistObject<BaseObject>;
  using Morphism = DistMorphism<BaseObject, BaseMorphism>;
  using ObjectPtr = std::shared_ptr<const Object>;

  explicit Dist(const Base& base, std::size_t budget = kDefaultBudget)
      : base_(&base), budget_(budget) {}

  const Base& base() const { return *base_; }
  std::size_t budget() const { return budget_; }

  static ObjectPtr share(Object x) { return std::make_shared<const Object>(std::move(x)); }

  /// Throws MalformedInput unless the inner and entry tables are total.
  static void check_object(const Object& x) {
    if (x.inner.size() != x.outer.size() || x.entries.size() != x.outer.size())
      throw MalformedInput("Dist object: inner/entries not total on the outer index");
    for (std::size_t j = 0; j < x.outer.size(); ++j)
      if (x.entries[j].size() != x.inner[j].size())
        throw MalformedInput("Dist object: entries not total on inner index of " + x.outer[j]);
  }

  /// Throws TypeMismatch unless every component is well typed.
  void check_morphism(const Morphism& m) const {
    const auto& x = m.source();
    const auto& y = m.target();
    if (m.table.size() != x.shape_count()) throw TypeMismatch("outer table not total");
    for (std::size_t j = 0; j < m.table.size(); ++j) {
      const auto& sc = m.table[j];
      if (sc.target >= y.shape_count()) throw TypeMismatch("target shape out of range");
      if (sc.positions.size() != y.position_count(sc.target))
        throw TypeMismatch("inner table not total");
      for (std::size_t ip = 0; ip < sc.positions.size(); ++ip) {
        const auto& pc = sc.positions[ip];
        if (pc.source >= x.position_count(j)) throw TypeMismatch("source position out of range");
        if (!(base_->source(pc.morphism) == x.entries[j][pc.source]) ||
            !(base_->target(pc.morphism) == y.entries[sc.target][ip]))
          throw TypeMismatch("base component has the wrong type");
      }
    }
  }

  Morphism identity(const Object& x) const { return identity(share(x)); }

  /// j |-> <j, i |-> <i, id>>.
  Morphism identity(const ObjectPtr& x) const {
    Morphism m{x, x, {}};
    m.table.reserve(x->shape_count());
    for (std::size_t j = 0; j < x->shape_count(); ++j) {
      ShapeComponent<BaseMorphism> sc{j, {}};
      sc.positions.reserve(x->position_count(j));
      for (std::size_t i = 0; i < x->position_count(j); ++i)
        sc.positions.push_back({i, base_->identity(x->entries[j][i])});
      m.table.push_back(std::move(sc));
    }
    return m;
  }

  /// h2 . h1:
  ///   j |-> let <j', f> = h1(j) in let <j'', f'> = h2(j') in
  ///         <j'', i'' |-> let <i', c'> = f'(i'') in let <i, c> = f(i') in <i, c' . c>>.
  Morphism compose(const Morphism& h2, const Morphism& h1) const {
    if (!(h1.dst == h2.src || *h1.dst == *h2.src))
      throw TypeMismatch("Dist composition: target/source disagree");
    Morphism out{h1.src, h2.dst, {}};
    out.table.reserve(h1.table.size());
    for (const auto& f : h1.table) {
      const auto& f2 = h2.table[f.target];
      ShapeComponent<BaseMorphism> sc{f2.target, {}};
      sc.positions.reserve(f2.positions.size());
      for (const auto& [mid, c2] : f2.positions) {
        const auto& [first, c1] = f.positions[mid];
        sc.positions.push_back({first, base_->compose(c2, c1)});
      }
      out.table.push_back(std::move(sc));
    }
    return out;
  }

  Object source(const Morphism& m) const { return *m.src; }
  Object target(const Morphism& m) const { return *m.dst; }

  /// Pi_j Sigma_j' Pi_i' Sigma_i |C(C_ji, C'_j'i')|, saturating.
  std::size_t hom_count(const Object& x, const Object& y) const {
    std::size_t total = 1;
    for (std::size_t j = 0; j < x.shape_count(); ++j) {
      std::size_t sum = 0;
      for (std::size_t jp = 0; jp < y.shape_count(); ++jp) {
        std::size_t prod = 1;
        for (const auto& cp : y.entries[jp]) {
          std::size_t s = 0;
          for (const auto& c : x.entries[j]) s = detail::sat_add(s, base_->hom_count(c, cp));
          prod = detail::sat_mul(prod, s);
        }
        sum = detail::sat_add(sum, prod);
      }
      total = detail::sat_mul(total, sum);
    }
    return total;
  }

  /// Options for the outer component at source shape j, in enumeration
  /// order: target shape ascending, then inner tables lexicographic in i'
  /// with each slot ordered by source position then base hom order.
  std::vector<ShapeComponent<BaseMorphism>> shape_options(const Object& x, std::size_t j,
                                                          const Object& y) const {
    std::vector<ShapeComponent<BaseMorphism>> out;
    for (std::size_t jp = 0; jp < y.shape_count(); ++jp) {
      std::vector<std::vector<PositionComponent<BaseMorphism>>> slots(y.position_count(jp));
      std::vector<std::size_t> radices;
      for (std::size_t ip = 0; ip < y.position_count(jp); ++ip) {
        for (std::size_t i = 0; i < x.position_count(j); ++i)
          for (const auto& c : base_->hom(x.entries[j][i], y.entries[jp][ip]))
            slots[ip].push_back({i, c});
        radices.push_back(slots[ip].size());
      }
      for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> d) {
        ShapeComponent<BaseMorphism> sc{jp, {}};
        sc.positions.reserve(d.size());
        for (std::size_t ip = 0; ip < d.size(); ++ip) sc.positions.push_back(slots[ip][d[ip]]);
        out.push_back(std::move(sc));
      });
    }
    return out;
  }

  std::vector<Morphism> hom(const Object& x, const Object& y) const {
    return hom(share(x), share(y));
  }

  /// Every morphism x -> y, lexicographic with shape 0 most significant.
  std::vector<Morphism> hom(const ObjectPtr& x, const ObjectPtr& y) const {
    const std::size_t n = hom_count(*x, *y);
    Budget(budget_).require(n, "Dist hom enumeration");
    std::vector<std::vector<ShapeComponent<BaseMorphism>>> options;
    std::vector<std::size_t> radices;
    for (std::size_t j = 0; j < x->shape_count(); ++j) {
      options.push_back(shape_options(*x, j, *y));
      radices.push_back(options.back().size());
    }
    std::vector<Morphism> out;
    out.reserve(n);
    for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> d) {
      Morphism m{x, y, {}};
      m.table.reserve(d.size());
      for (std::size_t j = 0; j < d.size(); ++j) m.table.push_back(options[j][d[j]]);
      out.push_back(std::move(m));
    });
    return out;
  }

  /// Disjoint union of the outer families, shape labels "(k,j)"; injections
  /// reindex shapes with identity inner tables. The unary coproduct is the
  /// object itself with the identity injection.
  CoproductCone<Object, Morphism> coproduct(std::span<const Object> xs) const {
    if (xs.size() == 1) return {xs[0], {identity(xs[0])}};
    auto sum = std::make_shared<Object>();
    for (std::size_t k = 0; k < xs.size(); ++k)
      for (std::size_t j = 0; j < xs[k].shape_count(); ++j)
        sum->add_shape(pair_label(std::to_string(k), xs[k].outer[j]), xs[k].inner[j],
                       xs[k].entries[j]);
    ObjectPtr shared = sum;
    CoproductCone<Object, Morphism> cone{*shared, {}};
    std::size_t offset = 0;
    for (const auto& x : xs) {
      auto inj = identity(x);
      inj.dst = shared;
      for (auto& sc : inj.table) sc.target += offset;
      offset += x.shape_count();
      cone.injections.push_back(std::move(inj));
    }
    return cone;
  }

  /// Outer index = choice functions f in Pi_k J_k (lexicographic, labels
  /// "[j_0,...]"); inner index at f = Sigma_k I_{k f(k)} with labels "(k,i)".
  Object product_object(std::span<const Object> xs) const {
    std::vector<std::size_t> radices;
    for (const auto& x : xs) radices.push_back(x.shape_count());
    Object prod;
    for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> f) {
      std::vector<std::string> picks;
      std::vector<std::string> positions;
      std::vector<BaseObject> objs;
      for (std::size_t k = 0; k < f.size(); ++k) {
        const auto& x = xs[k];
        picks.push_back(x.outer[f[k]]);
        for (std::size_t i = 0; i < x.position_count(f[k]); ++i) {
          positions.push_back(pair_label(std::to_string(k), x.inner[f[k]][i]));
          objs.push_back(x.entries[f[k]][i]);
        }
      }
      prod.add_shape(choice_label(picks), std::move(positions), std::move(objs));
    });
    return prod;
  }

  /// Projections pick the k-th coordinate of the choice function and map
  /// each position of X_k to its tagged copy with an identity component.
  ProductCone<Object, Morphism> product(std::span<const Object> xs) const {
    ObjectPtr prod = share(product_object(xs));
    ProductCone<Object, Morphism> cone{*prod, {}};
    std::vector<std::size_t> radices;
    for (const auto& x : xs) radices.push_back(x.shape_count());
    std::vector<Morphism> projections;
    for (const auto& x : xs) projections.push_back(Morphism{prod, share(x), {}});
    for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> f) {
      std::size_t offset = 0;
      for (std::size_t k = 0; k < f.size(); ++k) {
        ShapeComponent<BaseMorphism> sc{f[k], {}};
        for (std::size_t i = 0; i < xs[k].position_count(f[k]); ++i)
          sc.positions.push_back({offset + i, base_->identity(xs[k].entries[f[k]][i])});
        offset += xs[k].position_count(f[k]);
        projections[k].table.push_back(std::move(sc));
      }
    });
    cone.projections = std::move(projections);
    return cone;
  }

  /// The pairing <h_k>: apex -> Pi_k X_k of legs h_k: apex -> X_k.
  Morphism tuple(std::span<const Object> factors, const Object& apex,
                 std::span<const Morphism> legs) const {
    if (legs.size() != factors.size()) throw TypeMismatch("tuple: leg count mismatch");
    for (std::size_t k = 0; k < legs.size(); ++k)
      if (!(legs[k].source() == apex) || !(legs[k].target() == factors[k]))
        throw TypeMismatch("tuple: leg has the wrong type");
    Morphism out{share(apex), share(product_object(factors)), {}};
    for (std::size_t j = 0; j < apex.shape_count(); ++j) {
      std::size_t index = 0;
      ShapeComponent<BaseMorphism> sc{0, {}};
      for (std::size_t k = 0; k < legs.size(); ++k) {
        const auto& leg = legs[k].table[j];
        index = index * factors[k].shape_count() + leg.target;
        for (const auto& pc : leg.positions) sc.positions.push_back(pc);
      }
      sc.target = index;
      out.table.push_back(std::move(sc));
    }
    return out;
  }

  /// The copairing [h_k]: Sigma_k X_k -> apex of legs h_k: X_k -> apex.
  Morphism cotuple(std::span<const Object> factors, const Object& apex,
                   std::span<const Morphism> legs) const {
    if (legs.size() != factors.size()) throw TypeMismatch("cotuple: leg count mismatch");
    for (std::size_t k = 0; k < legs.size(); ++k)
      if (!(legs[k].target() == apex) || !(legs[k].source() == factors[k]))
        throw TypeMismatch("cotuple: leg has the wrong type");
    Morphism out{share(coproduct(factors).object), share(apex), {}};
    for (const auto& leg : legs)
      for (const auto& sc : leg.table) out.table.push_back(sc);
    return out;
  }

  /// f_0 x ... x f_n : Pi X_k -> Pi Y_k, as <f_k . pi_k>.
  Morphism product_map(std::span<const Morphism> fs) const {
    std::vector<Object> xs;
    std::vector<Object> ys;
    for (const auto& f : fs) {
      xs.push_back(f.source());
      ys.push_back(f.target());
    }
    const auto cone = product(std::span<const Object>(xs));
    std::vector<Morphism> legs;
    for (std::size_t k = 0; k < fs.size(); ++k) legs.push_back(compose(fs[k], cone.projections[k]));
    return tuple(std::span<const Object>(ys), cone.object, std::span<const Morphism>(legs));
  }

 private:
  const Base* base_;
  std::size_t budget_;
};

/// Count of hom(X, Y) over the terminal base by the container formula
/// Pi_j Sigma_j' |I_j|^|I'_j'|.
template <class Obj>
std::size_t container_hom_count(const DistObject<Obj>& x, const DistObject<Obj>& y) {
  std::size_t total = 1;
  for (std::size_t j = 0; j < x.shape_count(); ++j) {
    std::size_t sum = 0;
    for (std::size_t jp = 0; jp < y.shape_count(); ++jp)
      sum = detail::sat_add(sum, detail::sat_pow(x.position_count(j), y.position_count(jp)));
    total = detail::sat_mul(total, sum);
  }
  return total;
}

}  // namespace distcat
