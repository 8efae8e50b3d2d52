#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "category.hpp"
#include "dist.hpp"
#include "error.hpp"
#include "finset.hpp"
#include "iso.hpp"
#include "labels.hpp"

namespace distcat {

/// An object of the free product completion of Fam(C): a product over J of
/// coproducts over I_j. Stored like a DistObject, read dually: `outer` is
/// the product index J, `inner[j]` the coproduct index I_j and
/// `entries[j][i]` the object C_ij.
template <class Obj>
using ProdOfSumsObject = DistObject<Obj>;

/// For a source summand i: the target summand i' and the base morphism
/// C_ij -> C'_i'j'.
template <class Mor>
struct SummandComponent {
  std::size_t target = 0;
  Mor morphism;
  bool operator==(const SummandComponent&) const = default;
};

/// For a target factor j': the source factor j and the covariant table on
/// its summands.
template <class Mor>
struct FactorComponent {
  std::size_t source = 0;
  std::vector<SummandComponent<Mor>> summands;
  bool operator==(const FactorComponent&) const = default;
};

/// An element of Pi_j' Sigma_j Pi_i Sigma_i' C(C_ij, C'_i'j'), indexed by
/// the target's factors.
template <class Obj, class Mor>
struct ProdOfSumsMorphism {
  std::shared_ptr<const ProdOfSumsObject<Obj>> src;
  std::shared_ptr<const ProdOfSumsObject<Obj>> dst;
  std::vector<FactorComponent<Mor>> table;

  const ProdOfSumsObject<Obj>& source() const { return *src; }
  const ProdOfSumsObject<Obj>& target() const { return *dst; }

  bool operator==(const ProdOfSumsMorphism& o) const {
    return table == o.table && (src == o.src || *src == *o.src) && (dst == o.dst || *dst == *o.dst);
  }
};

/// The category Fam(Fam(C)^op)^op of products of coproducts.
template <FiniteCategory Base>
class ProdOfSums {
 public:
  using BaseObject = typename Base::Object;
  using BaseMorphism = typename Base::Morphism;
  using Object = ProdOfSumsObject<BaseObject>;
  using Morphism = ProdOfSumsMorphism<BaseObject, BaseMorphism>;
  using ObjectPtr = std::shared_ptr<const Object>;

  explicit ProdOfSums(const Base& base, std::size_t budget = kDefaultBudget)
      : base_(&base), budget_(budget) {}

  const Base& base() const { return *base_; }

  static ObjectPtr share(Object x) { return std::make_shared<const Object>(std::move(x)); }

  Morphism identity(const Object& x) const { return identity(share(x)); }

  Morphism identity(const ObjectPtr& x) const {
    Morphism m{x, x, {}};
    for (std::size_t j = 0; j < x->shape_count(); ++j) {
      FactorComponent<BaseMorphism> fc{j, {}};
      for (std::size_t i = 0; i < x->position_count(j); ++i)
        fc.summands.push_back({i, base_->identity(x->entries[j][i])});
      m.table.push_back(std::move(fc));
    }
    return m;
  }

  /// g2 . g1: j'' |-> let <j', p2> = g2(j'') in let <j, p1> = g1(j') in
  ///          <j, i |-> let <i', c1> = p1(i) in let <i'', c2> = p2(i') in <i'', c2 . c1>>.
  Morphism compose(const Morphism& g2, const Morphism& g1) const {
    if (!(g1.dst == g2.src || *g1.dst == *g2.src))
      throw TypeMismatch("product-of-sums composition: target/source disagree");
    Morphism out{g1.src, g2.dst, {}};
    for (const auto& p2 : g2.table) {
      const auto& p1 = g1.table[p2.source];
      FactorComponent<BaseMorphism> fc{p1.source, {}};
      for (const auto& [mid, c1] : p1.summands) {
        const auto& [last, c2] = p2.summands[mid];
        fc.summands.push_back({last, base_->compose(c2, c1)});
      }
      out.table.push_back(std::move(fc));
    }
    return out;
  }

  Object source(const Morphism& m) const { return *m.src; }
  Object target(const Morphism& m) const { return *m.dst; }

  std::size_t hom_count(const Object& x, const Object& y) const {
    std::size_t total = 1;
    for (std::size_t jp = 0; jp < y.shape_count(); ++jp) {
      std::size_t sum = 0;
      for (std::size_t j = 0; j < x.shape_count(); ++j) {
        std::size_t prod = 1;
        for (const auto& c : x.entries[j]) {
          std::size_t s = 0;
          for (const auto& cp : y.entries[jp]) s = detail::sat_add(s, base_->hom_count(c, cp));
          prod = detail::sat_mul(prod, s);
        }
        sum = detail::sat_add(sum, prod);
      }
      total = detail::sat_mul(total, sum);
    }
    return total;
  }

  std::vector<Morphism> hom(const Object& x, const Object& y) const {
    const auto xs = share(x);
    const auto ys = share(y);
    Budget(budget_).require(hom_count(x, y), "product-of-sums hom enumeration");
    std::vector<std::vector<FactorComponent<BaseMorphism>>> options(y.shape_count());
    std::vector<std::size_t> radices;
    for (std::size_t jp = 0; jp < y.shape_count(); ++jp) {
      for (std::size_t j = 0; j < x.shape_count(); ++j) {
        std::vector<std::vector<SummandComponent<BaseMorphism>>> slots(x.position_count(j));
        std::vector<std::size_t> inner;
        for (std::size_t i = 0; i < x.position_count(j); ++i) {
          for (std::size_t ip = 0; ip < y.position_count(jp); ++ip)
            for (const auto& c : base_->hom(x.entries[j][i], y.entries[jp][ip]))
              slots[i].push_back({ip, c});
          inner.push_back(slots[i].size());
        }
        for_each_tuple(std::span<const std::size_t>(inner), [&](std::span<const std::size_t> d) {
          FactorComponent<BaseMorphism> fc{j, {}};
          for (std::size_t i = 0; i < d.size(); ++i) fc.summands.push_back(slots[i][d[i]]);
          options[jp].push_back(std::move(fc));
        });
      }
      radices.push_back(options[jp].size());
    }
    std::vector<Morphism> out;
    for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> d) {
      Morphism m{xs, ys, {}};
      for (std::size_t jp = 0; jp < d.size(); ++jp) m.table.push_back(options[jp][d[jp]]);
      out.push_back(std::move(m));
    });
    return out;
  }

 private:
  const Base* base_;
  std::size_t budget_;
};

/// lambda on objects: Pi_j Sigma_i C_ij |-> Sigma_{f in Pi_j I_j} Pi_j C_{f(j) j}.
/// Shapes are the choice functions (lexicographic, labels "[i_0,...]"); the
/// positions of every shape are the factor labels J.
template <class Obj>
DistObject<Obj> lambda_obj(const ProdOfSumsObject<Obj>& x) {
  std::vector<std::size_t> radices;
  for (std::size_t j = 0; j < x.shape_count(); ++j) radices.push_back(x.position_count(j));
  DistObject<Obj> out;
  for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> f) {
    std::vector<std::string> picks;
    std::vector<Obj> objs;
    for (std::size_t j = 0; j < f.size(); ++j) {
      picks.push_back(x.inner[j][f[j]]);
      objs.push_back(x.entries[j][f[j]]);
    }
    out.add_shape(choice_label(picks), x.outer, std::move(objs));
  });
  return out;
}

/// lambda on morphisms:
///   h = f |-> < j' |-> let <j, g'> = g(j') in pi1(g'(f(j))),
///               j' |-> let <j, g'> = g(j') in <j, pi2(g'(f(j)))> >.
template <FiniteCategory Base>
typename Dist<Base>::Morphism lambda_mor(
    const ProdOfSums<Base>&, const ProdOfSumsMorphism<typename Base::Object, typename Base::Morphism>& g) {
  using Mor = typename Base::Morphism;
  const auto& x = g.source();
  const auto& y = g.target();
  if (g.table.size() != y.shape_count()) throw TypeMismatch("lambda: table not total on J'");
  auto src = Dist<Base>::share(lambda_obj(x));
  auto dst = Dist<Base>::share(lambda_obj(y));
  typename Dist<Base>::Morphism h{src, dst, {}};
  std::vector<std::size_t> radices;
  for (std::size_t j = 0; j < x.shape_count(); ++j) radices.push_back(x.position_count(j));
  for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> f) {
    ShapeComponent<Mor> sc{0, {}};
    std::size_t target = 0;
    for (std::size_t jp = 0; jp < y.shape_count(); ++jp) {
      const auto& [j, gp] = g.table[jp];
      const auto& picked = gp[f[j]];
      target = target * y.position_count(jp) + picked.target;
      sc.positions.push_back({j, picked.morphism});
    }
    sc.target = target;
    h.table.push_back(std::move(sc));
  });
  return h;
}

/// A doubly indexed family (C_ij) of model objects, j in J and i in I_j,
/// stored as entries[j][i].
template <class Obj>
struct DistributorFamily {
  std::vector<std::string> outer;
  std::vector<std::vector<std::string>> inner;
  std::vector<std::vector<Obj>> entries;

  bool operator==(const DistributorFamily&) const = default;
};

/// The canonical morphism
///   [<iota_{f(j)} . pi_j | j in J> | f in Pi_j I_j] :
///       Sigma_f Pi_j C_{f(j) j} -> Pi_j Sigma_i C_ij
/// built from the model's chosen structure, with both sides and the choice
/// functions (lexicographic) that index the source summands.
template <class Obj, class Mor>
struct Distributor {
  Obj source;
  Obj target;
  Mor morphism;
  std::vector<std::vector<std::size_t>> choices;
};

template <ModelCategory M>
Distributor<typename M::Object, typename M::Morphism> canonical_distributor(
    const M& model, const DistributorFamily<typename M::Object>& fam) {
  using Obj = typename M::Object;
  using Mor = typename M::Morphism;
  const std::size_t nj = fam.entries.size();
  std::vector<CoproductCone<Obj, Mor>> sums;
  std::vector<Obj> sum_objects;
  std::vector<std::size_t> radices;
  for (const auto& column : fam.entries) {
    sums.push_back(model.coproduct(std::span<const Obj>(column)));
    sum_objects.push_back(sums.back().object);
    radices.push_back(column.size());
  }
  const auto target = model.product(std::span<const Obj>(sum_objects)).object;

  Distributor<Obj, Mor> out{};
  std::vector<Obj> summands;
  std::vector<Mor> legs;
  for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> f) {
    std::vector<Obj> factors;
    for (std::size_t j = 0; j < nj; ++j) factors.push_back(fam.entries[j][f[j]]);
    const auto prod = model.product(std::span<const Obj>(factors));
    std::vector<Mor> components;
    for (std::size_t j = 0; j < nj; ++j)
      components.push_back(model.compose(sums[j].injections[f[j]], prod.projections[j]));
    legs.push_back(model.tuple(std::span<const Obj>(sum_objects), prod.object,
                               std::span<const Mor>(components)));
    summands.push_back(prod.object);
    out.choices.emplace_back(f.begin(), f.end());
  });
  const auto source = model.coproduct(std::span<const Obj>(summands)).object;
  Mor morphism = summands.size() == 1
                     ? legs.front()
                     : model.cotuple(std::span<const Obj>(summands), target, std::span<const Mor>(legs));
  out.source = source;
  out.target = target;
  out.morphism = std::move(morphism);
  return out;
}

/// A two-sided inverse of m in the model, verified against both identities.
/// Uses the model's own inverse construction when it has one, otherwise
/// searches hom(target, source) within the budget.
template <ModelCategory M>
std::optional<typename M::Morphism> find_inverse(const M& model, const typename M::Morphism& m,
                                                 std::size_t budget = kDefaultBudget) {
  const auto a = model.source(m);
  const auto b = model.target(m);
  const auto id_a = model.identity(a);
  const auto id_b = model.identity(b);
  auto is_inverse = [&](const typename M::Morphism& d) {
    return model.compose(d, m) == id_a && model.compose(m, d) == id_b;
  };
  if constexpr (requires { model.inverse(m); }) {
    const auto d = model.inverse(m);
    if (d && is_inverse(*d)) return d;
    return std::nullopt;
  } else {
    Budget(budget).require(model.hom_count(b, a), "inverse search");
    for (const auto& d : model.hom(b, a))
      if (is_inverse(d)) return d;
    return std::nullopt;
  }
}

/// True iff the canonical distributor of `fam` is invertible in the model.
template <ModelCategory M>
bool check_distributor_iso(const M& model, const DistributorFamily<typename M::Object>& fam,
                           std::size_t budget = kDefaultBudget) {
  const auto d = canonical_distributor(model, fam);
  return find_inverse(model, d.morphism, budget).has_value();
}

/// The elementwise inverse in FinSet:
///   <iota_{i_j}(c_j)>_j |-> iota_{j |-> i_j}(<c_j>_j).
inline FinMap distributor_inverse_finset(const DistributorFamily<std::size_t>& fam) {
  const std::size_t nj = fam.entries.size();
  std::vector<std::size_t> sum_sizes;
  std::vector<std::size_t> radices;
  for (const auto& column : fam.entries) {
    std::size_t s = 0;
    for (std::size_t c : column) s += c;
    sum_sizes.push_back(s);
    radices.push_back(column.size());
  }
  std::size_t target = 1;
  for (std::size_t s : sum_sizes) target *= s;

  // Offset of summand f in Sigma_f Pi_j C_{f(j) j}, keyed by the lexicographic
  // index of f.
  std::vector<std::size_t> summand_offset;
  std::size_t source = 0;
  for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> f) {
    summand_offset.push_back(source);
    std::size_t size = 1;
    for (std::size_t j = 0; j < nj; ++j) size *= fam.entries[j][f[j]];
    source += size;
  });

  FinMap d{target, source, {}};
  std::vector<std::size_t> sums(nj);
  for (std::size_t x = 0; x < target; ++x) {
    std::size_t rest = x;
    for (std::size_t j = nj; j-- > 0;) {
      sums[j] = rest % sum_sizes[j];
      rest /= sum_sizes[j];
    }
    std::size_t choice = 0;
    std::size_t element = 0;
    for (std::size_t j = 0; j < nj; ++j) {
      std::size_t i = 0;
      std::size_t c = sums[j];
      while (c >= fam.entries[j][i]) c -= fam.entries[j][i++];
      choice = choice * radices[j] + i;
      element = element * fam.entries[j][i] + c;
    }
    d.values.push_back(summand_offset[choice] + element);
  }
  return d;
}

}  // namespace distcat
