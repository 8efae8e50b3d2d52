#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"

namespace distcat {

/// A category whose hom-sets can be enumerated exhaustively.
///
/// hom(a, b) lists every morphism a -> b in a fixed order; hom_count(a, b)
/// returns the same cardinality (saturating) without building the list so
/// callers can refuse oversized enumerations up front.
template <class C>
concept FiniteCategory = requires(const C& c, const typename C::Object& a,
                                  const typename C::Morphism& m) {
  typename C::Object;
  typename C::Morphism;
  { c.hom(a, a) } -> std::same_as<std::vector<typename C::Morphism>>;
  { c.hom_count(a, a) } -> std::convertible_to<std::size_t>;
  { c.identity(a) } -> std::same_as<typename C::Morphism>;
  { c.compose(m, m) } -> std::same_as<typename C::Morphism>;
  { c.source(m) } -> std::convertible_to<typename C::Object>;
  { c.target(m) } -> std::convertible_to<typename C::Object>;
  { m == m } -> std::convertible_to<bool>;
  { a == a } -> std::convertible_to<bool>;
};

/// Chosen finite products: a product object with its projections.
template <class Obj, class Mor>
struct ProductCone {
  Obj object;
  std::vector<Mor> projections;
};

/// Chosen finite coproducts: a coproduct object with its injections.
template <class Obj, class Mor>
struct CoproductCone {
  Obj object;
  std::vector<Mor> injections;
};

/// A finite category with chosen finite products and coproducts, together
/// with tupling and cotupling into/out of the chosen objects.
template <class M>
concept ModelCategory =
    FiniteCategory<M> &&
    requires(const M& m, std::span<const typename M::Object> objs, const typename M::Object& a,
             std::span<const typename M::Morphism> legs) {
      { m.product(objs) } -> std::same_as<ProductCone<typename M::Object, typename M::Morphism>>;
      { m.coproduct(objs) }
        -> std::same_as<CoproductCone<typename M::Object, typename M::Morphism>>;
      { m.tuple(objs, a, legs) } -> std::same_as<typename M::Morphism>;
      { m.cotuple(objs, a, legs) } -> std::same_as<typename M::Morphism>;
    };

/// Object handle of a presented category.
struct ObjectId {
  std::uint32_t value = 0;
  auto operator<=>(const ObjectId&) const = default;
};

/// Morphism handle of a presented category.
struct MorphismId {
  std::uint32_t value = 0;
  auto operator<=>(const MorphismId&) const = default;
};

struct LawViolation {
  std::string law;
  std::vector<std::string> witness;
  bool operator==(const LawViolation&) const = default;
};

struct LawReport {
  std::vector<LawViolation> violations;
  bool passed() const { return violations.empty(); }
};

/// A finite category given by explicit object and morphism lists and a
/// composition table on composable pairs. Ids are strings; every
/// enumeration follows declaration order.
class PresentedCategory {
 public:
  using Object = ObjectId;
  using Morphism = MorphismId;

  struct MorphismDecl {
    std::string id;
    std::string src;
    std::string dst;
    bool operator==(const MorphismDecl&) const = default;
  };

  struct CompositionDecl {
    std::string g;
    std::string f;
    std::string result;
  };

  /// Throws MalformedInput on duplicated or dangling ids. Law violations
  /// (mistyped or non-associative tables) are accepted here and reported by
  /// validate_category.
  PresentedCategory(std::vector<std::string> objects, std::vector<MorphismDecl> morphisms,
                    std::map<std::string, std::string> identities,
                    std::vector<CompositionDecl> compositions)
      : object_names_(std::move(objects)), morphisms_(std::move(morphisms)) {
    for (std::uint32_t k = 0; k < object_names_.size(); ++k) {
      if (!object_index_.emplace(object_names_[k], k).second)
        throw MalformedInput("duplicate object id '" + object_names_[k] + "'");
    }
    for (std::uint32_t k = 0; k < morphisms_.size(); ++k) {
      const auto& m = morphisms_[k];
      if (!morphism_index_.emplace(m.id, k).second)
        throw MalformedInput("duplicate morphism id '" + m.id + "'");
      src_.push_back(lookup_object(m.src, "morphism '" + m.id + "' source"));
      dst_.push_back(lookup_object(m.dst, "morphism '" + m.id + "' target"));
    }
    identity_.assign(object_names_.size(), kNone);
    for (const auto& [obj, mor] : identities) {
      const auto o = lookup_object(obj, "identities key");
      const auto it = morphism_index_.find(mor);
      if (it == morphism_index_.end())
        throw MalformedInput("identity of '" + obj + "' names unknown morphism '" + mor + "'");
      identity_[o] = it->second;
    }
    for (std::uint32_t o = 0; o < object_names_.size(); ++o) {
      if (identity_[o] == kNone)
        throw MalformedInput("object '" + object_names_[o] + "' has no identity");
    }
    const std::size_t n = morphisms_.size();
    table_.assign(n * n, kNone);
    for (const auto& c : compositions) {
      const auto g = lookup_morphism(c.g);
      const auto f = lookup_morphism(c.f);
      const auto r = lookup_morphism(c.result);
      if (table_[g * n + f] != kNone)
        throw MalformedInput("composition (" + c.g + ", " + c.f + ") given twice");
      table_[g * n + f] = r;
    }
    homs_.assign(object_names_.size() * object_names_.size(), {});
    for (std::uint32_t k = 0; k < n; ++k)
      homs_[src_[k] * object_names_.size() + dst_[k]].push_back(MorphismId{k});
  }

  std::size_t object_count() const { return object_names_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }

  std::vector<ObjectId> objects() const {
    std::vector<ObjectId> out;
    for (std::uint32_t k = 0; k < object_names_.size(); ++k) out.push_back(ObjectId{k});
    return out;
  }

  std::vector<MorphismId> morphisms() const {
    std::vector<MorphismId> out;
    for (std::uint32_t k = 0; k < morphisms_.size(); ++k) out.push_back(MorphismId{k});
    return out;
  }

  const std::string& name(ObjectId a) const { return object_names_.at(a.value); }
  const std::string& name(MorphismId m) const { return morphisms_.at(m.value).id; }

  ObjectId object(const std::string& id) const {
    const auto it = object_index_.find(id);
    if (it == object_index_.end()) throw UnknownObject("unknown object '" + id + "'");
    return ObjectId{it->second};
  }

  std::optional<MorphismId> find_morphism(const std::string& id) const {
    const auto it = morphism_index_.find(id);
    if (it == morphism_index_.end()) return std::nullopt;
    return MorphismId{it->second};
  }

  ObjectId source(MorphismId m) const { return ObjectId{src_.at(m.value)}; }
  ObjectId target(MorphismId m) const { return ObjectId{dst_.at(m.value)}; }
  MorphismId identity(ObjectId a) const { return MorphismId{identity_.at(a.value)}; }

  /// Composite g . f, or nullopt when the table has no entry for the pair.
  std::optional<MorphismId> try_compose(MorphismId g, MorphismId f) const {
    const auto r = table_[g.value * morphisms_.size() + f.value];
    if (r == kNone) return std::nullopt;
    return MorphismId{r};
  }

  MorphismId compose(MorphismId g, MorphismId f) const {
    if (dst_[f.value] != src_[g.value])
      throw TypeMismatch("cannot compose " + name(g) + " after " + name(f));
    const auto r = try_compose(g, f);
    if (!r) throw TypeMismatch("no composite recorded for (" + name(g) + ", " + name(f) + ")");
    return *r;
  }

  const std::vector<MorphismId>& hom_ref(ObjectId a, ObjectId b) const {
    return homs_.at(a.value * object_names_.size() + b.value);
  }
  std::vector<MorphismId> hom(ObjectId a, ObjectId b) const { return hom_ref(a, b); }
  std::size_t hom_count(ObjectId a, ObjectId b) const { return hom_ref(a, b).size(); }

  const std::vector<std::string>& object_names() const { return object_names_; }
  const std::vector<MorphismDecl>& morphism_decls() const { return morphisms_; }

  std::map<std::string, std::string> identity_decls() const {
    std::map<std::string, std::string> out;
    for (std::uint32_t o = 0; o < object_names_.size(); ++o)
      out[object_names_[o]] = morphisms_[identity_[o]].id;
    return out;
  }

  /// Composition entries as (g, f) -> result, sorted by declaration index.
  std::vector<CompositionDecl> composition_decls() const {
    std::vector<CompositionDecl> out;
    const std::size_t n = morphisms_.size();
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t f = 0; f < n; ++f)
        if (table_[g * n + f] != kNone)
          out.push_back({morphisms_[g].id, morphisms_[f].id, morphisms_[table_[g * n + f]].id});
    return out;
  }

  bool operator==(const PresentedCategory& o) const {
    return object_names_ == o.object_names_ && morphisms_ == o.morphisms_ &&
           identity_ == o.identity_ && table_ == o.table_;
  }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  std::uint32_t lookup_object(const std::string& id, const std::string& where) const {
    const auto it = object_index_.find(id);
    if (it == object_index_.end())
      throw MalformedInput(where + " names unknown object '" + id + "'");
    return it->second;
  }

  std::uint32_t lookup_morphism(const std::string& id) const {
    const auto it = morphism_index_.find(id);
    if (it == morphism_index_.end())
      throw MalformedInput("composition names unknown morphism '" + id + "'");
    return it->second;
  }

  std::vector<std::string> object_names_;
  std::vector<MorphismDecl> morphisms_;
  std::unordered_map<std::string, std::uint32_t> object_index_;
  std::unordered_map<std::string, std::uint32_t> morphism_index_;
  std::vector<std::uint32_t> src_;
  std::vector<std::uint32_t> dst_;
  std::vector<std::uint32_t> identity_;
  std::vector<std::uint32_t> table_;
  std::vector<std::vector<MorphismId>> homs_;
};

/// Checks identity typing, closure and typing of composition, unit laws and
/// associativity. Reports every violation found, not just the first.
inline LawReport validate_category(const PresentedCategory& cat) {
  LawReport report;
  auto flag = [&](const char* law, std::vector<std::string> witness) {
    report.violations.push_back({law, std::move(witness)});
  };
  for (const auto a : cat.objects()) {
    const auto id = cat.identity(a);
    if (cat.source(id) != a || cat.target(id) != a)
      flag("identity-typing", {cat.name(a), cat.name(id)});
  }
  const auto mors = cat.morphisms();
  for (const auto g : mors) {
    for (const auto f : mors) {
      const bool composable = cat.target(f) == cat.source(g);
      const auto r = cat.try_compose(g, f);
      if (composable && !r) {
        flag("compose-totality", {cat.name(g), cat.name(f)});
      } else if (!composable && r) {
        flag("compose-undefined", {cat.name(g), cat.name(f)});
      } else if (r && (cat.source(*r) != cat.source(f) || cat.target(*r) != cat.target(g))) {
        flag("compose-typing", {cat.name(g), cat.name(f)});
      }
    }
  }
  // Unit and associativity checks only make sense on well-typed composites.
  auto composite = [&](MorphismId g, MorphismId f) -> std::optional<MorphismId> {
    if (cat.target(f) != cat.source(g)) return std::nullopt;
    const auto r = cat.try_compose(g, f);
    if (!r || cat.source(*r) != cat.source(f) || cat.target(*r) != cat.target(g))
      return std::nullopt;
    return r;
  };
  for (const auto f : mors) {
    const auto left = composite(cat.identity(cat.target(f)), f);
    if (left && *left != f) flag("left-unit", {cat.name(f)});
    const auto right = composite(f, cat.identity(cat.source(f)));
    if (right && *right != f) flag("right-unit", {cat.name(f)});
  }
  for (const auto f : mors) {
    for (const auto g : mors) {
      if (cat.source(g) != cat.target(f)) continue;
      const auto gf = composite(g, f);
      if (!gf) continue;
      for (const auto h : mors) {
        if (cat.source(h) != cat.target(g)) continue;
        const auto hg = composite(h, g);
        if (!hg) continue;
        const auto lhs = composite(h, *gf);
        const auto rhs = composite(*hg, f);
        if (lhs && rhs && *lhs != *rhs)
          flag("associativity", {cat.name(h), cat.name(g), cat.name(f)});
      }
    }
  }
  return report;
}

/// The dual category: sources and targets swapped, composition reversed,
/// ids unchanged.
inline PresentedCategory opposite(const PresentedCategory& cat) {
  std::vector<PresentedCategory::MorphismDecl> mors;
  for (const auto& m : cat.morphism_decls()) mors.push_back({m.id, m.dst, m.src});
  std::vector<PresentedCategory::CompositionDecl> comps;
  for (const auto& c : cat.composition_decls()) comps.push_back({c.f, c.g, c.result});
  return PresentedCategory(cat.object_names(), std::move(mors), cat.identity_decls(),
                           std::move(comps));
}

/// All morphisms a -> b in declaration order.
inline std::vector<MorphismId> enumerate_hom(const PresentedCategory& cat, ObjectId a, ObjectId b) {
  if (a.value >= cat.object_count() || b.value >= cat.object_count())
    throw UnknownObject("object handle out of range");
  return cat.hom(a, b);
}

inline std::vector<MorphismId> enumerate_hom(const PresentedCategory& cat, const std::string& a,
                                             const std::string& b) {
  return cat.hom(cat.object(a), cat.object(b));
}

/// Human-readable names, used for labels and reports.
inline std::string describe(const PresentedCategory& cat, ObjectId a) { return cat.name(a); }
inline std::string describe(const PresentedCategory& cat, MorphismId m) { return cat.name(m); }

namespace categories {

/// The terminal category 1: one object "*" with its identity.
inline PresentedCategory terminal() {
  return PresentedCategory({"*"}, {{"id_*", "*", "*"}}, {{"*", "id_*"}},
                           {{"id_*", "id_*", "id_*"}});
}

/// Builds a presentation from objects and non-identity morphisms, adding
/// identities "id_<object>" and their unit compositions. Composites of
/// non-identity morphisms must be listed in `compositions`.
inline PresentedCategory with_identities(
    std::vector<std::string> objects, std::vector<PresentedCategory::MorphismDecl> morphisms,
    std::vector<PresentedCategory::CompositionDecl> compositions) {
  std::vector<PresentedCategory::MorphismDecl> all;
  std::map<std::string, std::string> ids;
  for (const auto& o : objects) {
    all.push_back({"id_" + o, o, o});
    ids[o] = "id_" + o;
  }
  for (const auto& m : morphisms) all.push_back(m);
  for (const auto& m : all) {
    compositions.push_back({"id_" + m.dst, m.id, m.id});
    if (m.src != m.dst || m.id != "id_" + m.src) compositions.push_back({m.id, "id_" + m.src, m.id});
  }
  return PresentedCategory(std::move(objects), std::move(all), std::move(ids),
                           std::move(compositions));
}

inline PresentedCategory discrete(std::vector<std::string> objects) {
  return with_identities(std::move(objects), {}, {});
}

/// a -> b with a single arrow f.
inline PresentedCategory arrow() { return with_identities({"a", "b"}, {{"f", "a", "b"}}, {}); }

/// a => b with two parallel arrows f, g.
inline PresentedCategory parallel_pair() {
  return with_identities({"a", "b"}, {{"f", "a", "b"}, {"g", "a", "b"}}, {});
}

/// a <-> b, mutually inverse u and v.
inline PresentedCategory isomorphic_pair() {
  return with_identities({"a", "b"}, {{"u", "a", "b"}, {"v", "b", "a"}},
                         {{"v", "u", "id_a"}, {"u", "v", "id_b"}});
}

/// One object with an idempotent e (e . e = e).
inline PresentedCategory idempotent() {
  return with_identities({"x"}, {{"e", "x", "x"}}, {{"e", "e", "e"}});
}

/// One object with an involution s (s . s = id): the group Z/2.
inline PresentedCategory involution() {
  return with_identities({"x"}, {{"s", "x", "x"}}, {{"s", "s", "id_x"}});
}

}  // namespace categories

}  // namespace distcat
