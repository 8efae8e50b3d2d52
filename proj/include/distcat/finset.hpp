#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "category.hpp"
#include "error.hpp"
#include "labels.hpp"

namespace distcat {

/// A function {0..src-1} -> {0..dst-1}.
struct FinMap {
  std::size_t src = 0;
  std::size_t dst = 0;
  std::vector<std::size_t> values;
  bool operator==(const FinMap&) const = default;
  auto operator<=>(const FinMap&) const = default;
};

/// Finite sets as initial segments {0..n-1} with all functions between them.
/// Products are cartesian with lexicographic pairing (first factor most
/// significant); coproducts are tagged unions laid out summand by summand.
class FinSetModel {
 public:
  using Object = std::size_t;
  using Morphism = FinMap;

  explicit FinSetModel(std::size_t max_size = 3, std::size_t budget = kDefaultBudget)
      : max_size_(max_size), budget_(budget) {}

  std::size_t max_size() const { return max_size_; }

  std::vector<Object> objects() const {
    std::vector<Object> out;
    for (std::size_t n = 0; n <= max_size_; ++n) out.push_back(n);
    return out;
  }

  std::size_t hom_count(Object a, Object b) const { return detail::sat_pow(b, a); }

  /// All functions a -> b, lexicographic in (f(0), f(1), ...).
  std::vector<Morphism> hom(Object a, Object b) const {
    Budget(budget_).require(hom_count(a, b), "FinSet hom enumeration");
    std::vector<Morphism> out;
    const std::vector<std::size_t> radices(a, b);
    for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> d) {
      out.push_back(FinMap{a, b, {d.begin(), d.end()}});
    });
    return out;
  }

  Morphism identity(Object a) const {
    FinMap m{a, a, {}};
    for (std::size_t x = 0; x < a; ++x) m.values.push_back(x);
    return m;
  }

  Morphism compose(const Morphism& g, const Morphism& f) const {
    if (f.dst != g.src) throw TypeMismatch("FinSet composition: sizes disagree");
    FinMap m{f.src, g.dst, {}};
    m.values.reserve(f.src);
    for (std::size_t v : f.values) m.values.push_back(g.values[v]);
    return m;
  }

  Object source(const Morphism& m) const { return m.src; }
  Object target(const Morphism& m) const { return m.dst; }

  ProductCone<Object, Morphism> product(std::span<const Object> sizes) const {
    std::size_t total = 1;
    for (std::size_t s : sizes) total = detail::sat_mul(total, s);
    Budget(budget_).require(total, "FinSet product");
    ProductCone<Object, Morphism> cone{total, {}};
    for (std::size_t k = 0; k < sizes.size(); ++k) cone.projections.push_back(FinMap{total, sizes[k], {}});
    for_each_tuple(sizes, [&](std::span<const std::size_t> d) {
      for (std::size_t k = 0; k < d.size(); ++k) cone.projections[k].values.push_back(d[k]);
    });
    return cone;
  }

  CoproductCone<Object, Morphism> coproduct(std::span<const Object> sizes) const {
    std::size_t total = 0;
    for (std::size_t s : sizes) total += s;
    CoproductCone<Object, Morphism> cone{total, {}};
    std::size_t offset = 0;
    for (std::size_t s : sizes) {
      FinMap inj{s, total, {}};
      for (std::size_t x = 0; x < s; ++x) inj.values.push_back(offset + x);
      offset += s;
      cone.injections.push_back(std::move(inj));
    }
    return cone;
  }

  Morphism tuple(std::span<const Object> factors, Object apex, std::span<const Morphism> legs) const {
    if (legs.size() != factors.size()) throw TypeMismatch("tuple: leg count mismatch");
    std::size_t total = 1;
    for (std::size_t k = 0; k < legs.size(); ++k) {
      if (legs[k].src != apex || legs[k].dst != factors[k])
        throw TypeMismatch("tuple: leg has the wrong type");
      total = detail::sat_mul(total, factors[k]);
    }
    FinMap m{apex, total, {}};
    for (std::size_t x = 0; x < apex; ++x) {
      std::size_t code = 0;
      for (std::size_t k = 0; k < legs.size(); ++k) code = code * factors[k] + legs[k].values[x];
      m.values.push_back(code);
    }
    return m;
  }

  Morphism cotuple(std::span<const Object> factors, Object apex, std::span<const Morphism> legs) const {
    if (legs.size() != factors.size()) throw TypeMismatch("cotuple: leg count mismatch");
    std::size_t total = 0;
    FinMap m{0, apex, {}};
    for (std::size_t k = 0; k < legs.size(); ++k) {
      if (legs[k].dst != apex || legs[k].src != factors[k])
        throw TypeMismatch("cotuple: leg has the wrong type");
      total += factors[k];
      m.values.insert(m.values.end(), legs[k].values.begin(), legs[k].values.end());
    }
    m.src = total;
    return m;
  }

  /// The inverse function when m is a bijection.
  std::optional<Morphism> inverse(const Morphism& m) const {
    if (m.src != m.dst) return std::nullopt;
    FinMap inv{m.dst, m.src, std::vector<std::size_t>(m.src, m.src)};
    for (std::size_t x = 0; x < m.src; ++x) {
      if (inv.values[m.values[x]] != m.src) return std::nullopt;
      inv.values[m.values[x]] = x;
    }
    return inv;
  }

 private:
  std::size_t max_size_;
  std::size_t budget_;
};

inline std::string describe(const FinSetModel&, std::size_t n) { return std::to_string(n); }

inline std::string describe(const FinSetModel&, const FinMap& m) {
  std::vector<std::string> parts;
  for (std::size_t v : m.values) parts.push_back(std::to_string(v));
  return choice_label(parts);
}

}  // namespace distcat
