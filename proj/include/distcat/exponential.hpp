#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dist.hpp"
#include "error.hpp"
#include "labels.hpp"

namespace distcat {

/// For one source shape j of A: the chosen target shape j' of B and, for
/// every position i' of j', either a source position of A with a base
/// component, or nullopt for the bottom tag.
template <class Mor>
struct ExponentChoice {
  std::size_t target = 0;
  std::vector<std::optional<PositionComponent<Mor>>> positions;
  bool operator==(const ExponentChoice&) const = default;
};

/// An element f of Pi_j Sigma_j' Pi_i' Sigma_{i in I_j + {bot}} ... : one
/// choice per shape of A.
template <class Mor>
using ExponentShape = std::vector<ExponentChoice<Mor>>;

/// The exponential A => B by the closed Dialectica-style formula, together
/// with the bookkeeping that currying and evaluation need.
///
/// Shapes are enumerated with A's shape 0 most significant; for each shape
/// the choices run over j' ascending, then inner tables lexicographic in i'
/// with the bottom tag ordered after every genuine component. The positions
/// of shape f are the pairs (j, i') with f(j) = <j', g> and g(i') = bottom,
/// ordered by j then i', carrying the object C'_j'i'.
template <DescribedCategory Base>
class Exponential {
 public:
  using Category = Dist<Base>;
  using Obj = typename Base::Object;
  using Mor = typename Base::Morphism;
  using Object = DistObject<Obj>;
  using Morphism = DistMorphism<Obj, Mor>;
  using Choice = ExponentChoice<Mor>;
  using Shape = ExponentShape<Mor>;

  Exponential(const Category& dist, Object a, Object b)
      : dist_(&dist), a_(Category::share(std::move(a))), b_(Category::share(std::move(b))) {
    build();
  }

  const Object& base_object() const { return *a_; }
  const Object& exponent_target() const { return *b_; }
  const Object& object() const { return *object_; }
  const std::shared_ptr<const Object>& object_ptr() const { return object_; }
  const std::vector<Shape>& shapes() const { return shapes_; }

  /// Index of `shape` in the enumeration, computed by mixed radix.
  std::size_t shape_index(const Shape& shape) const {
    if (shape.size() != a_->shape_count()) throw TypeMismatch("exponent shape has wrong arity");
    std::size_t index = 0;
    for (std::size_t j = 0; j < shape.size(); ++j)
      index = index * choices_[j].size() + choice_index(j, shape[j]);
    return index;
  }

  /// Position of (j, i') within the positions of shape s.
  std::size_t position_index(std::size_t s, std::size_t j, std::size_t ip) const {
    const auto& choice = shapes_[s][j];
    std::size_t pos = offsets_[s][j];
    for (std::size_t k = 0; k < ip; ++k)
      if (!choice.positions[k]) ++pos;
    return pos;
  }

  /// The product X x A in the fixed order (X first, A second).
  Object product_with(const Object& x) const {
    const Object factors[] = {x, *a_};
    return dist_->product_object(std::span<const Object>(factors));
  }

  /// Transposes h: X x A -> B to X -> (A => B).
  Morphism curry(const Object& x, const Morphism& h) const {
    if (!(h.source() == product_with(x))) throw TypeMismatch("curry: source is not X x A");
    if (!(h.target() == *b_)) throw TypeMismatch("curry: target is not B");
    const std::size_t na = a_->shape_count();
    Morphism out{Category::share(x), object_, {}};
    for (std::size_t j0 = 0; j0 < x.shape_count(); ++j0) {
      const std::size_t nx = x.position_count(j0);
      Shape shape;
      shape.reserve(na);
      for (std::size_t j1 = 0; j1 < na; ++j1) {
        const auto& sc = h.table[j0 * na + j1];
        Choice choice{sc.target, {}};
        for (const auto& pc : sc.positions) {
          if (pc.source >= nx)
            choice.positions.push_back(PositionComponent<Mor>{pc.source - nx, pc.morphism});
          else
            choice.positions.push_back(std::nullopt);
        }
        shape.push_back(std::move(choice));
      }
      ShapeComponent<Mor> result{shape_index(shape), {}};
      for (std::size_t j1 = 0; j1 < na; ++j1) {
        const auto& sc = h.table[j0 * na + j1];
        for (const auto& pc : sc.positions)
          if (pc.source < nx) result.positions.push_back(pc);
      }
      out.table.push_back(std::move(result));
    }
    return out;
  }

  /// Transposes k: X -> (A => B) back to X x A -> B.
  Morphism uncurry(const Morphism& k) const {
    if (!(k.target() == *object_)) throw TypeMismatch("uncurry: target is not A => B");
    const auto& x = k.source();
    const std::size_t na = a_->shape_count();
    Morphism out{Category::share(product_with(x)), b_, {}};
    for (std::size_t j0 = 0; j0 < x.shape_count(); ++j0) {
      const std::size_t nx = x.position_count(j0);
      const auto& sc = k.table[j0];
      const auto& shape = shapes_[sc.target];
      for (std::size_t j1 = 0; j1 < na; ++j1) {
        const auto& choice = shape[j1];
        ShapeComponent<Mor> result{choice.target, {}};
        for (std::size_t ip = 0; ip < choice.positions.size(); ++ip) {
          if (choice.positions[ip]) {
            result.positions.push_back({nx + choice.positions[ip]->source,
                                        choice.positions[ip]->morphism});
          } else {
            result.positions.push_back(sc.positions[position_index(sc.target, j1, ip)]);
          }
        }
        out.table.push_back(std::move(result));
      }
    }
    return out;
  }

  /// The counit (A => B) x A -> B, the transpose of the identity.
  Morphism eval() const { return uncurry(dist_->identity(object_)); }

 private:
  std::size_t choice_index(std::size_t j, const Choice& choice) const {
    if (choice.target >= b_->shape_count()) throw TypeMismatch("exponent choice out of range");
    const auto& layout = layout_[j][choice.target];
    if (choice.positions.size() != layout.slots.size())
      throw TypeMismatch("exponent choice has wrong inner arity");
    std::size_t index = 0;
    for (std::size_t ip = 0; ip < choice.positions.size(); ++ip) {
      const auto& slot = layout.slots[ip];
      std::size_t digit = slot.size();
      for (std::size_t d = 0; d < slot.size(); ++d) {
        if (slot[d] == choice.positions[ip]) {
          digit = d;
          break;
        }
      }
      if (digit == slot.size()) throw TypeMismatch("exponent choice not in the enumeration");
      index = index * slot.size() + digit;
    }
    return layout.offset + index;
  }

  struct Layout {
    std::size_t offset = 0;
    std::vector<std::vector<std::optional<PositionComponent<Mor>>>> slots;
  };

  void build() {
    const auto& base = dist_->base();
    const auto& a = *a_;
    const auto& b = *b_;
    layout_.assign(a.shape_count(), {});
    choices_.assign(a.shape_count(), {});
    std::size_t total = 1;
    for (std::size_t j = 0; j < a.shape_count(); ++j) {
      std::size_t offset = 0;
      for (std::size_t jp = 0; jp < b.shape_count(); ++jp) {
        Layout layout;
        layout.offset = offset;
        std::vector<std::size_t> radices;
        for (std::size_t ip = 0; ip < b.position_count(jp); ++ip) {
          std::vector<std::optional<PositionComponent<Mor>>> slot;
          for (std::size_t i = 0; i < a.position_count(j); ++i)
            for (const auto& c : base.hom(a.entries[j][i], b.entries[jp][ip]))
              slot.push_back(PositionComponent<Mor>{i, c});
          slot.push_back(std::nullopt);
          radices.push_back(slot.size());
          layout.slots.push_back(std::move(slot));
        }
        const std::size_t count = tuple_count(std::span<const std::size_t>(radices));
        Budget(dist_->budget()).require(count, "exponential shape enumeration");
        for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> d) {
          Choice choice{jp, {}};
          for (std::size_t ip = 0; ip < d.size(); ++ip)
            choice.positions.push_back(layout.slots[ip][d[ip]]);
          choices_[j].push_back(std::move(choice));
        });
        offset += count;
        layout_[j].push_back(std::move(layout));
      }
      total = detail::sat_mul(total, choices_[j].size());
    }
    Budget(dist_->budget()).require(total, "exponential shape enumeration");

    auto obj = std::make_shared<Object>();
    std::vector<std::size_t> radices;
    for (const auto& c : choices_) radices.push_back(c.size());
    for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> d) {
      Shape shape;
      std::vector<std::size_t> offsets;
      std::vector<std::string> positions;
      std::vector<Obj> objs;
      std::string label = "{";
      for (std::size_t j = 0; j < d.size(); ++j) {
        const auto& choice = choices_[j][d[j]];
        offsets.push_back(positions.size());
        if (j) label += ';';
        label += a.outer[j] + ">" + b.outer[choice.target] + "<";
        for (std::size_t ip = 0; ip < choice.positions.size(); ++ip) {
          if (ip) label += ',';
          const auto& slot = choice.positions[ip];
          if (slot) {
            label += pair_label(a.inner[j][slot->source], describe(base, slot->morphism));
          } else {
            label += kBottomLabel;
            positions.push_back(pair_label(a.outer[j], b.inner[choice.target][ip]));
            objs.push_back(b.entries[choice.target][ip]);
          }
        }
        label += '>';
        shape.push_back(choice);
      }
      label += '}';
      obj->add_shape(std::move(label), std::move(positions), std::move(objs));
      shapes_.push_back(std::move(shape));
      offsets_.push_back(std::move(offsets));
    });
    object_ = std::move(obj);
  }

  const Category* dist_;
  std::shared_ptr<const Object> a_;
  std::shared_ptr<const Object> b_;
  std::shared_ptr<const Object> object_;
  std::vector<std::vector<Layout>> layout_;
  std::vector<std::vector<Choice>> choices_;
  std::vector<Shape> shapes_;
  std::vector<std::vector<std::size_t>> offsets_;
};

/// A => B by the closed formula.
template <DescribedCategory Base>
DistObject<typename Base::Object> dist_exponential(const Dist<Base>& dist,
                                                   const DistObject<typename Base::Object>& a,
                                                   const DistObject<typename Base::Object>& b) {
  return Exponential<Base>(dist, a, b).object();
}

/// A => B by recursion on the structure of B, for A with a single shape:
///   A => b = (Sigma_{Dist(A, b)} 1) + b      for b a generator,
///   A => Sigma_j' B_j' = Sigma_j' (A => B_j'),
///   A => Pi_i' b_i' = Pi_i' (A => b_i').
/// A with no shapes (the initial object) yields the terminal object.
/// Throws ShapeRestriction when A has more than one shape.
template <DescribedCategory Base>
DistObject<typename Base::Object> dist_exponential_inductive(
    const Dist<Base>& dist, const DistObject<typename Base::Object>& a,
    const DistObject<typename Base::Object>& b) {
  using Object = DistObject<typename Base::Object>;
  if (a.shape_count() > 1)
    throw ShapeRestriction("inductive exponential needs a source with at most one shape");
  if (a.shape_count() == 0) return terminal_object<typename Base::Object>();
  std::vector<Object> summands;
  for (std::size_t jp = 0; jp < b.shape_count(); ++jp) {
    std::vector<Object> factors;
    for (std::size_t ip = 0; ip < b.position_count(jp); ++ip) {
      const auto gen = generator_object(b.entries[jp][ip]);
      const std::size_t homs = dist.hom(a, gen).size();
      std::vector<Object> parts(homs, terminal_object<typename Base::Object>());
      parts.push_back(gen);
      factors.push_back(dist.coproduct(std::span<const Object>(parts)).object);
    }
    summands.push_back(dist.product_object(std::span<const Object>(factors)));
  }
  return dist.coproduct(std::span<const Object>(summands)).object;
}

/// Extends the inductive construction to any A by A => B = Pi_j (A_j => B),
/// where A = Sigma_j A_j splits into its one-shape summands.
template <DescribedCategory Base>
DistObject<typename Base::Object> dist_exponential_inductive_general(
    const Dist<Base>& dist, const DistObject<typename Base::Object>& a,
    const DistObject<typename Base::Object>& b) {
  using Object = DistObject<typename Base::Object>;
  if (a.shape_count() == 1) return dist_exponential_inductive(dist, a, b);
  std::vector<Object> factors;
  for (std::size_t j = 0; j < a.shape_count(); ++j)
    factors.push_back(dist_exponential_inductive(dist, shape_object(a, j), b));
  return dist.product_object(std::span<const Object>(factors));
}

}  // namespace distcat
