#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "category.hpp"
#include "dist.hpp"
#include "distlaw.hpp"
#include "error.hpp"
#include "finset.hpp"
#include "iso.hpp"
#include "labels.hpp"
#include "lattice.hpp"

namespace distcat {

struct SizeCaps {
  std::size_t max_outer = 2;
  std::size_t max_inner = 2;
};

/// Every Dist object over `base` with at most caps.max_outer shapes and
/// caps.max_inner positions per shape, labelled "0", "1", ....
///
/// With `up_to_iso` only one representative per isomorphism class is
/// produced: positions are sorted multisets of base objects and shapes are
/// sorted multisets of such position lists. The objects of a presented base
/// are assumed pairwise non-isomorphic for this reduction.
template <FiniteCategory Base>
std::vector<DistObject<typename Base::Object>> generate_dist_objects(
    const std::vector<typename Base::Object>& base_objects, SizeCaps caps, bool up_to_iso) {
  using Obj = typename Base::Object;
  std::vector<std::vector<std::size_t>> shapes;
  for (std::size_t m = 0; m <= caps.max_inner; ++m) {
    const std::vector<std::size_t> radices(m, base_objects.size());
    for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> d) {
      if (up_to_iso && !std::is_sorted(d.begin(), d.end())) return;
      shapes.emplace_back(d.begin(), d.end());
    });
  }
  std::vector<DistObject<Obj>> out;
  for (std::size_t n = 0; n <= caps.max_outer; ++n) {
    const std::vector<std::size_t> radices(n, shapes.size());
    for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> d) {
      if (up_to_iso && !std::is_sorted(d.begin(), d.end())) return;
      DistObject<Obj> x;
      for (std::size_t j = 0; j < d.size(); ++j) {
        const auto& shape = shapes[d[j]];
        std::vector<Obj> objs;
        for (std::size_t k : shape) objs.push_back(base_objects[k]);
        x.add_shape(std::to_string(j), numbered_labels(shape.size()), std::move(objs));
      }
      out.push_back(std::move(x));
    });
  }
  return out;
}

/// Dist(C) over a presented base behind the model interface, with an object
/// enumeration restricted to the size caps.
template <DescribedCategory Base>
class DistModel : public Dist<Base> {
 public:
  using typename Dist<Base>::Object;
  using typename Dist<Base>::Morphism;

  DistModel(const Base& base, SizeCaps caps, std::vector<typename Base::Object> base_objects,
            std::size_t budget = kDefaultBudget)
      : Dist<Base>(base, budget), caps_(caps), base_objects_(std::move(base_objects)) {}

  SizeCaps caps() const { return caps_; }

  /// Representatives of every isomorphism class within the caps.
  std::vector<Object> objects() const {
    return generate_dist_objects<Base>(base_objects_, caps_, /*up_to_iso=*/true);
  }

  std::optional<Morphism> inverse(const Morphism& m) const { return dist_inverse(*this, m); }

 private:
  SizeCaps caps_;
  std::vector<typename Base::Object> base_objects_;
};

inline DistModel<PresentedCategory> dist_as_model(const PresentedCategory& base, SizeCaps caps,
                                                  std::size_t budget = kDefaultBudget) {
  return DistModel<PresentedCategory>(base, caps, base.objects(), budget);
}

inline FinSetModel finset_model(std::size_t max_size) { return FinSetModel(max_size); }

/// Result of the finite complete-distributivity check, with a failing family
/// when there is one.
struct DistributivityVerdict {
  bool distributive = true;
  std::optional<DistributorFamily<std::size_t>> witness;
};

/// Decides whether the canonical distributor is invertible for every family
/// (C_ij) with |J| <= |L| and |I_j| <= |L|.
///
/// In a lattice the distributor is the arrow
///   join_f meet_j C_{f(j) j}  <=  meet_j join_i C_ij
/// and is invertible iff the reverse inequality holds. Both sides depend on
/// each I_j only through the set {C_ij}, and after the first k factors only
/// through the pair (meet of the joins so far, set of meets over choice
/// functions so far). The search explores these states breadth first over
/// families of length <= |L| whose factors are subsets of L; a reachable
/// failing state is replayed as a concrete family and confirmed through the
/// model's canonical distributor.
inline DistributivityVerdict is_completely_distributive_finite(const LatticeModel& model,
                                                               std::size_t budget = kDefaultBudget) {
  const auto& l = model.lattice();
  const std::size_t n = l.size();
  if (n > 20) throw EnumerationBudgetExceeded("lattice too large for exhaustive family search");
  struct State {
    std::size_t lhs;
    unsigned long long choices;
    bool operator<(const State& o) const {
      return lhs != o.lhs ? lhs < o.lhs : choices < o.choices;
    }
  };
  struct Parent {
    std::optional<State> prev;
    unsigned long long subset = 0;
  };
  const std::size_t subsets = std::size_t{1} << n;
  Budget b(budget);

  auto join_of = [&](unsigned long long set) {
    std::size_t j = l.bottom();
    for (std::size_t a = 0; a < n; ++a)
      if (set >> a & 1ULL) j = l.join(j, a);
    return j;
  };

  std::map<State, Parent> seen;
  const State start{l.top(), 1ULL << l.top()};
  seen.emplace(start, Parent{});
  std::vector<State> frontier{start};
  std::optional<State> failing;
  for (std::size_t depth = 0; depth < n && !failing; ++depth) {
    std::vector<State> next;
    for (const auto& s : frontier) {
      b.charge(subsets, "distributivity family search");
      for (unsigned long long subset = 0; subset < subsets && !failing; ++subset) {
        State t{l.meet(s.lhs, join_of(subset)), 0};
        for (std::size_t m = 0; m < n; ++m)
          if (s.choices >> m & 1ULL)
            for (std::size_t a = 0; a < n; ++a)
              if (subset >> a & 1ULL) t.choices |= 1ULL << l.meet(m, a);
        if (!seen.emplace(t, Parent{s, subset}).second) continue;
        if (!l.leq(t.lhs, join_of(t.choices))) failing = t;
        next.push_back(t);
      }
      if (failing) break;
    }
    frontier = std::move(next);
  }
  if (!failing) return {true, std::nullopt};

  std::vector<unsigned long long> factors;
  for (auto s = *failing; seen.at(s).prev; s = *seen.at(s).prev) factors.push_back(seen.at(s).subset);
  DistributorFamily<std::size_t> fam;
  for (std::size_t j = factors.size(); j-- > 0;) {
    fam.outer.push_back(std::to_string(fam.outer.size()));
    std::vector<std::string> labels;
    std::vector<std::size_t> elems;
    for (std::size_t a = 0; a < n; ++a) {
      if (factors[j] >> a & 1ULL) {
        labels.push_back(l.name(a));
        elems.push_back(a);
      }
    }
    fam.inner.push_back(std::move(labels));
    fam.entries.push_back(std::move(elems));
  }
  if (check_distributor_iso(model, fam, budget))
    throw Error("distributivity search produced a family the model inverts");
  return {false, std::move(fam)};
}

}  // namespace distcat
