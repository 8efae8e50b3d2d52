#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "category.hpp"
#include "dist.hpp"
#include "distlaw.hpp"
#include "error.hpp"
#include "exponential.hpp"
#include "fam.hpp"
#include "finset.hpp"
#include "io.hpp"
#include "iso.hpp"
#include "models.hpp"
#include "universal.hpp"

namespace distcat::suite {

using json = nlohmann::ordered_json;
using DistC = Dist<PresentedCategory>;
using Obj = DistC::Object;
using Mor = DistC::Morphism;
using ObjPtr = DistC::ObjectPtr;

struct SuiteConfig {
  SizeCaps caps{2, 2};
  std::size_t budget = kDefaultBudget;
  std::uint64_t seed = 1;
  std::vector<std::string> suites;  // empty selects every suite
  std::size_t samples = 200;
  std::size_t instance_limit = 4096;               // largest hom-set checked elementwise
  std::size_t exhaustive_limit = 4'000'000'000;    // largest triple count checked exhaustively
  bool mutate = false;

  bool selected(const std::string& name) const {
    return suites.empty() || std::find(suites.begin(), suites.end(), name) != suites.end();
  }
  bool empty_caps() const { return caps.max_outer == 0 || caps.max_inner == 0; }
};

/// One property of one suite. A property fails exactly when it carries a
/// witness.
struct PropertyResult {
  std::string suite;
  std::string property;
  std::size_t instances = 0;
  std::size_t skipped = 0;
  std::string mode = "exhaustive";
  std::optional<json> witness;

  bool passed() const { return !witness; }
  void fail(json w) {
    if (!witness) witness = std::move(w);
  }
};

class Report {
 public:
  PropertyResult& add(std::string suite, std::string property, std::string mode = "exhaustive") {
    results_.push_back({std::move(suite), std::move(property), 0, 0, std::move(mode), std::nullopt});
    return results_.back();
  }

  const std::deque<PropertyResult>& results() const { return results_; }

  const PropertyResult* find(const std::string& suite, const std::string& property) const {
    for (const auto& r : results_)
      if (r.suite == suite && r.property == property) return &r;
    return nullptr;
  }

  bool passed() const {
    return std::all_of(results_.begin(), results_.end(), [](const auto& r) { return r.passed(); });
  }

  std::size_t instances() const {
    std::size_t n = 0;
    for (const auto& r : results_) n += r.instances;
    return n;
  }

  /// One JSON object per line, fields in a fixed order.
  std::string jsonl() const {
    std::string out;
    for (const auto& r : results_) {
      json line;
      line["suite"] = r.suite;
      line["property"] = r.property;
      line["instances"] = r.instances;
      line["skipped"] = r.skipped;
      line["mode"] = r.mode;
      line["status"] = r.passed() ? "pass" : "fail";
      line["witness"] = r.witness ? *r.witness : json(nullptr);
      out += line.dump();
      out += '\n';
    }
    return out;
  }

  std::string summary() const {
    std::ostringstream out;
    std::size_t failed = 0;
    for (const auto& r : results_) {
      if (!r.passed()) ++failed;
      out << (r.passed() ? "  pass " : "  FAIL ") << r.suite << '/' << r.property << " ("
          << r.instances << " instances";
      if (r.skipped) out << ", " << r.skipped << " skipped";
      out << ")\n";
    }
    out << results_.size() - failed << '/' << results_.size() << " properties passed, "
        << instances() << " instances\n";
    return out.str();
  }

 private:
  std::deque<PropertyResult> results_;  // add() hands out stable references
};

/// Dist composition, optionally with a deliberate defect for exercising the
/// law checks: when neither argument is an identity, position components
/// whose source shape has equal entries are shifted to the next position.
/// Identities still absorb; associativity breaks.
class Composer {
 public:
  Composer(const DistC& dist, bool mutate) : dist_(&dist), mutate_(mutate) {}

  Mor operator()(const Mor& h2, const Mor& h1) const {
    auto out = dist_->compose(h2, h1);
    if (!mutate_ || is_identity(h1) || is_identity(h2)) return out;
    const auto& x = out.source();
    for (std::size_t j = 0; j < out.table.size(); ++j) {
      const auto n = x.position_count(j);
      if (n < 2) continue;
      const auto& es = x.entries[j];
      if (!std::all_of(es.begin(), es.end(), [&](const auto& e) { return e == es.front(); }))
        continue;
      for (auto& pc : out.table[j].positions) pc.source = (pc.source + 1) % n;
    }
    return out;
  }

  bool mutated() const { return mutate_; }

 private:
  bool is_identity(const Mor& m) const {
    if (!(m.source() == m.target())) return false;
    return m == dist_->identity(m.src);
  }

  const DistC* dist_;
  bool mutate_;
};

namespace detail {

/// Byte key of a morphism table, for locating composites in an enumeration.
inline std::string table_key(const Mor& m) {
  std::string key;
  auto put = [&](std::uint32_t v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
  for (const auto& sc : m.table) {
    put(static_cast<std::uint32_t>(sc.target));
    put(static_cast<std::uint32_t>(sc.positions.size()));
    for (const auto& pc : sc.positions) {
      put(static_cast<std::uint32_t>(pc.source));
      put(pc.morphism.value);
    }
  }
  return key;
}

/// hom(x, y) with a reverse lookup from table to enumeration index.
class HomIndex {
 public:
  HomIndex() = default;
  HomIndex(const DistC& dist, const ObjPtr& x, const ObjPtr& y) : homs_(dist.hom(x, y)) {
    rank_.reserve(homs_.size());
    for (std::size_t k = 0; k < homs_.size(); ++k)
      rank_.emplace(table_key(homs_[k]), static_cast<std::uint32_t>(k));
  }

  const std::vector<Mor>& homs() const { return homs_; }
  std::size_t size() const { return homs_.size(); }

  std::optional<std::uint32_t> find(const Mor& m) const {
    if (homs_.empty()) return std::nullopt;
    if (!(m.source() == homs_.front().source()) || !(m.target() == homs_.front().target()))
      return std::nullopt;
    const auto it = rank_.find(table_key(m));
    if (it == rank_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<Mor> homs_;
  std::unordered_map<std::string, std::uint32_t> rank_;
};

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) { return n == 0 ? 0 : rng() % n; }

}  // namespace detail

/// Serialization context shared by witnesses.
struct WitnessWriter {
  const PresentedCategory* base;

  json object(const Obj& x) const { return io::dist_object_to_json(*base, x); }
  json morphism(const Mor& m) const { return io::dist_morphism_to_json(*base, m); }

  /// {"kind", "base", "objects", "indices", ...}: the instance is replayed
  /// by enumerating the listed hom-sets and taking the listed positions.
  json instance(const std::string& kind, const std::vector<Obj>& objects,
                const std::vector<std::size_t>& indices) const {
    json w;
    w["kind"] = kind;
    w["base"] = io::category_to_json(*base);
    w["objects"] = json::array();
    for (const auto& x : objects) w["objects"].push_back(object(x));
    w["indices"] = indices;
    return w;
  }
};

// ---------------------------------------------------------------- checks
// Single-instance checks, shared by the suites and by witness replay.

inline bool check_left_unit(const Composer& comp, const DistC& dist, const Mor& f) {
  return comp(dist.identity(f.dst), f) == f;
}

inline bool check_right_unit(const Composer& comp, const DistC& dist, const Mor& f) {
  return comp(f, dist.identity(f.src)) == f;
}

inline bool check_associativity(const Composer& comp, const Mor& f, const Mor& g, const Mor& h) {
  return comp(h, comp(g, f)) == comp(comp(h, g), f);
}

inline bool check_curry_roundtrip(const Exponential<PresentedCategory>& e, const Obj& x, const Mor& h) {
  return e.uncurry(e.curry(x, h)) == h;
}

inline bool check_uncurry_roundtrip(const Exponential<PresentedCategory>& e, const Obj& x, const Mor& k) {
  return e.curry(x, e.uncurry(k)) == k;
}

/// eval . (curry(h) x id_A) = h.
inline bool check_eval_triangle(const DistC& dist, const Exponential<PresentedCategory>& e,
                                const Obj& x, const Mor& h) {
  const Mor parts[] = {e.curry(x, h), dist.identity(e.base_object())};
  return dist.compose(e.eval(), dist.product_map(std::span<const Mor>(parts))) == h;
}

/// curry(h . (u x id_A)) = curry(h) . u for u: X' -> X.
inline bool check_curry_naturality(const DistC& dist, const Exponential<PresentedCategory>& e,
                                   const Obj& x, const Mor& h, const Mor& u) {
  const Mor parts[] = {u, dist.identity(e.base_object())};
  const auto lhs = e.curry(u.source(), dist.compose(h, dist.product_map(std::span<const Mor>(parts))));
  return lhs == dist.compose(e.curry(x, h), u);
}

inline bool check_closed_vs_inductive(const DistC& dist, const Obj& a, const Obj& b,
                                      std::size_t budget) {
  const auto closed = dist_exponential(dist, a, b);
  const auto inductive = dist_exponential_inductive_general(dist, a, b);
  return iso_check(dist, closed, inductive, budget).has_value();
}

inline bool check_lambda_identity(const DistC& dist, const ProdOfSums<PresentedCategory>& pos,
                                  const Obj& x) {
  return lambda_mor(pos, pos.identity(x)) == dist.identity(lambda_obj(x));
}

inline bool check_lambda_composition(const DistC& dist, const ProdOfSums<PresentedCategory>& pos,
                                     const ProdOfSums<PresentedCategory>::Morphism& g1,
                                     const ProdOfSums<PresentedCategory>::Morphism& g2) {
  return lambda_mor(pos, pos.compose(g2, g1)) ==
         dist.compose(lambda_mor(pos, g2), lambda_mor(pos, g1));
}

/// The canonical distributor in FinSet is invertible and the elementwise
/// inverse is two-sided.
inline bool check_distributor_finset(const DistributorFamily<std::size_t>& fam, std::size_t budget) {
  const FinSetModel model(3, budget);
  const auto d = canonical_distributor(model, fam);
  if (!check_distributor_iso(model, fam, budget)) return false;
  const auto inv = distributor_inverse_finset(fam);
  return model.compose(inv, d.morphism) == model.identity(d.source) &&
         model.compose(d.morphism, inv) == model.identity(d.target);
}

// ---------------------------------------------------------------- suites

/// Objects within the caps, up to isomorphism; empty when a cap is zero.
inline std::vector<Obj> suite_objects(const PresentedCategory& base, const SuiteConfig& config) {
  if (config.empty_caps()) return {};
  return generate_dist_objects<PresentedCategory>(base.objects(), config.caps, true);
}

/// Unit laws on every morphism and associativity on every composable triple
/// between the given objects. Composites are first tabulated per object
/// triple as enumeration indices, which turns the triple check into table
/// lookups.
inline void category_suite(const PresentedCategory& base, const DistC& dist, const Composer& comp,
                           const std::vector<Obj>& objs, const SuiteConfig& config, Report& report) {
  const WitnessWriter w{&base};
  auto& left = report.add("category", "left-unit");
  auto& right = report.add("category", "right-unit");
  auto& closed = report.add("category", "composition-closed");
  const std::size_t n = objs.size();
  std::vector<ObjPtr> ptrs;
  for (const auto& x : objs) ptrs.push_back(DistC::share(x));

  std::vector<std::size_t> counts(n * n);
  std::size_t triples = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) counts[a * n + b] = dist.hom_count(objs[a], objs[b]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const auto ab_bc = ::distcat::detail::sat_mul(counts[a * n + b], counts[b * n + c]);
        for (std::size_t d = 0; d < n; ++d)
          triples = ::distcat::detail::sat_add(triples, ::distcat::detail::sat_mul(ab_bc, counts[c * n + d]));
      }
  const bool exhaustive = triples <= config.exhaustive_limit;
  auto& assoc = report.add("category", "associativity", exhaustive ? "exhaustive" : "sampled");

  std::vector<detail::HomIndex> homs(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (counts[a * n + b] > config.budget) {
        left.skipped += 1;
        continue;
      }
      homs[a * n + b] = detail::HomIndex(dist, ptrs[a], ptrs[b]);
      for (std::size_t k = 0; k < homs[a * n + b].size(); ++k) {
        const auto& f = homs[a * n + b].homs()[k];
        ++left.instances;
        ++right.instances;
        if (!check_left_unit(comp, dist, f)) left.fail(w.instance("left-unit", {objs[a], objs[b]}, {k}));
        if (!check_right_unit(comp, dist, f)) right.fail(w.instance("right-unit", {objs[a], objs[b]}, {k}));
      }
    }
  right.skipped = left.skipped;

  if (!exhaustive) {
    std::mt19937_64 rng(config.seed);
    for (std::size_t s = 0; s < config.samples * 10; ++s) {
      const std::size_t a = detail::pick(rng, n), b = detail::pick(rng, n), c = detail::pick(rng, n),
                        d = detail::pick(rng, n);
      const auto &hab = homs[a * n + b], &hbc = homs[b * n + c], &hcd = homs[c * n + d];
      if (hab.size() == 0 || hbc.size() == 0 || hcd.size() == 0) continue;
      const std::size_t i = detail::pick(rng, hab.size()), j = detail::pick(rng, hbc.size()),
                        k = detail::pick(rng, hcd.size());
      ++assoc.instances;
      if (!check_associativity(comp, hab.homs()[i], hbc.homs()[j], hcd.homs()[k]))
        assoc.fail(w.instance("associativity", {objs[a], objs[b], objs[c], objs[d]}, {i, j, k}));
    }
    return;
  }

  // table[(a*n + b)*n + c][f * |hom(b,c)| + g] = index of g . f in hom(a, c).
  constexpr std::uint32_t kMissing = UINT32_MAX;
  std::vector<std::vector<std::uint32_t>> table(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const auto &hab = homs[a * n + b], &hbc = homs[b * n + c], &hac = homs[a * n + c];
        auto& t = table[(a * n + b) * n + c];
        t.assign(hab.size() * hbc.size(), kMissing);
        for (std::size_t f = 0; f < hab.size(); ++f)
          for (std::size_t g = 0; g < hbc.size(); ++g) {
            ++closed.instances;
            const auto idx = hac.find(comp(hbc.homs()[g], hab.homs()[f]));
            if (idx)
              t[f * hbc.size() + g] = *idx;
            else
              closed.fail(w.instance("composition-closed", {objs[a], objs[b], objs[c]}, {f, g}));
          }
      }
  if (!closed.passed()) return;

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          const std::size_t nab = homs[a * n + b].size(), nbc = homs[b * n + c].size(),
                            ncd = homs[c * n + d].size(), nbd = homs[b * n + d].size();
          if (nab == 0 || nbc == 0 || ncd == 0) continue;
          const auto& abc = table[(a * n + b) * n + c];
          const auto& acd = table[(a * n + c) * n + d];
          const auto& bcd = table[(b * n + c) * n + d];
          const auto& abd = table[(a * n + b) * n + d];
          for (std::size_t f = 0; f < nab; ++f)
            for (std::size_t g = 0; g < nbc; ++g) {
              const std::uint32_t* left_row = &acd[abc[f * nbc + g] * ncd];  // h . (g . f)
              const std::uint32_t* hg_row = &bcd[g * ncd];                   // h . g
              const std::uint32_t* right_row = &abd[f * nbd];                // (h . g) . f
              std::uint32_t differ = 0;
              for (std::size_t h = 0; h < ncd; ++h) differ |= left_row[h] ^ right_row[hg_row[h]];
              assoc.instances += ncd;
              if (differ == 0 || !assoc.passed()) continue;
              for (std::size_t h = 0; h < ncd; ++h)
                if (left_row[h] != right_row[hg_row[h]]) {
                  assoc.fail(w.instance("associativity", {objs[a], objs[b], objs[c], objs[d]}, {f, g, h}));
                  break;
                }
            }
        }
}

/// verify_universal for Dist products and coproducts of every diagram of
/// length <= 2 over the objects, against every cone with an apex among the
/// objects; and the same for Fam coproducts over the base and Fam products
/// over FinSet with sets of size <= 2.
inline void universal_suite(const PresentedCategory& base, const DistC& dist,
                            const std::vector<Obj>& objs, const SuiteConfig& config, Report& report) {
  const WitnessWriter w{&base};
  auto run = [&](auto& cat, auto& prop, const auto& diagrams, const auto& apexes,
                 auto universal_of, auto key, auto witness_of) {
    for (const auto& diagram : diagrams) {
      const auto cone = universal_of(diagram);
      for (const auto& apex : apexes) {
        Budget budget(config.budget);
        try {
          const auto check = verify_universal_at(cat, cone, std::span(diagram), apex, key, budget);
          prop.instances += check.cones;
          if (check.failing) prop.fail(witness_of(diagram, *check.failing));
        } catch (const EnumerationBudgetExceeded&) {
          ++prop.skipped;
        }
      }
    }
  };
  auto fam_key = [](const auto& m) {
    std::string k;
    for (const auto& [j, c] : m.table) {
      k += std::to_string(j);
      k += '>';
      if constexpr (requires { c.value; })
        k += std::to_string(c.value);
      else
        for (std::size_t v : c.values) k += std::to_string(v) + ',';
      k += ';';
    }
    return k;
  };

  std::vector<std::vector<Obj>> diagrams{{}};
  for (const auto& x : objs) diagrams.push_back({x});
  for (const auto& x : objs)
    for (const auto& y : objs) diagrams.push_back({x, y});
  if (objs.empty()) diagrams.clear();

  auto dist_witness = [&](const std::string& kind) {
    return [&, kind](const std::vector<Obj>& diagram, const ConeOf<DistC>& cone) {
      json wit;
      wit["kind"] = kind;
      wit["base"] = io::category_to_json(base);
      wit["diagram"] = json::array();
      for (const auto& x : diagram) wit["diagram"].push_back(w.object(x));
      wit["apex"] = w.object(cone.apex);
      wit["legs"] = json::array();
      for (const auto& leg : cone.legs) wit["legs"].push_back(w.morphism(leg));
      return wit;
    };
  };
  auto& dprod = report.add("universal", "dist-product");
  run(dist, dprod, diagrams, objs,
      [&](const std::vector<Obj>& d) {
        const auto c = dist.product(std::span<const Obj>(d));
        return ConeOf<DistC>{c.object, c.projections, ConeDirection::limit};
      },
      detail::table_key, dist_witness("dist-product"));
  auto& dcoprod = report.add("universal", "dist-coproduct");
  run(dist, dcoprod, diagrams, objs,
      [&](const std::vector<Obj>& d) {
        const auto c = dist.coproduct(std::span<const Obj>(d));
        return ConeOf<DistC>{c.object, c.injections, ConeDirection::colimit};
      },
      detail::table_key, dist_witness("dist-coproduct"));

  // Fam over the base: families of up to max_inner base objects, up to order.
  const Fam<PresentedCategory> fam(base);
  using FamObj = Fam<PresentedCategory>::Object;
  std::vector<FamObj> fobjs;
  if (!objs.empty()) {
    for (const auto& shape : generate_dist_objects<PresentedCategory>(base.objects(), {1, config.caps.max_inner}, true)) {
      if (shape.shape_count() == 0) {
        fobjs.push_back(FamObj{});
        continue;
      }
      fobjs.push_back(FamObj{shape.inner[0], shape.entries[0]});
    }
  }
  std::vector<std::vector<FamObj>> fdiagrams{{}};
  for (const auto& x : fobjs) fdiagrams.push_back({x});
  for (const auto& x : fobjs)
    for (const auto& y : fobjs) fdiagrams.push_back({x, y});
  if (fobjs.empty()) fdiagrams.clear();
  auto& fcoprod = report.add("universal", "fam-coproduct");
  run(fam, fcoprod, fdiagrams, fobjs,
      [&](const std::vector<FamObj>& d) {
        auto [sum, inj] = fam.coproduct(std::span<const FamObj>(d));
        return ConeOf<Fam<PresentedCategory>>{sum, inj, ConeDirection::colimit};
      },
      fam_key, [&](const std::vector<FamObj>& d, const ConeOf<Fam<PresentedCategory>>& cone) {
        json wit;
        wit["kind"] = "fam-coproduct";
        wit["base"] = io::category_to_json(base);
        wit["diagram"] = json::array();
        for (const auto& x : d) wit["diagram"].push_back(io::fam_object_to_json(base, x));
        wit["apex"] = io::fam_object_to_json(base, cone.apex);
        wit["legs"] = json::array();
        for (const auto& leg : cone.legs) wit["legs"].push_back(io::fam_morphism_to_json(base, leg));
        return wit;
      });

  // Fam over FinSet: families of at most two sets of size at most two.
  const FinSetModel finset(2, config.budget);
  const Fam<FinSetModel> fam_set(finset);
  using SetFam = Fam<FinSetModel>::Object;
  std::vector<SetFam> sobjs;
  if (!objs.empty()) {
    for (std::size_t len = 0; len <= 2; ++len) {
      const std::vector<std::size_t> radices(len, 3);
      for_each_tuple(std::span<const std::size_t>(radices), [&](std::span<const std::size_t> d) {
        if (!std::is_sorted(d.begin(), d.end())) return;
        sobjs.push_back(SetFam{numbered_labels(len), std::vector<std::size_t>(d.begin(), d.end())});
      });
    }
  }
  std::vector<std::vector<SetFam>> sdiagrams{{}};
  for (const auto& x : sobjs) sdiagrams.push_back({x});
  for (const auto& x : sobjs)
    for (const auto& y : sobjs) sdiagrams.push_back({x, y});
  if (sobjs.empty()) sdiagrams.clear();
  const auto hooks = product_hooks(finset);
  auto& fprod = report.add("universal", "fam-product");
  run(fam_set, fprod, sdiagrams, sobjs,
      [&](const std::vector<SetFam>& d) {
        auto [prod, proj] = fam_set.product(std::span<const SetFam>(d), hooks);
        return ConeOf<Fam<FinSetModel>>{prod, proj, ConeDirection::limit};
      },
      fam_key, [&](const std::vector<SetFam>& d, const ConeOf<Fam<FinSetModel>>& cone) {
        auto fam_json = [](const SetFam& x) {
          json j;
          j["index"] = x.index;
          j["entries"] = json::object();
          for (std::size_t k = 0; k < x.size(); ++k) j["entries"][x.index[k]] = x.entries[k];
          return j;
        };
        json wit;
        wit["kind"] = "fam-product";
        wit["diagram"] = json::array();
        for (const auto& x : d) wit["diagram"].push_back(fam_json(x));
        wit["apex"] = fam_json(cone.apex);
        wit["legs"] = json::array();
        for (const auto& leg : cone.legs) {
          json l = json::array();
          for (const auto& [j, f] : leg.table) l.push_back({{"target", j}, {"map", f.values}});
          wit["legs"].push_back(std::move(l));
        }
        return wit;
      });
}

/// Cartesian closure on every triple (X, A, B) of objects: the hom-sets
/// hom(X x A, B) and hom(X, A => B) have equal size; where they are small
/// enough, curry is checked to be a bijection elementwise with uncurry as
/// its inverse, together with the eval triangle and naturality in X on
/// seeded samples. Closed and inductive exponentials are compared on every
/// pair (A, B).
inline void exponential_suite(const PresentedCategory& base, const DistC& dist,
                              const std::vector<Obj>& objs, const SuiteConfig& config, Report& report) {
  const WitnessWriter w{&base};
  auto& count = report.add("exponential", "adjunction-count");
  auto& bijection = report.add("exponential", "curry-bijection");
  auto& round1 = report.add("exponential", "curry-roundtrip");
  auto& round2 = report.add("exponential", "uncurry-roundtrip");
  auto& triangle = report.add("exponential", "eval-triangle", "sampled");
  auto& natural = report.add("exponential", "curry-naturality", "sampled");
  auto& agree = report.add("exponential", "closed-vs-inductive");
  auto& agree_general = report.add("exponential", "closed-vs-inductive-general");
  std::mt19937_64 rng(config.seed);

  for (std::size_t ia = 0; ia < objs.size(); ++ia) {
    for (std::size_t ib = 0; ib < objs.size(); ++ib) {
      const auto& a = objs[ia];
      const auto& b = objs[ib];
      std::optional<Exponential<PresentedCategory>> e;
      try {
        e.emplace(dist, a, b);
      } catch (const EnumerationBudgetExceeded&) {
        count.skipped += objs.size();
        continue;
      }
      auto& agreement = a.shape_count() <= 1 ? agree : agree_general;
      try {
        ++agreement.instances;
        if (!check_closed_vs_inductive(dist, a, b, config.budget))
          agreement.fail(w.instance(a.shape_count() <= 1 ? "closed-vs-inductive" : "closed-vs-inductive-general", {a, b}, {}));
      } catch (const EnumerationBudgetExceeded&) {
        --agreement.instances;
        ++agreement.skipped;
      }
      for (std::size_t ix = 0; ix < objs.size(); ++ix) {
        const auto& x = objs[ix];
        const auto xa = DistC::share(e->product_with(x));
        const auto n1 = dist.hom_count(*xa, b);
        const auto n2 = dist.hom_count(x, e->object());
        ++count.instances;
        if (n1 != n2) {
          count.fail(w.instance("adjunction-count", {x, a, b}, {}));
          continue;
        }
        if (n1 > config.instance_limit) {
          ++bijection.skipped;
          continue;
        }
        const auto left = dist.hom(xa, DistC::share(b));
        const detail::HomIndex right(dist, DistC::share(x), e->object_ptr());
        ++bijection.instances;
        std::vector<char> hit(right.size(), 0);
        for (std::size_t k = 0; k < left.size(); ++k) {
          const auto& h = left[k];
          const auto c = e->curry(x, h);
          const auto idx = right.find(c);
          if (!idx || hit[*idx]) {
            bijection.fail(w.instance("curry-bijection", {x, a, b}, {k}));
          } else {
            hit[*idx] = 1;
          }
          ++round1.instances;
          if (!(e->uncurry(c) == h)) round1.fail(w.instance("curry-roundtrip", {x, a, b}, {k}));
        }
        for (std::size_t k = 0; k < right.size(); ++k) {
          ++round2.instances;
          if (!check_uncurry_roundtrip(*e, x, right.homs()[k]))
            round2.fail(w.instance("uncurry-roundtrip", {x, a, b}, {k}));
        }
        if (left.empty()) continue;
        const std::size_t k = detail::pick(rng, left.size());
        ++triangle.instances;
        if (!check_eval_triangle(dist, *e, x, left[k]))
          triangle.fail(w.instance("eval-triangle", {x, a, b}, {k}));
        const std::size_t ixp = detail::pick(rng, objs.size());
        const auto& xp = objs[ixp];
        if (dist.hom_count(xp, x) == 0 || dist.hom_count(xp, x) > config.instance_limit) continue;
        const auto us = dist.hom(xp, x);
        const std::size_t u = detail::pick(rng, us.size());
        ++natural.instances;
        if (!check_curry_naturality(dist, *e, x, left[k], us[u]))
          natural.fail(w.instance("curry-naturality", {x, a, b, xp}, {k, u}));
      }
    }
  }
}

/// lambda preserves identities and composition; the canonical distributor
/// is invertible in FinSet (with the elementwise inverse two-sided) and in
/// Dist over the base.
inline void distlaw_suite(const PresentedCategory& base, const DistC& dist,
                          const std::vector<Obj>& objs, const SuiteConfig& config, Report& report) {
  const WitnessWriter w{&base};
  const ProdOfSums<PresentedCategory> pos(base, config.budget);
  auto& ident = report.add("distlaw", "lambda-identity");
  for (const auto& x : objs) {
    ++ident.instances;
    if (!check_lambda_identity(dist, pos, x)) ident.fail(w.instance("lambda-identity", {x}, {}));
  }

  const std::size_t n = objs.size();
  std::size_t pairs = 0;
  std::vector<std::size_t> counts(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) counts[a * n + b] = pos.hom_count(objs[a], objs[b]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        pairs = ::distcat::detail::sat_add(pairs, ::distcat::detail::sat_mul(counts[a * n + b], counts[b * n + c]));
  const bool exhaustive = pairs <= config.exhaustive_limit / 1000;
  auto& comp = report.add("distlaw", "lambda-composition", exhaustive ? "exhaustive" : "sampled");
  std::vector<std::vector<ProdOfSums<PresentedCategory>::Morphism>> homs(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (counts[a * n + b] <= config.budget) homs[a * n + b] = pos.hom(objs[a], objs[b]);
  auto check_pair = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t i, std::size_t j) {
    ++comp.instances;
    if (!check_lambda_composition(dist, pos, homs[a * n + b][i], homs[b * n + c][j]))
      comp.fail(w.instance("lambda-composition", {objs[a], objs[b], objs[c]}, {i, j}));
  };
  if (exhaustive) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t i = 0; i < homs[a * n + b].size(); ++i)
            for (std::size_t j = 0; j < homs[b * n + c].size(); ++j) check_pair(a, b, c, i, j);
  } else {
    std::mt19937_64 rng(config.seed);
    for (std::size_t s = 0; s < config.samples * 10; ++s) {
      const std::size_t a = detail::pick(rng, n), b = detail::pick(rng, n), c = detail::pick(rng, n);
      if (homs[a * n + b].empty() || homs[b * n + c].empty()) continue;
      check_pair(a, b, c, detail::pick(rng, homs[a * n + b].size()), detail::pick(rng, homs[b * n + c].size()));
    }
  }

  std::mt19937_64 rng(config.seed);
  auto& finset = report.add("distlaw", "distributor-finset", "sampled");
  const std::size_t finset_families = objs.empty() ? 0 : config.samples / 2;
  for (std::size_t s = 0; s < finset_families; ++s) {
    DistributorFamily<std::size_t> fam;
    const std::size_t nj = detail::pick(rng, 4);
    for (std::size_t j = 0; j < nj; ++j) {
      const std::size_t ni = detail::pick(rng, 4);
      fam.outer.push_back(std::to_string(j));
      fam.inner.push_back(numbered_labels(ni));
      std::vector<std::size_t> column;
      for (std::size_t i = 0; i < ni; ++i) column.push_back(detail::pick(rng, 3));
      fam.entries.push_back(std::move(column));
    }
    ++finset.instances;
    if (!check_distributor_finset(fam, config.budget)) {
      auto wit = io::family_to_json(fam, [](std::size_t c) { return c; });
      wit["model"] = "finset";
      finset.fail(std::move(wit));
    }
  }

  auto& in_dist = report.add("distlaw", "distributor-dist", "sampled");
  const std::size_t dist_families = objs.empty() ? 0 : config.samples / 10;
  const DistModel<PresentedCategory> model(base, config.caps, base.objects(), config.budget);
  for (std::size_t s = 0; s < dist_families; ++s) {
    DistributorFamily<Obj> fam;
    const std::size_t nj = detail::pick(rng, 3);
    for (std::size_t j = 0; j < nj; ++j) {
      const std::size_t ni = detail::pick(rng, 3);
      fam.outer.push_back(std::to_string(j));
      fam.inner.push_back(numbered_labels(ni));
      std::vector<Obj> column;
      for (std::size_t i = 0; i < ni; ++i) column.push_back(objs[detail::pick(rng, objs.size())]);
      fam.entries.push_back(std::move(column));
    }
    try {
      ++in_dist.instances;
      if (!check_distributor_iso(model, fam, config.budget)) {
        auto wit = io::family_to_json(fam, [&](const Obj& x) { return w.object(x); });
        wit["model"] = "dist";
        wit["base"] = io::category_to_json(base);
        in_dist.fail(std::move(wit));
      }
    } catch (const EnumerationBudgetExceeded&) {
      --in_dist.instances;
      ++in_dist.skipped;
    }
  }
}

/// Over the terminal base: Dist hom counts agree with the container formula
/// and with the size of the enumeration.
inline void container_suite(const PresentedCategory& base, const DistC& dist,
                            const std::vector<Obj>& objs, const SuiteConfig& config, Report& report) {
  const WitnessWriter w{&base};
  auto& prop = report.add("containers", "hom-count");
  for (const auto& x : objs)
    for (const auto& y : objs) {
      ++prop.instances;
      const auto formula = container_hom_count(x, y);
      bool ok = dist.hom_count(x, y) == formula;
      if (ok && formula <= config.instance_limit) ok = dist.hom(x, y).size() == formula;
      if (!ok) prop.fail(w.instance("hom-count", {x, y}, {}));
    }
}

inline bool is_terminal_base(const PresentedCategory& base) {
  return base.objects().size() == 1 && base.morphism_decls().size() == 1;
}

/// Runs the selected suites over Dist(base).
inline Report run_laws(const PresentedCategory& base, const SuiteConfig& config) {
  const auto report_gap = validate_category(base);
  Report report;
  if (!report_gap.passed()) {
    auto& r = report.add("base", "category-laws");
    json wit;
    wit["kind"] = "category";
    wit["category"] = io::category_to_json(base);
    wit["violations"] = json::array();
    for (const auto& v : report_gap.violations) wit["violations"].push_back({{"law", v.law}, {"witness", v.witness}});
    r.fail(std::move(wit));
    return report;
  }
  const DistC dist(base, config.budget);
  const Composer comp(dist, config.mutate);
  auto objs = suite_objects(base, config);
  SuiteConfig cfg = config;
  if (config.empty_caps()) cfg.samples = 0;
  if (cfg.selected("category")) category_suite(base, dist, comp, objs, cfg, report);
  if (cfg.selected("universal")) universal_suite(base, dist, objs, cfg, report);
  if (cfg.selected("exponential")) exponential_suite(base, dist, objs, cfg, report);
  if (cfg.selected("distlaw")) distlaw_suite(base, dist, objs, cfg, report);
  if (cfg.selected("containers") && is_terminal_base(base)) container_suite(base, dist, objs, cfg, report);
  return report;
}

// ---------------------------------------------------------------- replay

/// Re-checks one witness produced by a suite. Returns true when the
/// instance now passes. Throws MalformedInput for unknown kinds.
inline bool replay_witness(const io::json& wit, bool mutate, std::size_t budget = kDefaultBudget) {
  const std::string kind = io::detail::text(io::detail::field(wit, "kind"), "kind");
  if (kind == "category") return validate_category(io::category_from_json(io::detail::field(wit, "category"))).passed();
  if (kind == "fam-product") throw MalformedInput("fam-product witnesses are reported for inspection only");

  const auto base = io::category_from_json(io::detail::field(wit, "base"));
  const DistC dist(base, budget);
  const Composer comp(dist, mutate);

  if (kind == "dist-product" || kind == "dist-coproduct" || kind == "fam-coproduct") {
    const auto& diagram_json = io::detail::field(wit, "diagram");
    const bool limit = kind == "dist-product";
    Budget b(budget);
    if (kind == "fam-coproduct") {
      const Fam<PresentedCategory> fam(base);
      std::vector<Fam<PresentedCategory>::Object> diagram;
      for (const auto& d : diagram_json) diagram.push_back(io::fam_object_from_json(base, d));
      ConeOf<Fam<PresentedCategory>> cand{io::fam_object_from_json(base, io::detail::field(wit, "apex")), {}, ConeDirection::colimit};
      for (const auto& l : io::detail::field(wit, "legs")) cand.legs.push_back(io::fam_morphism_from_json(base, l));
      auto [sum, inj] = fam.coproduct(std::span<const Fam<PresentedCategory>::Object>(diagram));
      return count_mediators(fam, ConeOf<Fam<PresentedCategory>>{sum, inj, ConeDirection::colimit}, cand, b) == 1;
    }
    std::vector<Obj> diagram;
    for (const auto& d : diagram_json) diagram.push_back(io::dist_object_from_json(base, d));
    ConeOf<DistC> cand{io::dist_object_from_json(base, io::detail::field(wit, "apex")), {},
                       limit ? ConeDirection::limit : ConeDirection::colimit};
    for (const auto& l : io::detail::field(wit, "legs")) cand.legs.push_back(io::dist_morphism_from_json(base, l));
    if (limit) {
      const auto c = dist.product(std::span<const Obj>(diagram));
      return count_mediators(dist, ConeOf<DistC>{c.object, c.projections, ConeDirection::limit}, cand, b) == 1;
    }
    const auto c = dist.coproduct(std::span<const Obj>(diagram));
    return count_mediators(dist, ConeOf<DistC>{c.object, c.injections, ConeDirection::colimit}, cand, b) == 1;
  }

  std::vector<ObjPtr> objs;
  for (const auto& o : io::detail::field(wit, "objects")) objs.push_back(DistC::share(io::dist_object_from_json(base, o)));
  std::vector<std::size_t> idx;
  for (const auto& i : io::detail::field(wit, "indices")) idx.push_back(i.get<std::size_t>());
  auto need = [&](std::size_t nobj, std::size_t nidx) {
    if (objs.size() != nobj || idx.size() != nidx) throw MalformedInput("witness '" + kind + "' has the wrong arity");
  };
  auto nth = [&](const ObjPtr& x, const ObjPtr& y, std::size_t k) {
    const auto homs = dist.hom(x, y);
    if (k >= homs.size()) throw MalformedInput("witness index out of range");
    return homs[k];
  };

  if (kind == "left-unit" || kind == "right-unit") {
    need(2, 1);
    const auto f = nth(objs[0], objs[1], idx[0]);
    return kind == "left-unit" ? check_left_unit(comp, dist, f) : check_right_unit(comp, dist, f);
  }
  if (kind == "associativity") {
    need(4, 3);
    return check_associativity(comp, nth(objs[0], objs[1], idx[0]), nth(objs[1], objs[2], idx[1]),
                               nth(objs[2], objs[3], idx[2]));
  }
  if (kind == "composition-closed") {
    need(3, 2);
    const auto c = comp(nth(objs[1], objs[2], idx[1]), nth(objs[0], objs[1], idx[0]));
    return detail::HomIndex(dist, objs[0], objs[2]).find(c).has_value();
  }
  if (kind == "closed-vs-inductive" || kind == "closed-vs-inductive-general") {
    need(2, 0);
    return check_closed_vs_inductive(dist, *objs[0], *objs[1], budget);
  }
  if (kind == "hom-count") {
    need(2, 0);
    const auto formula = container_hom_count(*objs[0], *objs[1]);
    return dist.hom_count(*objs[0], *objs[1]) == formula && dist.hom(objs[0], objs[1]).size() == formula;
  }
  const ProdOfSums<PresentedCategory> pos(base, budget);
  if (kind == "lambda-identity") {
    need(1, 0);
    return check_lambda_identity(dist, pos, *objs[0]);
  }
  if (kind == "lambda-composition") {
    need(3, 2);
    const auto h1 = pos.hom(*objs[0], *objs[1]);
    const auto h2 = pos.hom(*objs[1], *objs[2]);
    if (idx[0] >= h1.size() || idx[1] >= h2.size()) throw MalformedInput("witness index out of range");
    return check_lambda_composition(dist, pos, h1[idx[0]], h2[idx[1]]);
  }

  if (objs.size() < 3) throw MalformedInput("witness '" + kind + "' has the wrong arity");
  const Exponential<PresentedCategory> e(dist, *objs[1], *objs[2]);
  const auto& x = *objs[0];
  const auto xa = DistC::share(e.product_with(x));
  if (kind == "adjunction-count") {
    need(3, 0);
    return dist.hom_count(*xa, *objs[2]) == dist.hom_count(x, e.object());
  }
  if (kind == "curry-roundtrip" || kind == "eval-triangle" || kind == "curry-bijection") {
    need(3, 1);
    const auto h = nth(xa, objs[2], idx[0]);
    if (kind == "curry-roundtrip") return check_curry_roundtrip(e, x, h);
    if (kind == "eval-triangle") return check_eval_triangle(dist, e, x, h);
    const auto homs = dist.hom(xa, objs[2]);
    const auto c = e.curry(x, h);
    if (!detail::HomIndex(dist, objs[0], e.object_ptr()).find(c)) return false;
    for (std::size_t k = 0; k < homs.size(); ++k)
      if (k != idx[0] && e.curry(x, homs[k]) == c) return false;
    return true;
  }
  if (kind == "uncurry-roundtrip") {
    need(3, 1);
    return check_uncurry_roundtrip(e, x, nth(objs[0], e.object_ptr(), idx[0]));
  }
  if (kind == "curry-naturality") {
    need(4, 2);
    return check_curry_naturality(dist, e, x, nth(xa, objs[2], idx[0]), nth(objs[3], objs[0], idx[1]));
  }
  throw MalformedInput("unknown witness kind '" + kind + "'");
}

}  // namespace distcat::suite
