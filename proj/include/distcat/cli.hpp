#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "category.hpp"
#include "dist.hpp"
#include "distlaw.hpp"
#include "error.hpp"
#include "exponential.hpp"
#include "finset.hpp"
#include "io.hpp"
#include "iso.hpp"
#include "lattice.hpp"
#include "models.hpp"
#include "suite.hpp"

namespace distcat::cli {

enum ExitCode : int { kPass = 0, kPropertyFailure = 1, kMalformedInput = 2, kBudgetExceeded = 3 };

using json = nlohmann::ordered_json;

/// A report line in the same field order as the law suites.
inline json report_line(const std::string& suite, const std::string& property, std::size_t instances,
                        bool passed, json witness = nullptr) {
  json line;
  line["suite"] = suite;
  line["property"] = property;
  line["instances"] = instances;
  line["skipped"] = 0;
  line["mode"] = "exhaustive";
  line["status"] = passed ? "pass" : "fail";
  line["witness"] = passed ? json(nullptr) : std::move(witness);
  return line;
}

/// Runs `body`, mapping library errors to exit codes and a message on err.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const EnumerationBudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMalformedInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kMalformedInput;
  }
}

inline PresentedCategory load_base(const std::optional<std::string>& path) {
  return path ? io::load_category(*path) : categories::terminal();
}

// ---------------------------------------------------------------- validate

struct ValidateOptions {
  std::string path;
  std::size_t budget = kDefaultBudget;
  bool mutate = false;
};

/// Validates a category file, a lattice file, or replays a witness file.
inline int cmd_validate(const ValidateOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const auto j = io::read_json_file(opt.path);
    if (j.is_object() && j.contains("kind")) {
      const auto kind = io::detail::text(j.at("kind"), "kind");
      const bool ok = suite::replay_witness(j, opt.mutate, opt.budget);
      out << report_line("replay", kind, 1, ok, j).dump() << '\n';
      return ok ? kPass : kPropertyFailure;
    }
    if (j.is_object() && j.contains("J")) {
      err << "error: '" << opt.path << "' is a distributor family; use the distributor command\n";
      return kMalformedInput;
    }
    if (j.is_object() && j.contains("elements")) {
      try {
        const auto lattice = io::lattice_from_json(j);
        out << report_line("validate", "lattice", lattice.size(), true).dump() << '\n';
        return kPass;
      } catch (const NotALattice& e) {
        out << report_line("validate", "lattice", 0, false, json{{"reason", e.what()}}).dump() << '\n';
        return kPropertyFailure;
      }
    }
    const auto cat = io::category_from_json(j);
    const auto laws = validate_category(cat);
    json violations = json::array();
    for (const auto& v : laws.violations) violations.push_back({{"law", v.law}, {"witness", v.witness}});
    out << report_line("validate", "category-laws", cat.morphism_decls().size(), laws.passed(),
                       json{{"violations", violations}})
               .dump()
        << '\n';
    return laws.passed() ? kPass : kPropertyFailure;
  });
}

// ---------------------------------------------------------------- exp

struct ExpOptions {
  std::optional<std::string> base;
  std::string a_path;
  std::string b_path;
  std::string method = "both";
  std::size_t budget = kDefaultBudget;
};

inline json exponential_summary(const PresentedCategory& base, const std::string& method,
                                const DistObject<ObjectId>& e) {
  std::map<std::size_t, std::size_t> profile;
  for (std::size_t s = 0; s < e.shape_count(); ++s) ++profile[e.position_count(s)];
  json p = json::object();
  for (const auto& [positions, shapes] : profile) p[std::to_string(positions)] = shapes;
  json line;
  line["method"] = method;
  line["shapes"] = e.shape_count();
  line["profile"] = std::move(p);
  line["object"] = io::dist_object_to_json(base, e);
  return line;
}

/// Computes A => B by the closed formula, the inductive one, or both; with
/// both, reports whether iso_check finds an isomorphism between them.
inline int cmd_exp(const ExpOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (opt.method != "closed" && opt.method != "inductive" && opt.method != "both")
      throw MalformedInput("method must be closed, inductive or both");
    const auto base = load_base(opt.base);
    const auto laws = validate_category(base);
    if (!laws.passed()) throw MalformedInput("base category fails its laws; run validate");
    const Dist<PresentedCategory> dist(base, opt.budget);
    const auto a = io::load_dist_object(base, opt.a_path);
    const auto b = io::load_dist_object(base, opt.b_path);
    std::optional<DistObject<ObjectId>> closed;
    std::optional<DistObject<ObjectId>> inductive;
    if (opt.method != "inductive") {
      closed = dist_exponential(dist, a, b);
      out << exponential_summary(base, "closed", *closed).dump() << '\n';
    }
    if (opt.method != "closed") {
      const bool general = a.shape_count() > 1;
      inductive = dist_exponential_inductive_general(dist, a, b);
      out << exponential_summary(base, general ? "inductive-general" : "inductive", *inductive).dump()
          << '\n';
    }
    if (closed && inductive) {
      const auto iso = iso_check(dist, *closed, *inductive, opt.budget);
      json witness = nullptr;
      if (!iso) witness = json{{"a", io::dist_object_to_json(base, a)}, {"b", io::dist_object_to_json(base, b)}};
      out << report_line("exp", "closed-vs-inductive", 1, iso.has_value(), witness).dump() << '\n';
      return iso ? kPass : kPropertyFailure;
    }
    return kPass;
  });
}

// ---------------------------------------------------------------- laws

struct LawsOptions {
  std::optional<std::string> base;
  suite::SuiteConfig config;
  std::optional<std::string> witness_dir;
};

/// Runs the law suites; the report goes to out, a summary with wall time to
/// err. Failing properties also leave replayable witness files when a
/// witness directory is given.
inline int cmd_laws(const LawsOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const auto base = load_base(opt.base);
    const auto start = std::chrono::steady_clock::now();
    const auto report = suite::run_laws(base, opt.config);
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
    out << report.jsonl();
    if (opt.config.empty_caps()) err << "warning: 0 instances (a size cap is 0)\n";
    err << report.summary() << "wall time " << wall.count() << " s\n";
    if (opt.witness_dir) {
      std::filesystem::create_directories(*opt.witness_dir);
      for (const auto& r : report.results()) {
        if (r.passed()) continue;
        const auto path = std::filesystem::path(*opt.witness_dir) / (r.suite + "-" + r.property + ".json");
        std::ofstream(path) << r.witness->dump(2) << '\n';
        err << "witness written to " << path.string() << '\n';
      }
    }
    return report.passed() ? kPass : kPropertyFailure;
  });
}

// ---------------------------------------------------------------- distributor

struct DistributorOptions {
  std::optional<std::string> model;  // finset | lattice:<file> | dist:<file>
  std::string family_path;
  std::size_t budget = kDefaultBudget;
};

/// Builds the canonical distributor for the family and reports whether it
/// is invertible; for FinSet the elementwise inverse is also checked. The
/// model defaults to the family file's own "model" (and "base") fields.
inline int cmd_distributor(const DistributorOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const auto j = io::read_json_file(opt.family_path);
    std::string spec;
    if (opt.model) {
      spec = *opt.model;
    } else if (j.is_object() && j.contains("model")) {
      spec = io::detail::text(j.at("model"), "model");
    } else {
      throw MalformedInput("no model given (use --model finset|lattice:<file>|dist:<file>)");
    }
    auto emit = [&](const std::string& property, bool ok, json witness) {
      out << report_line("distributor", property, 1, ok, std::move(witness)).dump() << '\n';
    };
    if (spec == "finset") {
      const auto fam = io::family_from_json<std::size_t>(j, [](const io::json& e) { return io::finset_spec(e); });
      const FinSetModel model(3, opt.budget);
      const auto d = canonical_distributor(model, fam);
      const bool iso = find_inverse(model, d.morphism, opt.budget).has_value();
      const auto inv = distributor_inverse_finset(fam);
      const bool explicit_ok = model.compose(inv, d.morphism) == model.identity(d.source) &&
                               model.compose(d.morphism, inv) == model.identity(d.target);
      const json witness{{"source", d.source}, {"target", d.target}, {"family", j}};
      emit("invertible", iso, witness);
      emit("explicit-inverse", explicit_ok, witness);
      return iso && explicit_ok ? kPass : kPropertyFailure;
    }
    if (spec.rfind("lattice:", 0) == 0) {
      const auto lattice = io::lattice_from_json(io::read_json_file(spec.substr(8)));
      const LatticeModel model(lattice);
      const auto fam = io::family_from_json<std::size_t>(j, [&](const io::json& e) {
        try {
          return lattice.index(io::detail::text(e, "lattice element"));
        } catch (const UnknownObject& u) {
          throw MalformedInput(u.what());
        }
      });
      const auto d = canonical_distributor(model, fam);
      const bool iso = find_inverse(model, d.morphism, opt.budget).has_value();
      emit("invertible", iso,
           json{{"source", lattice.name(d.source)}, {"target", lattice.name(d.target)}, {"family", j}});
      return iso ? kPass : kPropertyFailure;
    }
    if (spec == "dist" || spec.rfind("dist:", 0) == 0) {
      PresentedCategory base = spec == "dist"
                                   ? (j.contains("base") ? io::category_from_json(j.at("base")) : categories::terminal())
                                   : io::load_category(spec.substr(5));
      const DistModel<PresentedCategory> model(base, {2, 2}, base.objects(), opt.budget);
      const auto fam = io::family_from_json<DistObject<ObjectId>>(
          j, [&](const io::json& e) { return io::dist_object_from_json(base, e); });
      const auto d = canonical_distributor(model, fam);
      const bool iso = find_inverse(model, d.morphism, opt.budget).has_value();
      emit("invertible", iso,
           json{{"source", io::dist_object_to_json(base, d.source)},
                {"target", io::dist_object_to_json(base, d.target)},
                {"family", j}});
      return iso ? kPass : kPropertyFailure;
    }
    throw MalformedInput("unknown model '" + spec + "'");
  });
}

}  // namespace distcat::cli
