// Command-line front end: validate, exp, laws, distributor.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <distcat/cli.hpp>

namespace {

std::optional<std::string> maybe(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace distcat;

  CLI::App app{"Finite computations in the free doubly-infinitary distributive category Dist(C)"};
  app.require_subcommand(1);
  int code = cli::kPass;

  cli::ValidateOptions vopt;
  auto* validate = app.add_subcommand("validate", "Check a category or lattice file, or replay a witness file");
  validate->add_option("file", vopt.path, "Category, lattice or witness file")->required();
  validate->add_option("--budget", vopt.budget, "Enumeration cap");
  validate->add_flag("--mutate", vopt.mutate, "Replay with the test-mode composition defect");

  cli::ExpOptions eopt;
  std::string exp_base;
  auto* exp = app.add_subcommand("exp", "Compute the exponential A => B");
  exp->add_option("--base", exp_base, "Base category file (default: the terminal category)");
  exp->add_option("a", eopt.a_path, "Dist object file for A")->required();
  exp->add_option("b", eopt.b_path, "Dist object file for B")->required();
  exp->add_option("--method", eopt.method, "closed, inductive or both")
      ->check(CLI::IsMember({"closed", "inductive", "both"}));
  exp->add_option("--budget", eopt.budget, "Enumeration cap");

  cli::LawsOptions lopt;
  std::string laws_base;
  std::string witness_dir;
  auto* laws = app.add_subcommand("laws", "Run the law suites over Dist(base)");
  laws->add_option("--base", laws_base, "Base category file (default: the terminal category)");
  laws->add_option("--max-outer", lopt.config.caps.max_outer, "Largest number of shapes");
  laws->add_option("--max-inner", lopt.config.caps.max_inner, "Largest number of positions per shape");
  laws->add_option("--budget", lopt.config.budget, "Enumeration cap");
  laws->add_option("--seed", lopt.config.seed, "Seed for the sampled properties");
  laws->add_option("--samples", lopt.config.samples, "Sample size for the sampled properties");
  laws->add_option("--instance-limit", lopt.config.instance_limit,
                   "Largest hom-set checked elementwise");
  laws->add_option("--suite", lopt.config.suites,
                   "Suites to run: category, universal, exponential, distlaw, containers")
      ->check(CLI::IsMember({"category", "universal", "exponential", "distlaw", "containers"}));
  laws->add_option("--witness-dir", witness_dir, "Directory for replayable witness files");
  laws->add_flag("--mutate", lopt.config.mutate, "Test mode: inject a defect into Dist composition");

  cli::DistributorOptions dopt;
  std::string model;
  auto* distributor = app.add_subcommand("distributor", "Check the canonical distributor of a family");
  distributor->add_option("--model", model, "finset, lattice:<file> or dist:<base file>");
  distributor->add_option("family", dopt.family_path, "Distributor family file")->required();
  distributor->add_option("--budget", dopt.budget, "Enumeration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kMalformedInput;
  }

  if (*validate) code = cli::cmd_validate(vopt, std::cout, std::cerr);
  if (*exp) {
    eopt.base = maybe(exp_base);
    code = cli::cmd_exp(eopt, std::cout, std::cerr);
  }
  if (*laws) {
    lopt.base = maybe(laws_base);
    lopt.witness_dir = maybe(witness_dir);
    code = cli::cmd_laws(lopt, std::cout, std::cerr);
  }
  if (*distributor) {
    dopt.model = maybe(model);
    code = cli::cmd_distributor(dopt, std::cout, std::cerr);
  }
  return code;
}
