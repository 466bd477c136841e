// diffcoh: command-line front end over the fixture commands.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "diffcoh/commands.hpp"

namespace {

// Exit codes: 0 every check passed, 1 some check failed, 2 usage, parse or
// budget error.
constexpr int exit_failed = 1;
constexpr int exit_error = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology of difference groups and difference Lie algebras"};
  app.require_subcommand(1);

  diffcoh::CommandOptions opts;
  std::string fixture;
  std::string format = "text";
  std::size_t budget = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("fixture", fixture, "fixture file (JSON)")->required();
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--seed", opts.seed, "seed for sampled checks");
    sub->add_flag("--timing", opts.timing, "append wall-clock seconds to the report");
  };
  auto with_budget = [&](CLI::App* sub) {
    sub->add_option("--budget", budget, "largest cochain space (or enumeration) allowed");
  };

  auto* check = app.add_subcommand("check", "validate every structure in a fixture");
  common(check);
  auto* cohomology = app.add_subcommand("cohomology", "dimension table of the three cohomologies");
  common(cohomology);
  with_budget(cohomology);
  cohomology->add_option("--max-degree", opts.max_degree, "highest degree")->check(CLI::Range(1, 8));
  auto* les = app.add_subcommand("les", "exactness of the long exact sequence");
  common(les);
  with_budget(les);
  les->add_option("--max-degree", opts.max_degree, "highest degree")->check(CLI::Range(1, 8));
  auto* classify = app.add_subcommand("classify", "count extensions or semidirect difference operators");
  common(classify);
  with_budget(classify);
  classify->add_option("--mode", opts.mode, "what to classify")->check(CLI::IsMember({"extensions", "semidirect-ops"}));
  auto* vanest = app.add_subcommand("vanest", "check that the van Est map is a cochain map");
  common(vanest);
  vanest->add_option("--degree", opts.degree, "cochain degree (1 or 2)")->check(CLI::Range(1, 2));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\nRun with --help for more information.\n";
    return exit_error;
  }
  if (budget > 0) opts.budget = budget;

  try {
    diffcoh::RunReport report;
    if (check->parsed()) report = diffcoh::cmd_check(fixture, opts);
    else if (cohomology->parsed()) report = diffcoh::cmd_cohomology(fixture, opts);
    else if (les->parsed()) report = diffcoh::cmd_les(fixture, opts);
    else if (classify->parsed()) report = diffcoh::cmd_classify(fixture, opts);
    else report = diffcoh::cmd_vanest(fixture, opts);
    if (format == "json") std::cout << report.json().dump(2) << "\n";
    else std::cout << report.text();
    return report.ok() ? 0 : exit_failed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
}
