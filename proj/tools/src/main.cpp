#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace attlab::tools;

int main(int argc, char** argv) {
  CLI::App app{"attlab: attractors of nonautonomous and multivalued systems"};
  app.require_subcommand(1);

  GlobalOptions g;
  std::uint64_t seed = 0;
  double tol = 0.0;
  auto* seed_opt = app.add_option("--seed", seed, "Seed for random initial-condition banks");
  auto* tol_opt = app.add_option("--tol", tol, "Override every schedule tolerance")->check(CLI::PositiveNumber);
  app.add_option("--config", g.config, "Config file, or a built-in scenario id");
  app.add_option("--out", g.out, "Output directory (default: the config's output_dir)");
  app.add_option("--jobs", g.jobs, "Maximum concurrent checks or runs")->check(CLI::PositiveNumber);
  app.add_flag("--no-cache", g.no_cache, "Recompute cached equilibria");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Write one trajectory CSV per branch");
  simulate->add_option("--t0", sim.t0, "Initial time");
  simulate->add_option("--t", sim.t, "Final time");
  simulate->add_option("--ic", sim.ic, "zero | const:a | sin:a[:k] | value:x | csv:path");
  simulate->add_option("--budget", sim.budget, "Branch budget for multivalued models")->check(CLI::PositiveNumber);
  simulate->add_option("--steps", sim.steps, "Number of output intervals")->check(CLI::PositiveNumber);

  AttractorArgs att;
  double depth = 0.0;
  auto* attractor = app.add_subcommand("attractor", "Write attractor sections as a set family");
  attractor->add_option("--kind", att.kind, "pullback | autonomous")
      ->check(CLI::IsMember({"pullback", "autonomous"}));
  attractor->add_option("--times", att.times, "Comma list or from:to:count");
  auto* depth_opt = attractor->add_option("--depth", depth, "Pullback depth of numerical sections")
                        ->check(CLI::PositiveNumber);

  std::string omega_kind = "limsup";
  auto* omega = app.add_subcommand("omega", "Compute a limit set");
  omega->add_option("kind", omega_kind, "forward | limsup | liminf | amin")
      ->check(CLI::IsMember({"forward", "limsup", "liminf", "amin"}));

  std::string check;
  auto* verify = app.add_subcommand("verify", "Run one check and write its report");
  verify->add_option("check", check, "Check id, or the name of a check in the config")->required();

  std::string example;
  auto* reproduce = app.add_subcommand("reproduce", "Run every check of a scenario");
  reproduce->add_option("example", example, "Built-in scenario id (same as --config ID)");

  auto* schema = app.add_subcommand("schema", "Print the config schema");
  auto* list = app.add_subcommand("list", "List built-in scenarios and checks");

  for (auto* sub : {simulate, attractor, omega, verify, reproduce, schema, list}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }
  if (*seed_opt) g.seed = seed;
  if (*tol_opt) g.tol = tol;
  if (*depth_opt) att.depth = depth;

  return guarded(std::cerr, [&] {
    if (*simulate) return cmd_simulate(g, sim, std::cout);
    if (*attractor) return cmd_attractor(g, att, std::cout);
    if (*omega) return cmd_omega(g, omega_kind, std::cout);
    if (*verify) return cmd_verify(g, check, std::cout);
    if (*reproduce) {
      if (!example.empty()) {
        if (!g.config.empty() && g.config != example)
          throw attlab::tools::ConfigError({"give either a scenario id or --config, not both"});
        g.config = example;
      }
      return cmd_reproduce(g, std::cout);
    }
    if (*schema) return cmd_schema(std::cout);
    return cmd_list(std::cout);
  });
}
