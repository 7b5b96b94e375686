#include <cstdint>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cwave: forward hyperbolic solver, per-point coefficient recovery and "
               "weighted-estimate probes on box grids"};
  app.require_subcommand(1);

  std::string config;
  std::string output;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("config", config, "experiment configuration file")->required();
    sub->add_option("--output", output, "override the output directory");
    sub->add_option("--seed", seed, "override the ensemble seed")
        ->each([&seed_set](const std::string&) { seed_set = true; });
    return sub;
  };

  CLI::App* geo = add("check-geometry", "grid, weight and assumption report");
  CLI::App* sim = add("simulate", "forward solve with trace extraction");
  CLI::App* rec = add("recover", "linearized per-point coefficient recovery");
  CLI::App* stab = add("stability-probe", "ensemble trace-vs-profile ratio probe");
  CLI::App* car = add("carleman", "weighted-estimate term tabulation over tau");
  CLI::App* obs = add("observability", "energy-vs-trace constant probe");

  CLI11_PARSE(app, argc, argv);

  cwave::cli::Overrides ov;
  if (!output.empty()) ov.output = output;
  if (seed_set) ov.seed = seed;

  if (geo->parsed()) return cwave::cli::cmd_check_geometry(config, ov);
  if (sim->parsed()) return cwave::cli::cmd_simulate(config, ov);
  if (rec->parsed()) return cwave::cli::cmd_recover(config, ov);
  if (stab->parsed()) return cwave::cli::cmd_stability_probe(config, ov);
  if (car->parsed()) return cwave::cli::cmd_carleman(config, ov);
  if (obs->parsed()) return cwave::cli::cmd_observability(config, ov);
  return 1;
}
