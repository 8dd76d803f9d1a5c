#include <iostream>
#include <utility>

#include "CLI11.hpp"
#include "thermogas/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Non-isothermal ideal gas solver and verification suite"};
  app.require_subcommand(1);

  thermogas::RunRequest request;
  std::string config;
  std::string out = "out";
  std::uint64_t seed = 0;

  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "Evolve the initial state and write norms, energy report and snapshots"},
      {"fixedpoint", "Picard iteration of the linearized map"},
      {"besov", "Littlewood-Paley block norms of the initial state"},
      {"scaling", "Compare a run against its dilated counterpart"},
      {"verify", "Run the acceptance criteria"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "JSON run configuration")->required();
    sub->add_option("--out", out, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "overrides the random seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : thermogas::kExitConfig;
  }

  auto* sub = app.get_subcommands().front();
  request.command = thermogas::parse_command(sub->get_name());
  request.config = config;
  request.out_dir = out;
  if (sub->count("--seed") > 0) request.seed = seed;
  request.threads = thermogas::threads_from_env();
  return thermogas::run(request, std::cout, std::cerr);
}
