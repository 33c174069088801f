#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rydcp/app.hpp"
#include "rydcp/errors.hpp"

namespace {

enum Exit { ok = 0, usage = 1, config_error = 2, computation_error = 3 };

}  // namespace

int main(int argc, char** argv) {
  using namespace rydcp;
  CLI::App cli{"Thermal Casimir-Polder shifts and decay rates of Rydberg atoms near a metal"};
  cli.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  std::optional<double> tolerance;

  const char* names[] = {"potential", "decay", "contributions", "scaling"};
  const char* help[] = {"level shift U(z) per state and temperature",
                        "transition rates Gamma(z) per state and temperature",
                        "per final-level shares of the shift",
                        "power-law exponents versus z and n*"};
  for (int i = 0; i < 4; ++i) {
    auto* sub = cli.add_subcommand(names[i], help[i]);
    sub->add_option("-c,--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("-o,--out", out_dir, "output directory (overrides the config)");
    sub->add_option("-j,--threads", threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
    sub->add_option("--tolerance", tolerance, "relative quadrature tolerance");
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? ok : usage;
  }

  app::RunConfig config;
  try {
    config = app::load_config(config_path);
    if (out_dir) config.output = *out_dir;
    if (threads) config.threads = *threads;
    if (tolerance) config.tolerance = *tolerance;
    config.validate();
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  }

  const std::string which = cli.get_subcommands().front()->get_name();
  try {
    app::RunOutput out;
    if (which == "potential") out = app::run_potential(config);
    else if (which == "decay") out = app::run_decay(config);
    else if (which == "contributions") out = app::run_contributions(config);
    else out = app::run_scaling(config);
    for (const auto& f : out.files) std::cout << f.string() << "\n";
    std::cout << out.manifest.string() << "\n";
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return computation_error;
  }
  return ok;
}
