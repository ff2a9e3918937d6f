#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lcflow/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral Q-tensor liquid-crystal flow solver and verification suite"};
  app.require_subcommand(1);

  std::string config_path;
  std::string axis;
  std::string key;
  std::vector<std::string> values;

  auto* run = app.add_subcommand("run", "integrate the configured system and write series.csv and snapshots");
  run->add_option("config", config_path, "INI configuration file")->required();

  auto* verify = app.add_subcommand("verify", "run the identity and oracle checks, print a JSON report");
  verify->add_option("config", config_path, "INI configuration file")->required();

  auto* conv = app.add_subcommand("converge", "convergence ladder along one axis, printed as CSV");
  conv->add_option("config", config_path, "INI configuration file")->required();
  conv->add_option("--axis", axis, "dt, delta or eps")->required()->check(CLI::IsMember({"dt", "delta", "eps"}));

  auto* sweep = app.add_subcommand("sweep", "one run per value of a configuration key");
  sweep->add_option("config", config_path, "INI configuration file")->required();
  sweep->add_option("--key", key, "section.key to vary")->required();
  sweep->add_option("--values", values, "comma separated values")->required()->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lcflow::kExitConfigError;
  }

  try {
    const lcflow::RunConfig cfg = lcflow::load_config(config_path);
    if (*run) return lcflow::cmd_run(cfg, std::cout);
    if (*verify) return lcflow::cmd_verify(cfg, std::cout, std::cerr);
    if (*conv) return lcflow::cmd_converge(cfg, axis, std::cout, std::cerr);
    if (*sweep) return lcflow::cmd_sweep(cfg, key, values, std::cout, std::cerr);
  } catch (const lcflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return lcflow::kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return lcflow::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lcflow::kExitCheckFailed;
  }
  return lcflow::kExitOk;
}
