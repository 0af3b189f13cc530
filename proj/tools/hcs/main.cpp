// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace hcs::cli;

  CLI::App app{"hcs: hydrogen-atom coherent states, construction and verification"};
  app.set_help_flag("-h,--help", "Print this help message and exit");

  std::string command;
  std::string config_path;
  RunConfig flags;
  app.add_option("command", command, "verify | eval | evolve | moments")->required();
  app.add_option("--config", config_path, "JSON config file; flags override its keys");
  auto* o_n_max = app.add_option("--n-max", flags.n_max, "shell truncation");
  auto* o_family = app.add_option("--family", flags.family, "exponential, sqrt-exponential, or a family file");
  auto* o_s = app.add_option("--s", flags.s, "label s >= 0");
  auto* o_gamma = app.add_option("--gamma", flags.gamma, "label gamma (covering space)");
  auto* o_theta = app.add_option("--theta-bar", flags.theta_bar, "Euler angle theta_bar in [0, pi]");
  auto* o_phi = app.add_option("--phi-bar", flags.phi_bar, "Euler angle phi_bar");
  auto* o_psi = app.add_option("--psi-bar", flags.psi_bar, "Euler angle psi_bar");
  auto* o_omega = app.add_option("--omega", flags.omega, "energy scale omega > 0");
  auto* o_window = app.add_option("--gamma-window", flags.gamma_window, "finite covering-space window");
  auto* o_out = app.add_option("--out", flags.out, "output path (default: stdout)");
  auto* o_seed = app.add_option("--seed", flags.seed, "seed for randomized sweeps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config_error;
  }

  RunConfig cfg;
  std::vector<std::string> errors;
  if (!config_path.empty()) {
    try {
      apply_json(read_json_file(config_path), cfg, errors);
    } catch (const hcs::ConfigError& e) {
      errors.emplace_back(e.what());
    }
  }
  cfg.command = command;
  if (o_n_max->count()) cfg.n_max = flags.n_max;
  if (o_family->count()) cfg.family = flags.family;
  if (o_s->count()) cfg.s = flags.s;
  if (o_gamma->count()) cfg.gamma = flags.gamma;
  if (o_theta->count()) cfg.theta_bar = flags.theta_bar;
  if (o_phi->count()) cfg.phi_bar = flags.phi_bar;
  if (o_psi->count()) cfg.psi_bar = flags.psi_bar;
  if (o_omega->count()) cfg.omega = flags.omega;
  if (o_window->count()) cfg.gamma_window = flags.gamma_window;
  if (o_out->count()) cfg.out = flags.out;
  if (o_seed->count()) cfg.seed = flags.seed;

  if (!errors.empty()) {
    try {
      validate(cfg, errors);
    } catch (const hcs::ConfigError& e) {
      std::cerr << "configuration error: " << e.what() << '\n';
    }
    return exit_config_error;
  }
  return run(cfg);
}
