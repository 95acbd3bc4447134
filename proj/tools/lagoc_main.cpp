/*
Copyright 2026 The lagoc Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

     https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "lagoc/cli.hpp"

#include <iostream>

#include "CLI11.hpp"

namespace {

struct Args {
  std::string config;
  std::string out = ".";
  std::string problem;
  bool quiet = false;
};

void add_common(CLI::App *cmd, Args &a) {
  cmd->add_option("--config", a.config, "JSON run configuration");
  cmd->add_option("--out", a.out, "Output directory");
  cmd->add_option("--problem", a.problem,
                  "Registry problem, overrides the config's problem source");
  cmd->add_flag("--quiet", a.quiet, "No progress on standard error");
}

lagoc::cli::RunConfig make_config(const Args &a) {
  lagoc::cli::RunConfig cfg;
  if (!a.config.empty())
    cfg = lagoc::cli::load_config(a.config);
  else if (a.problem.empty())
    throw lagoc::cli::ConfigError("either --config or --problem is required");
  if (!a.problem.empty()) {
    cfg.lq.reset();
    cfg.registry = a.problem;
    if (a.config.empty())
      cfg.boundary.reset();
  }
  cfg.out_dir = a.out;
  cfg.quiet = a.quiet;
  return cfg;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Indirect optimal control of second-order systems"};
  app.require_subcommand(1);
  Args args;
  CLI::App *solve = app.add_subcommand("solve", "Shoot for an extremal");
  CLI::App *conjugate =
      app.add_subcommand("conjugate", "First conjugate time and verdict");
  CLI::App *check = app.add_subcommand("check", "Run the property suite");
  for (CLI::App *c : {solve, conjugate, check})
    add_common(c, args);

  CLI11_PARSE(app, argc, argv);

  lagoc::cli::RunConfig cfg;
  try {
    cfg = make_config(args);
  } catch (const lagoc::Error &e) {
    std::cerr << "lagoc: " << e.what() << '\n';
    return 1;
  }
  if (solve->parsed())
    return lagoc::cli::cmd_solve(cfg, std::cerr);
  if (conjugate->parsed())
    return lagoc::cli::cmd_conjugate(cfg, std::cerr);
  return lagoc::cli::cmd_check(cfg, std::cerr);
}
