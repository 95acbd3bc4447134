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

#ifndef LAGOC_CLI_HPP
#define LAGOC_CLI_HPP

#include "lagoc/conjugate.hpp"
#include "lagoc/lq.hpp"
#include "lagoc/problem.hpp"
#include "lagoc/shooting.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace lagoc::cli {

class ConfigError : public Error {
public:
  using Error::Error;
};

/// One run of the command-line tool. Exactly one problem source is set:
/// a registry name, inline LQ matrices, or (from code only) a prebuilt
/// problem.
struct RunConfig {
  std::optional<std::string> registry;
  std::optional<LqProblem> lq;
  std::optional<SecondOrderOcp> injected;

  /// Boundary override for registry problems; always set for LQ.
  std::optional<BoundaryData> boundary;
  /// Horizon override for registry problems.
  std::optional<double> T;

  std::optional<Vec> z0;
  ShootingOptions shooting;
  VerdictOptions conjugate;

  std::filesystem::path out_dir = ".";
  bool quiet = false;
};

/// Parses a config document. Throws ConfigError.
RunConfig parse_config(const nlohmann::json &doc);
RunConfig load_config(const std::filesystem::path &path);

/// Builds the problem the config describes. Throws ConfigError.
SecondOrderOcp build_problem(const RunConfig &cfg);

/// Each command writes its files into cfg.out_dir and returns the exit code.
/// Messages go to `err`.
int cmd_solve(const RunConfig &cfg, std::ostream &err);
int cmd_conjugate(const RunConfig &cfg, std::ostream &err);
int cmd_check(const RunConfig &cfg, std::ostream &err);

/// One property checked by cmd_check.
struct PropertyResult {
  std::string name;
  bool pass = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct CheckReport {
  std::vector<PropertyResult> properties;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;

  bool all_pass() const;
};

/// Derivative checks, Tulczyjew identity, flow equivalence and energy
/// conservation on `p`; the LQ conjugacy property and Kalman check when
/// `lq` is given.
CheckReport run_checks(const SecondOrderOcp &p, const LqProblem *lq);

// Report serialization.
nlohmann::json to_json(const Extremal &ex, const LegendreReport &legendre);
nlohmann::json to_json(const ConjugateReport &rep);
nlohmann::json to_json(const CheckReport &rep);
void write_extremal_csv(const SecondOrderOcp &p, const Extremal &ex,
                        const std::filesystem::path &path);
void write_det_csv(const ConjugateReport &rep,
                   const std::filesystem::path &path);
void write_json(const nlohmann::json &doc, const std::filesystem::path &path);

} // namespace lagoc::cli

#endif // LAGOC_CLI_HPP
