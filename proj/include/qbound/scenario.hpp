// Copyright 2026 The qbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbound/models.hpp"
#include "qbound/sdp.hpp"

namespace qbound {

struct ModelSpec {
  std::string kind = "tfi";  ///< tfi | boundary_driven | majumdar_ghosh
  std::size_t rows = 1;
  std::size_t cols = 2;
  std::size_t sites = 0;  ///< chain length for majumdar_ghosh
  double g = 1.0;
  double J = 1.0;
  BathSpec hot{1.0, 0.001, 2.0};
  BathSpec cold{0.1, 0.011, 2.0};
  MgNormalization normalization = MgNormalization::spin_half;
};

enum class ObjectiveKind { energy, heat_current, purity, custom };

/// How a named set of measured strings is chosen.
struct MeasurementSpec {
  enum class Kind { objective_strings, second_order_all, most_frequent, first_generated, custom };
  std::string name;
  Kind kind = Kind::objective_strings;
  std::size_t k = 0;        ///< count for most_frequent / first_generated
  std::string letters;      ///< allowed letters besides I (empty = all)
  std::vector<std::string> strings;  ///< custom list in "X1 Y2" form
};

struct StrategySpec {
  std::string label;
  bool sdp = true;
  std::string measurement;  ///< empty = no measurement data
};

struct EnergyShellSpec {
  enum class Mode { none, explicit_bounds, relaxation };
  Mode mode = Mode::none;
  double lower = 0.0;
  double upper = 0.0;
  /// relaxation mode: lower edge is the relaxation's own energy lower bound,
  /// upper edge the exact ground energy plus this slack.
  double slack = 0.0;
};

struct ScenarioConfig {
  std::string name = "scenario";
  ModelSpec model;
  ObjectiveKind objective = ObjectiveKind::energy;
  OperatorPoly custom_objective;
  std::size_t purity_max_weight = 2;
  double delta = 0.003;
  std::vector<double> confidence_levels;  ///< sweep-confidence only
  std::vector<std::int64_t> shots{100000};
  std::size_t repeats = 1;
  std::uint64_t seed = 1;
  bool infinite_shots = false;
  std::size_t basis_size = 0;  ///< 0 = no moment matrix
  std::size_t constraint_budget = 0;
  std::vector<std::vector<std::size_t>> rdm_blocks;
  std::vector<OperatorPoly> symmetries;
  EnergyShellSpec energy_shell;
  std::vector<MeasurementSpec> measurements;
  std::vector<StrategySpec> strategies;
  std::string directions = "both";  ///< both | lower | upper
  bool real_reduction = true;
  SolverSettings solver;
};

/// Parses a config; throws ConfigError with a readable message.
ScenarioConfig config_from_json(const nlohmann::json& j);
ScenarioConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const ScenarioConfig& config);

struct ResultRow {
  std::string scenario;
  std::string strategy;
  std::int64_t n_tot = 0;
  std::size_t repeat = 0;
  double delta = 0.0;
  double confidence = 1.0;
  std::optional<double> lb;
  std::optional<double> ub;
  std::string status_lb = "skipped";
  std::string status_ub = "skipped";
  double wall_time_s = 0.0;
  bool infinite_shots = false;
};

struct ScenarioResult {
  std::vector<ResultRow> rows;
  std::optional<double> true_value;
  nlohmann::json summary;
};

/// Runs every (shot point, repeat, strategy) combination. Rows come back in
/// (shot point, repeat, strategy) order regardless of worker scheduling.
/// Solver and data errors become row statuses; config errors throw.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// Same, once per confidence level in `config.confidence_levels`, with the
/// same simulated data at every level.
ScenarioResult run_confidence_sweep(const ScenarioConfig& config);

/// Exact reference values for the configured model (sizes permitting).
nlohmann::json oracle_report(const ScenarioConfig& config);

/// The assembled problem of one strategy at shot point 0, repeat 0.
ConicProblem build_problem(const ScenarioConfig& config, const std::string& strategy,
                           Direction direction);

inline constexpr const char* kCsvSchema = "#schema=qbound.bounds.v1";
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_csv(const std::filesystem::path& path, const std::vector<ResultRow>& rows);

}  // namespace qbound
