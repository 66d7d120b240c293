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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qbound/confidence.hpp"
#include "qbound/relax.hpp"

namespace qbound {

enum class Sense { minimize, maximize };
enum class Direction { lower, upper };
enum class SolverStatus { optimal, near_optimal, infeasible, unbounded, numerical_failure };

std::string to_string(Direction d);
std::string to_string(SolverStatus s);

/// Conic solver settings. Tolerances follow the solver's own convention
/// (absolute and relative residual thresholds).
struct SolverSettings {
  double eps_abs = 1e-8;
  double eps_rel = 1e-8;
  double eps_infeas = 1e-9;
  int max_iters = 100000;
  double time_limit_s = 0.0;  ///< 0 means no limit
  bool verbose = false;
  /// One retry with a rescaled problem and doubled iteration cap when the
  /// first attempt ends in a numerical failure.
  bool retry = true;
  /// Relative duality gap below which a solved instance counts as optimal
  /// rather than near-optimal.
  double optimal_gap = 1e-7;
};

/// Minimize (1/d) Σ_{γ} ⟨P_γ⟩² over the listed moments, plus the identity's
/// 1/d. Only the lower direction is supported.
struct PuritySpec {
  std::vector<std::size_t> moments;  ///< registry indices, identity excluded
  double dimension = 2.0;            ///< d = 2ⁿ
};

using ObjectiveSpec = std::variant<OperatorPoly, PuritySpec>;

struct AssemblyOptions {
  /// When every objective term, band and constraint is invariant under
  /// complex conjugation of the state, moments of strings with an odd number
  /// of Y letters are fixed to zero and PSD blocks are assembled in real form
  /// at their native size. Otherwise blocks use the doubled real embedding.
  bool real_reduction = true;
  /// A-priori box |⟨P⟩| ≤ box on every moment.
  double box = 1.0;
  /// Global failure probability of the measurement bands; confidence is
  /// 1 − δ when bands are present and 1 otherwise.
  double delta = 0.0;
};

/// lower ≤ Σ coeff · y[moment] ≤ upper; either side may be infinite.
struct LinearRow {
  std::vector<std::pair<std::size_t, double>> terms;
  double lower = 0.0;
  double upper = 0.0;
};

/// Lower-triangle entry (row ≥ col) of a real symmetric block; moment 0 is
/// the constant part.
struct PsdTriplet {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  std::size_t moment = 0;
  double value = 0.0;
};

struct PsdBlock {
  std::size_t dim = 0;
  std::vector<PsdTriplet> entries;
};

/// Real conic program over the registry's moment vector. The identity moment
/// is the constant 1.
struct ConicProblem {
  std::size_t num_moments = 1;
  Sense sense = Sense::minimize;
  std::vector<std::pair<std::size_t, double>> objective;  ///< non-identity terms
  double objective_constant = 0.0;
  std::optional<PuritySpec> purity;
  std::vector<double> lower;  ///< per moment
  std::vector<double> upper;
  std::vector<LinearRow> rows;
  std::vector<PsdBlock> blocks;
  bool real_reduced = false;
  double confidence = 1.0;
  std::vector<std::string> moment_labels;  ///< for dumps
};

struct BoundResult {
  Direction direction = Direction::lower;
  SolverStatus status = SolverStatus::numerical_failure;
  std::optional<double> value;  ///< present only for optimal / near_optimal
  double confidence = 1.0;
  double wall_time_s = 0.0;
  int iterations = 0;
  double primal_objective = 0.0;  ///< in the problem's own sense, constant included
  double dual_objective = 0.0;
  /// Moment values at the solution (NaN for moments absent from the program).
  std::vector<double> moments;
};

/// Builds the conic program. Blocks are converted to real symmetric form,
/// bands on single strings become variable bounds and the rest become rows.
/// Throws RegistryError for unregistered strings and DomainError for
/// complex objective coefficients.
ConicProblem assemble(const MomentRegistry& registry, const ObjectiveSpec& objective,
                      std::span<const MomentMatrixSpec> blocks,
                      std::span<const LinearMomentConstraint> constraints,
                      std::span<const IntervalConstraint> intervals,
                      const AssemblyOptions& options = {});

/// Purity objective over the registered strings `strings` on a system of
/// dimension d. Throws RegistryError for unregistered strings.
PuritySpec purity_epigraph(const MomentRegistry& registry, std::span<const PauliString> strings,
                           double dimension);

/// Solves in the problem's own sense. A minimization yields a lower bound,
/// a maximization an upper bound. Throws UnsupportedDirection for a
/// maximized purity objective.
BoundResult solve(const ConicProblem& problem, const SolverSettings& settings = {});

/// (lower, upper) with upper = −min(−objective).
std::pair<BoundResult, BoundResult> solve_both(const ConicProblem& problem,
                                               const SolverSettings& settings = {});

/// Writes the problem in sparse SDPA format. The purity epigraph becomes a
/// Schur-complement block, bounds and rows one diagonal LP block. A leading
/// comment line records how to recover the objective value:
/// value = sign · (SDPA primal objective) + constant.
void export_sdpa(const ConicProblem& problem, const std::filesystem::path& path);
std::string to_sdpa_string(const ConicProblem& problem);

nlohmann::json to_json(const ConicProblem& problem);

}  // namespace qbound
