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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qbound/confidence.hpp"
#include "qbound/models.hpp"
#include "qbound/pauli.hpp"
#include "qbound/sdp.hpp"

namespace qbound {

inline constexpr std::size_t kMaxGroundStateQubits = 12;
inline constexpr std::size_t kMaxSteadyStateQubits = 6;
inline constexpr std::size_t kMaxExactSdpQubits = 4;

/// A state on n qubits held either as a normalized vector or as a density
/// matrix. Pure states are not materialized as matrices unless asked.
class DenseState {
 public:
  DenseState() = default;
  /// Normalizes `psi`; its length must be a power of two.
  static DenseState pure(Eigen::VectorXcd psi);
  static DenseState mixed(Eigen::MatrixXcd rho);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return std::size_t{1} << num_qubits_; }
  bool is_pure() const { return psi_.has_value(); }
  /// Throws DomainError for mixed states.
  const Eigen::VectorXcd& vector() const;
  Eigen::MatrixXcd density() const;

  double expectation(const PauliString& p) const;
  /// Batched Pauli expectations (OpenMP kernel).
  std::vector<double> expectations(std::span<const PauliString> strings) const;
  /// Expectation of a Hermitian polynomial.
  double expectation(const OperatorPoly& poly) const;
  /// tr ρ²
  double purity() const;

  /// Throws DomainError unless the state is Hermitian, has unit trace and no
  /// eigenvalue below −tol.
  void validate(double tol = 1e-10) const;

 private:
  std::size_t num_qubits_ = 0;
  std::optional<Eigen::VectorXcd> psi_;
  std::optional<Eigen::MatrixXcd> rho_;
};

struct GroundState {
  double energy = 0.0;
  double gap = 0.0;  ///< E₁ − E₀ (0 for a one-dimensional space)
  bool degenerate = false;
  DenseState state;
};

/// Lowest eigenpair of H by dense diagonalization. When the ground space is
/// degenerate the lowest-index eigenvector is returned and `degenerate` set.
GroundState exact_ground_state(const OperatorPoly& hamiltonian);

struct SteadyState {
  DenseState state;
  bool degenerate = false;
  double residual = 0.0;  ///< ‖L(ρ)‖_F after normalization
};

/// Null vector of the Liouvillian, Hermitized and trace-normalized.
SteadyState exact_steady_state(const LindbladModel& model);

/// L(ρ) = −i[H, ρ] + Σ γ (A ρ A† − ½{A†A, ρ}).
Eigen::MatrixXcd apply_lindbladian(const LindbladModel& model, const Eigen::MatrixXcd& rho);

/// Reduced state on `keep` (ascending order, first kept site most significant).
DenseState partial_trace(const DenseState& state, std::span<const std::size_t> keep);

/// 1 − tr ρ²
double linear_entropy(const DenseState& state);

/// Singlets on the pairs (0,1), (2,3), … of an even number of sites.
DenseState singlet_product_state(std::size_t num_qubits);

/// Every ⟨L†(P)⟩ = 0 for the 4ⁿ − 1 non-identity strings P.
std::vector<OperatorPoly> steady_state_guarantees(const LindbladModel& model);

/// Exact interval of ⟨objective⟩ over all density matrices compatible with
/// the bands and the linear guarantees ⟨g⟩ = 0. Tiny systems only.
std::pair<BoundResult, BoundResult> exact_sdp_dense(const OperatorPoly& objective,
                                                    std::span<const IntervalConstraint> bands,
                                                    std::span<const OperatorPoly> guarantees,
                                                    const SolverSettings& settings = {});

}  // namespace qbound
