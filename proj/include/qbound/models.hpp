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
#include <utility>
#include <vector>

#include "qbound/pauli.hpp"

namespace qbound {

/// Open-boundary rectangular lattice; site (r, c) has index r * cols + c.
struct Grid {
  std::size_t rows = 1;
  std::size_t cols = 1;

  std::size_t num_sites() const { return rows * cols; }
  std::size_t site(std::size_t r, std::size_t c) const { return r * cols + c; }
  /// Nearest-neighbour pairs (i < j): horizontal bonds first within each row,
  /// then the vertical bond below.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
};

/// Thermal bath seen by the boundary spins. k_B = 1.
struct BathSpec {
  double temperature = 1.0;
  double rate = 0.0;     ///< base coupling γ
  double quantum = 2.0;  ///< energy ε exchanged per jump

  void validate() const;
  /// n_B = 1 / (exp(ε/T) − 1)
  double bose_factor() const;
  /// γ⁺ = γ n_B, drives σ₊ jumps.
  double gain_rate() const { return rate * bose_factor(); }
  /// γ⁻ = γ (n_B + 1), drives σ₋ jumps.
  double loss_rate() const { return rate * (bose_factor() + 1.0); }
};

enum class BathTag { hot, cold };

struct JumpTerm {
  double rate = 0.0;
  OperatorPoly op;
  BathTag bath = BathTag::hot;
};

struct LindbladModel {
  OperatorPoly hamiltonian;
  std::vector<JumpTerm> jumps;
  Grid geometry;

  std::size_t num_qubits() const { return hamiltonian.size(); }
  /// Throws on negative rates, size mismatches or a non-Hermitian Hamiltonian.
  void validate() const;
};

/// σ₊ = (X + iY)/2 and σ₋ = (X − iY)/2 on a 0-based site.
OperatorPoly sigma_plus(std::size_t num_qubits, std::size_t site);
OperatorPoly sigma_minus(std::size_t num_qubits, std::size_t site);

/// g Σ Z_i + (J/2) Σ_<ij> X_i X_j on an open rows × cols grid.
OperatorPoly build_tfi_2d(std::size_t rows, std::size_t cols, double g, double J);

/// Transverse-field Ising grid with σ± jumps on the left (hot) and right
/// (cold) columns. Throws GeometryError when cols < 2.
LindbladModel build_boundary_driven(std::size_t rows, std::size_t cols, double g, double J,
                                    const BathSpec& hot, const BathSpec& cold);

enum class MgNormalization {
  spin_half,  ///< S = σ/2 couplings, dimer energy −3/8 per site
  pauli,      ///< raw Pauli letters, dimer energy −3/2 per site
};

/// Periodic Majumdar–Ghosh chain on an even number n ≥ 4 of sites.
OperatorPoly build_majumdar_ghosh(std::size_t n,
                                  MgNormalization norm = MgNormalization::spin_half);

/// D†[A](P) = A† P A − ½{A†A, P}
OperatorPoly adjoint_dissipator(const OperatorPoly& jump, const OperatorPoly& p);

/// L†(P) = i[H, P] + Σ_j γ_j D†[A_j](P). The result has real coefficients.
OperatorPoly adjoint_lindblad_apply(const LindbladModel& model, const PauliString& p);

/// Heat current out of the hot bath: Σ_{hot j} γ_j D†[A_j](H), read so that
/// ⟨O⟩ = tr(H · L_hot(ρ)). Throws DomainError when the model has no hot jump.
OperatorPoly heat_current_poly(const LindbladModel& model);

}  // namespace qbound
