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

#include <span>

#include <Eigen/Dense>

#include "qbound/pauli.hpp"

// Dense linear-algebra kernels on Pauli data. Every kernel has a serial
// reference version and an OpenMP version. Both accumulate in the same order
// per output element, so their results agree bit for bit.
namespace qbound::kernels {

/// Largest qubit count the dense kernels accept.
inline constexpr std::size_t kMaxDenseQubits = 13;

/// 2ⁿ × 2ⁿ matrix of a polynomial; site 0 is the most significant bit of the
/// basis index.
Eigen::MatrixXcd to_dense_serial(const OperatorPoly& poly);
Eigen::MatrixXcd to_dense_omp(const OperatorPoly& poly);

/// out[k] = Re tr(strings[k] · rho).
void expectations_serial(const Eigen::MatrixXcd& rho, std::span<const PauliString> strings,
                         std::span<double> out);
void expectations_omp(const Eigen::MatrixXcd& rho, std::span<const PauliString> strings,
                      std::span<double> out);

/// out[k] = Re ⟨psi| strings[k] |psi⟩.
void pure_expectations_serial(const Eigen::VectorXcd& psi, std::span<const PauliString> strings,
                              std::span<double> out);
void pure_expectations_omp(const Eigen::VectorXcd& psi, std::span<const PauliString> strings,
                           std::span<double> out);

}  // namespace qbound::kernels
