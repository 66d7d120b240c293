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

#include <Eigen/Dense>
#include <random>

#include "qbound/kernels.hpp"
#include "qbound/oracle.hpp"
#include "qbound/pauli.hpp"

namespace qbound::testing {

inline Eigen::MatrixXcd dense(const OperatorPoly& p) { return kernels::to_dense_serial(p); }

inline Eigen::MatrixXcd dense(const PauliString& p) { return dense(OperatorPoly(p)); }

inline PauliString random_string(std::size_t n, std::mt19937_64& rng, bool allow_identity = false) {
  std::uniform_int_distribution<int> letter(0, 3);
  for (;;) {
    PauliString p(n);
    for (std::size_t s = 0; s < n; ++s) p.set(s, static_cast<PauliOp>(letter(rng)));
    if (allow_identity || !p.is_identity()) return p;
  }
}

inline DenseState random_mixed_state(std::size_t n, std::mt19937_64& rng, std::size_t rank = 2) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(d, static_cast<Eigen::Index>(rank));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = {g(rng), g(rng)};
  }
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DenseState::mixed(rho);
}

inline DenseState random_pure_state(std::size_t n, std::mt19937_64& rng) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = {g(rng), g(rng)};
  v.normalize();
  return DenseState::pure(v);
}

}  // namespace qbound::testing
