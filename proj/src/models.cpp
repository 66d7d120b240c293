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

#include "qbound/models.hpp"

#include <cmath>
#include <string>

#include "qbound/errors.hpp"

namespace qbound {

std::vector<std::pair<std::size_t, std::size_t>> Grid::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) out.emplace_back(site(r, c), site(r, c + 1));
      if (r + 1 < rows) out.emplace_back(site(r, c), site(r + 1, c));
    }
  }
  return out;
}

void BathSpec::validate() const {
  if (!(temperature > 0.0)) throw DomainError("bath temperature must be positive");
  if (!(rate >= 0.0)) throw DomainError("bath rate must be non-negative");
  if (!(quantum > 0.0)) throw DomainError("bath energy quantum must be positive");
}

double BathSpec::bose_factor() const {
  validate();
  return 1.0 / std::expm1(quantum / temperature);
}

void LindbladModel::validate() const {
  const std::size_t n = hamiltonian.size();
  if (!hamiltonian.is_hermitian()) throw DomainError("Hamiltonian is not Hermitian");
  for (const auto& j : jumps) {
    if (!(j.rate >= 0.0)) throw DomainError("jump rates must be non-negative");
    if (j.op.size() != n) throw ShapeError("jump operator size differs from Hamiltonian");
  }
}

OperatorPoly sigma_plus(std::size_t num_qubits, std::size_t site) {
  OperatorPoly s(num_qubits);
  s.add_term(PauliString::single(num_qubits, site, PauliOp::X), 0.5);
  s.add_term(PauliString::single(num_qubits, site, PauliOp::Y), Complex(0.0, 0.5));
  return s;
}

OperatorPoly sigma_minus(std::size_t num_qubits, std::size_t site) {
  OperatorPoly s(num_qubits);
  s.add_term(PauliString::single(num_qubits, site, PauliOp::X), 0.5);
  s.add_term(PauliString::single(num_qubits, site, PauliOp::Y), Complex(0.0, -0.5));
  return s;
}

OperatorPoly build_tfi_2d(std::size_t rows, std::size_t cols, double g, double J) {
  Grid grid{rows, cols};
  const std::size_t n = grid.num_sites();
  if (n == 0) throw GeometryError("grid must contain at least one site");
  OperatorPoly h(n);
  for (std::size_t i = 0; i < n; ++i) h.add_term(PauliString::single(n, i, PauliOp::Z), g);
  for (auto [i, j] : grid.edges()) {
    PauliString xx(n);
    xx.set(i, PauliOp::X);
    xx.set(j, PauliOp::X);
    h.add_term(xx, 0.5 * J);
  }
  return h;
}

LindbladModel build_boundary_driven(std::size_t rows, std::size_t cols, double g, double J,
                                    const BathSpec& hot, const BathSpec& cold) {
  if (cols < 2) throw GeometryError("boundary-driven model needs at least two columns");
  if (rows < 1) throw GeometryError("boundary-driven model needs at least one row");
  hot.validate();
  cold.validate();

  LindbladModel model;
  model.geometry = Grid{rows, cols};
  model.hamiltonian = build_tfi_2d(rows, cols, g, J);
  const std::size_t n = model.geometry.num_sites();
  auto attach = [&](std::size_t site, const BathSpec& bath, BathTag tag) {
    model.jumps.push_back({bath.gain_rate(), sigma_plus(n, site), tag});
    model.jumps.push_back({bath.loss_rate(), sigma_minus(n, site), tag});
  };
  for (std::size_t r = 0; r < rows; ++r) attach(model.geometry.site(r, 0), hot, BathTag::hot);
  for (std::size_t r = 0; r < rows; ++r) {
    attach(model.geometry.site(r, cols - 1), cold, BathTag::cold);
  }
  return model;
}

OperatorPoly build_majumdar_ghosh(std::size_t n, MgNormalization norm) {
  if (n < 4 || n % 2 != 0) {
    throw DomainError("Majumdar-Ghosh chain needs an even number of sites >= 4, got " +
                      std::to_string(n));
  }
  const double unit = norm == MgNormalization::spin_half ? 0.25 : 1.0;
  OperatorPoly h(n);
  constexpr PauliOp letters[] = {PauliOp::X, PauliOp::Y, PauliOp::Z};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t step : {std::size_t{1}, std::size_t{2}}) {
      const double weight = step == 1 ? unit : 0.5 * unit;
      for (PauliOp op : letters) {
        PauliString p(n);
        p.set(j, op);
        p.set((j + step) % n, op);
        h.add_term(p, weight);
      }
    }
  }
  return h;
}

OperatorPoly adjoint_dissipator(const OperatorPoly& jump, const OperatorPoly& p) {
  OperatorPoly jump_dag = conjugate_transpose(jump);
  OperatorPoly number = jump_dag * jump;
  return jump_dag * p * jump - 0.5 * anticommutator(number, p);
}

OperatorPoly adjoint_lindblad_apply(const LindbladModel& model, const PauliString& p) {
  if (p.size() != model.num_qubits()) throw ShapeError("adjoint_lindblad_apply: size mismatch");
  OperatorPoly out = commutator(model.hamiltonian, p) * Complex(0.0, 1.0);
  if (p.is_identity()) return OperatorPoly(p.size());
  OperatorPoly pp(p);
  for (const auto& j : model.jumps) {
    if (j.rate == 0.0) continue;
    out += j.rate * adjoint_dissipator(j.op, pp);
  }
  return out;
}

OperatorPoly heat_current_poly(const LindbladModel& model) {
  OperatorPoly out(model.num_qubits());
  bool any_hot = false;
  for (const auto& j : model.jumps) {
    if (j.bath != BathTag::hot) continue;
    any_hot = true;
    if (j.rate == 0.0) continue;
    out += j.rate * adjoint_dissipator(j.op, model.hamiltonian);
  }
  if (!any_hot) throw DomainError("heat current needs at least one hot-bath jump");
  return out;
}

}  // namespace qbound
