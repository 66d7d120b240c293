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


#include "qbound/kernels.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "qbound/errors.hpp"

namespace qbound::kernels {
namespace {

// Precomputed signed-permutation form of one Pauli term:
// P|b⟩ = coeff · (−1)^{pop(b & z)} |b ⊕ x⟩ where coeff folds in i^{#Y}.
struct DenseTerm {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  Complex coeff;
};

Complex i_power(std::size_t k) {
  switch (k & 3U) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_size(std::size_t n) {
  if (n > kMaxDenseQubits) {
    throw SizeLimitError("dense kernels support at most " + std::to_string(kMaxDenseQubits) +
                         " qubits, got " + std::to_string(n));
  }
}

DenseTerm make_term(const PauliString& p, Complex c) {
  return {p.x_mask_msb(), p.z_mask_msb(), c * i_power(p.y_count())};
}

std::vector<DenseTerm> dense_terms(const OperatorPoly& poly) {
  std::vector<DenseTerm> out;
  out.reserve(poly.num_terms());
  for (const auto& [p, c] : poly.terms()) out.push_back(make_term(p, c));
  return out;
}

inline double sign_of(std::uint64_t b, std::uint64_t z) {
  return (std::popcount(b & z) & 1) ? -1.0 : 1.0;
}

inline void fill_column(const std::vector<DenseTerm>& terms, std::uint64_t b,
                        Eigen::MatrixXcd& m) {
  for (const auto& t : terms) m(static_cast<Eigen::Index>(b ^ t.x), static_cast<Eigen::Index>(b)) +=
      t.coeff * sign_of(b, t.z);
}

double rho_expectation(const Eigen::MatrixXcd& rho, const DenseTerm& t) {
  const auto dim = static_cast<std::uint64_t>(rho.rows());
  Complex acc = 0.0;
  for (std::uint64_t c = 0; c < dim; ++c) {
    acc += sign_of(c, t.z) * rho(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ t.x));
  }
  return (t.coeff * acc).real();
}

double pure_expectation(const Eigen::VectorXcd& psi, const DenseTerm& t) {
  const auto dim = static_cast<std::uint64_t>(psi.size());
  Complex acc = 0.0;
  for (std::uint64_t c = 0; c < dim; ++c) {
    acc += sign_of(c, t.z) * std::conj(psi(static_cast<Eigen::Index>(c ^ t.x))) *
           psi(static_cast<Eigen::Index>(c));
  }
  return (t.coeff * acc).real();
}

void check_outputs(std::size_t n, std::size_t dim, std::span<const PauliString> strings,
                   std::span<double> out) {
  check_size(n);
  if (out.size() != strings.size()) throw ShapeError("expectations: output span size mismatch");
  if ((std::size_t{1} << n) != dim) throw ShapeError("expectations: state dimension mismatch");
  for (const auto& p : strings) {
    if (p.size() != n) throw ShapeError("expectations: string size mismatch");
  }
}

std::size_t qubits_of_dim(Eigen::Index dim) {
  return static_cast<std::size_t>(std::countr_zero(static_cast<std::uint64_t>(dim)));
}

}  // namespace

Eigen::MatrixXcd to_dense_serial(const OperatorPoly& poly) {
  check_size(poly.size());
  const auto dim = std::uint64_t{1} << poly.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  const auto terms = dense_terms(poly);
  for (std::uint64_t b = 0; b < dim; ++b) fill_column(terms, b, m);
  return m;
}

Eigen::MatrixXcd to_dense_omp(const OperatorPoly& poly) {
  check_size(poly.size());
  const auto dim = std::int64_t{1} << poly.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const auto terms = dense_terms(poly);
  // Column b is written only by iteration b.
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < dim; ++b) fill_column(terms, static_cast<std::uint64_t>(b), m);
  return m;
}

void expectations_serial(const Eigen::MatrixXcd& rho, std::span<const PauliString> strings,
                         std::span<double> out) {
  const std::size_t n = qubits_of_dim(rho.rows());
  check_outputs(n, static_cast<std::size_t>(rho.rows()), strings, out);
  for (std::size_t k = 0; k < strings.size(); ++k) {
    out[k] = rho_expectation(rho, make_term(strings[k], 1.0));
  }
}

void expectations_omp(const Eigen::MatrixXcd& rho, std::span<const PauliString> strings,
                      std::span<double> out) {
  const std::size_t n = qubits_of_dim(rho.rows());
  check_outputs(n, static_cast<std::size_t>(rho.rows()), strings, out);
  const auto count = static_cast<std::int64_t>(strings.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] =
        rho_expectation(rho, make_term(strings[static_cast<std::size_t>(k)], 1.0));
  }
}

void pure_expectations_serial(const Eigen::VectorXcd& psi, std::span<const PauliString> strings,
                              std::span<double> out) {
  const std::size_t n = qubits_of_dim(psi.size());
  check_outputs(n, static_cast<std::size_t>(psi.size()), strings, out);
  for (std::size_t k = 0; k < strings.size(); ++k) {
    out[k] = pure_expectation(psi, make_term(strings[k], 1.0));
  }
}

void pure_expectations_omp(const Eigen::VectorXcd& psi, std::span<const PauliString> strings,
                           std::span<double> out) {
  const std::size_t n = qubits_of_dim(psi.size());
  check_outputs(n, static_cast<std::size_t>(psi.size()), strings, out);
  const auto count = static_cast<std::int64_t>(strings.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] =
        pure_expectation(psi, make_term(strings[static_cast<std::size_t>(k)], 1.0));
  }
}

}  // namespace qbound::kernels
