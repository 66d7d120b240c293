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


#include "qbound/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <Eigen/SVD>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "qbound/errors.hpp"
#include "qbound/kernels.hpp"
#include "qbound/relax.hpp"

namespace qbound {

namespace {

using SparseC = Eigen::SparseMatrix<Complex>;

std::size_t qubits_for_dim(Eigen::Index dim) {
  if (dim < 1 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw ShapeError("state dimension must be a power of two, got " + std::to_string(dim));
  }
  return static_cast<std::size_t>(std::countr_zero(static_cast<std::uint64_t>(dim)));
}

SparseC kron(const SparseC& a, const SparseC& b) {
  std::vector<Eigen::Triplet<Complex>> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseC::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseC::InnerIterator ib(b, kb); ib; ++ib) {
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                         ia.value() * ib.value());
        }
      }
    }
  }
  SparseC out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SparseC sparse_of(const OperatorPoly& poly) {
  return kernels::to_dense_omp(poly).sparseView(1.0, 1e-15);
}

// Column-stacking vectorization: vec(A X B) = (Bᵀ ⊗ A) vec(X).
SparseC liouvillian(const LindbladModel& model) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << model.num_qubits());
  SparseC id(d, d);
  id.setIdentity();
  const SparseC h = sparse_of(model.hamiltonian);
  const Complex i_unit(0.0, 1.0);
  SparseC l = -i_unit * kron(id, h) + i_unit * kron(SparseC(h.transpose()), id);
  for (const auto& j : model.jumps) {
    if (j.rate == 0.0) continue;
    const SparseC a = sparse_of(j.op);
    const SparseC a_dag = a.adjoint();
    const SparseC k = a_dag * a;
    l += j.rate * (kron(SparseC(a.conjugate()), a) - 0.5 * kron(id, k) -
                   0.5 * kron(SparseC(k.transpose()), id));
  }
  l.makeCompressed();
  return l;
}

}  // namespace

DenseState DenseState::pure(Eigen::VectorXcd psi) {
  DenseState s;
  s.num_qubits_ = qubits_for_dim(psi.size());
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw DomainError("pure state vector has zero norm");
  s.psi_ = psi / norm;
  return s;
}

DenseState DenseState::mixed(Eigen::MatrixXcd rho) {
  if (rho.rows() != rho.cols()) throw ShapeError("density matrix must be square");
  DenseState s;
  s.num_qubits_ = qubits_for_dim(rho.rows());
  s.rho_ = std::move(rho);
  return s;
}

const Eigen::VectorXcd& DenseState::vector() const {
  if (!psi_) throw DomainError("state is not held as a pure vector");
  return *psi_;
}

Eigen::MatrixXcd DenseState::density() const {
  if (rho_) return *rho_;
  if (!psi_) throw DomainError("empty state");
  return (*psi_) * psi_->adjoint();
}

double DenseState::expectation(const PauliString& p) const {
  const PauliString one[] = {p};
  return expectations(one).front();
}

std::vector<double> DenseState::expectations(std::span<const PauliString> strings) const {
  std::vector<double> out(strings.size());
  if (psi_) {
    kernels::pure_expectations_omp(*psi_, strings, out);
  } else if (rho_) {
    kernels::expectations_omp(*rho_, strings, out);
  } else {
    throw DomainError("empty state");
  }
  return out;
}

double DenseState::expectation(const OperatorPoly& poly) const {
  if (!poly.is_hermitian()) throw DomainError("expectation of a non-Hermitian polynomial");
  if (poly.size() != num_qubits_) throw ShapeError("polynomial size differs from state");
  std::vector<PauliString> strings;
  std::vector<double> coeffs;
  for (const auto& [p, c] : poly.terms()) {
    strings.push_back(p);
    coeffs.push_back(c.real());
  }
  const auto values = expectations(strings);
  double acc = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) acc += coeffs[k] * values[k];
  return acc;
}

double DenseState::purity() const {
  if (psi_) return std::pow(psi_->squaredNorm(), 2);
  if (!rho_) throw DomainError("empty state");
  return rho_->cwiseAbs2().sum();
}

void DenseState::validate(double tol) const {
  if (psi_) {
    if (std::abs(psi_->norm() - 1.0) > tol) throw DomainError("state vector is not normalized");
    return;
  }
  const Eigen::MatrixXcd& r = *rho_;
  if ((r - r.adjoint()).cwiseAbs().maxCoeff() > tol) throw DomainError("state is not Hermitian");
  if (std::abs(r.trace() - Complex(1.0)) > tol) throw DomainError("state trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()(0) < -tol) throw DomainError("state has a negative eigenvalue");
}

GroundState exact_ground_state(const OperatorPoly& hamiltonian) {
  const std::size_t n = hamiltonian.size();
  if (n > kMaxGroundStateQubits) {
    throw SizeLimitError("exact ground state supports at most " +
                         std::to_string(kMaxGroundStateQubits) + " qubits");
  }
  if (!hamiltonian.is_hermitian()) throw DomainError("Hamiltonian is not Hermitian");
  bool real_matrix = true;
  for (const auto& [p, c] : hamiltonian.terms()) real_matrix = real_matrix && p.is_real_matrix();

  const Eigen::MatrixXcd h = kernels::to_dense_omp(hamiltonian);
  GroundState gs;
  Eigen::VectorXd evals;
  Eigen::VectorXcd vec;
  if (real_matrix) {
    const Eigen::MatrixXd hr = h.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hr);
    if (es.info() != Eigen::Success) throw DomainError("eigensolver failed");
    evals = es.eigenvalues();
    vec = es.eigenvectors().col(0).cast<Complex>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success) throw DomainError("eigensolver failed");
    evals = es.eigenvalues();
    vec = es.eigenvectors().col(0);
  }
  gs.energy = evals(0);
  gs.gap = evals.size() > 1 ? evals(1) - evals(0) : 0.0;
  gs.degenerate = evals.size() > 1 && gs.gap < 1e-8 * std::max(1.0, std::abs(gs.energy));
  gs.state = DenseState::pure(std::move(vec));
  return gs;
}

Eigen::MatrixXcd apply_lindbladian(const LindbladModel& model, const Eigen::MatrixXcd& rho) {
  const Eigen::MatrixXcd h = kernels::to_dense_omp(model.hamiltonian);
  const Complex i_unit(0.0, 1.0);
  Eigen::MatrixXcd out = -i_unit * (h * rho - rho * h);
  for (const auto& j : model.jumps) {
    if (j.rate == 0.0) continue;
    const Eigen::MatrixXcd a = kernels::to_dense_omp(j.op);
    const Eigen::MatrixXcd k = a.adjoint() * a;
    out += j.rate * (a * rho * a.adjoint() - 0.5 * (k * rho + rho * k));
  }
  return out;
}

SteadyState exact_steady_state(const LindbladModel& model) {
  model.validate();
  const std::size_t n = model.num_qubits();
  if (n > kMaxSteadyStateQubits) {
    throw SizeLimitError("exact steady state supports at most " +
                         std::to_string(kMaxSteadyStateQubits) + " qubits");
  }
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  const SparseC l = liouvillian(model);
  SteadyState out;
  Eigen::VectorXcd v;
  if (n <= 4) {
    // Full SVD: the right singular vector of the smallest singular value is
    // the null vector; a second tiny singular value signals degeneracy.
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(l), Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const Eigen::Index last = s.size() - 1;
    v = svd.matrixV().col(last);
    out.degenerate = s.size() > 1 && s(last - 1) < 1e-8;
  } else {
    // Border the singular system: replace the (0,0) balance row, which is
    // dependent on the other diagonal rows, by the trace functional.
    SparseC a = l;
    std::vector<Eigen::Triplet<Complex>> t;
    for (int k = 0; k < a.outerSize(); ++k) {
      for (SparseC::InnerIterator it(a, k); it; ++it) {
        if (it.row() != 0) t.emplace_back(it.row(), it.col(), it.value());
      }
    }
    for (Eigen::Index i = 0; i < d; ++i) t.emplace_back(0, i * d + i, Complex(1.0));
    SparseC bordered(d * d, d * d);
    bordered.setFromTriplets(t.begin(), t.end());
    bordered.makeCompressed();
    Eigen::SparseLU<SparseC> lu;
    lu.analyzePattern(bordered);
    lu.factorize(bordered);
    if (lu.info() != Eigen::Success) {
      throw DomainError("steady-state system is singular; the null space is degenerate");
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d * d);
    rhs(0) = 1.0;
    v = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw DomainError("steady-state solve failed");
  }
  Eigen::MatrixXcd rho = Eigen::Map<Eigen::MatrixXcd>(v.data(), d, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const Complex tr = rho.trace();
  if (std::abs(tr) < 1e-300) throw DomainError("steady-state null vector has zero trace");
  rho /= tr.real();
  out.residual = apply_lindbladian(model, rho).norm();
  out.state = DenseState::mixed(std::move(rho));
  return out;
}

DenseState partial_trace(const DenseState& state, std::span<const std::size_t> keep) {
  const std::size_t n = state.num_qubits();
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (kept.empty()) throw ShapeError("partial trace needs at least one kept site");
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw ShapeError("partial trace: repeated site");
  }
  if (kept.back() >= n) throw ShapeError("partial trace: site out of range");
  const std::size_t k = kept.size();
  const std::size_t da = std::size_t{1} << k;
  const std::size_t db = std::size_t{1} << (n - k);

  std::vector<char> is_kept(n, 0);
  for (std::size_t s : kept) is_kept[s] = 1;
  // full index of (a, b): bits of a fill kept sites, bits of b the others,
  // both in site order with the first site most significant.
  auto full_index = [&](std::size_t a, std::size_t b) {
    std::size_t idx = 0, ka = k, kb = n - k;
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t bit;
      if (is_kept[s]) {
        bit = (a >> --ka) & 1U;
      } else {
        bit = (b >> --kb) & 1U;
      }
      idx |= bit << (n - 1 - s);
    }
    return idx;
  };
  std::vector<std::size_t> table(da * db);
  for (std::size_t a = 0; a < da; ++a) {
    for (std::size_t b = 0; b < db; ++b) table[a * db + b] = full_index(a, b);
  }
  const auto dae = static_cast<Eigen::Index>(da);
  const auto dbe = static_cast<Eigen::Index>(db);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dae, dae);
  if (state.is_pure()) {
    const auto& psi = state.vector();
    Eigen::MatrixXcd m(dae, dbe);
    for (std::size_t a = 0; a < da; ++a) {
      for (std::size_t b = 0; b < db; ++b) {
        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
            psi(static_cast<Eigen::Index>(table[a * db + b]));
      }
    }
    out = m * m.adjoint();
  } else {
    const Eigen::MatrixXcd rho = state.density();
    for (std::size_t a = 0; a < da; ++a) {
      for (std::size_t a2 = 0; a2 < da; ++a2) {
        Complex acc = 0.0;
        for (std::size_t b = 0; b < db; ++b) {
          acc += rho(static_cast<Eigen::Index>(table[a * db + b]),
                     static_cast<Eigen::Index>(table[a2 * db + b]));
        }
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a2)) = acc;
      }
    }
  }
  return DenseState::mixed(std::move(out));
}

double linear_entropy(const DenseState& state) { return 1.0 - state.purity(); }

DenseState singlet_product_state(std::size_t num_qubits) {
  if (num_qubits == 0 || num_qubits % 2 != 0) {
    throw DomainError("singlet product state needs an even number of sites");
  }
  if (num_qubits > kMaxGroundStateQubits) throw SizeLimitError("singlet product state too large");
  Eigen::VectorXcd singlet(4);
  singlet << 0.0, 1.0, -1.0, 0.0;
  singlet /= std::sqrt(2.0);
  Eigen::VectorXcd psi = singlet;
  for (std::size_t k = 2; k < num_qubits; k += 2) {
    Eigen::VectorXcd next(psi.size() * 4);
    for (Eigen::Index i = 0; i < psi.size(); ++i) next.segment(4 * i, 4) = psi(i) * singlet;
    psi = std::move(next);
  }
  return DenseState::pure(std::move(psi));
}

std::vector<OperatorPoly> steady_state_guarantees(const LindbladModel& model) {
  const std::size_t n = model.num_qubits();
  if (n > kMaxExactSdpQubits) throw SizeLimitError("full steady-state guarantees are tiny-n only");
  std::vector<OperatorPoly> out;
  const std::size_t total = std::size_t{1} << (2 * n);
  for (std::size_t code = 1; code < total; ++code) {
    PauliString p(n);
    for (std::size_t s = 0; s < n; ++s) p.set(s, static_cast<PauliOp>((code >> (2 * s)) & 3U));
    OperatorPoly image = adjoint_lindblad_apply(model, p);
    if (!image.empty()) out.push_back(std::move(image));
  }
  return out;
}

std::pair<BoundResult, BoundResult> exact_sdp_dense(const OperatorPoly& objective,
                                                    std::span<const IntervalConstraint> bands,
                                                    std::span<const OperatorPoly> guarantees,
                                                    const SolverSettings& settings) {
  const std::size_t n = objective.size();
  if (n > kMaxExactSdpQubits) {
    throw SizeLimitError("exact density-matrix program supports at most " +
                         std::to_string(kMaxExactSdpQubits) + " qubits");
  }
  MomentRegistry registry(n);
  registry.note(objective, IndexSet::objective);
  std::vector<std::size_t> all(n);
  for (std::size_t s = 0; s < n; ++s) all[s] = s;
  std::vector<MomentMatrixSpec> blocks{build_rdm_block(all, registry, n)};
  for (const auto& b : bands) registry.note(b.observable, IndexSet::measured);
  std::vector<LinearMomentConstraint> rows;
  for (const auto& g : guarantees) {
    if (g.size() != n) throw ShapeError("guarantee size mismatch");
    registry.note(g, IndexSet::guarantee);
    rows.push_back(to_linear(g, registry, Relation::equal, 0.0));
  }
  registry.freeze();
  const ConicProblem problem = assemble(registry, objective, blocks, rows, bands, {});
  return solve_both(problem, settings);
}

}  // namespace qbound
