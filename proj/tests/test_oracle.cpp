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


#include <gtest/gtest.h>

#include "qbound/errors.hpp"
#include "qbound/models.hpp"
#include "qbound/oracle.hpp"
#include "test_util.hpp"

namespace qbound {
namespace {

PauliString P(const char* text, std::size_t n) { return PauliString::parse(text, n); }

TEST(GroundState, SingleQubitZ) {
  const auto gs = exact_ground_state(OperatorPoly(P("Z1", 1)));
  EXPECT_NEAR(gs.energy, -1.0, 1e-14);
  EXPECT_NEAR(gs.gap, 2.0, 1e-14);
  EXPECT_FALSE(gs.degenerate);
  EXPECT_NEAR(std::abs(gs.state.vector()(1)), 1.0, 1e-14);
}

TEST(GroundState, TfiDimerClosedForm) {
  const auto gs = exact_ground_state(build_tfi_2d(1, 2, 1.0, 1.0));
  EXPECT_NEAR(gs.energy, -std::sqrt(4.25), 1e-12);
}

TEST(GroundState, ComplexHamiltonianPath) {
  OperatorPoly h(2);
  h.add_term(P("X1 Y2", 2), 0.7);
  h.add_term(P("Z1", 2), 0.3);
  const auto gs = exact_ground_state(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(testing::dense(h));
  EXPECT_NEAR(gs.energy, es.eigenvalues()(0), 1e-12);
  EXPECT_NEAR(gs.state.expectation(h), gs.energy, 1e-12);
}

TEST(GroundState, DegeneracyFlag) {
  OperatorPoly h(2);
  h.add_term(P("Z1", 2), 1.0);  // Z2 is free: twofold ground space
  EXPECT_TRUE(exact_ground_state(h).degenerate);
}

TEST(GroundState, SizeGuard) {
  EXPECT_THROW(exact_ground_state(OperatorPoly(PauliString(kMaxGroundStateQubits + 1))),
               SizeLimitError);
}

TEST(SteadyState, SingleQubitTwoRates) {
  const double gp = 0.3, gm = 0.9;
  LindbladModel m;
  m.hamiltonian = OperatorPoly(P("Z1", 1));
  m.jumps = {{gp, sigma_plus(1, 0), BathTag::hot}, {gm, sigma_minus(1, 0), BathTag::hot}};
  const auto ss = exact_steady_state(m);
  EXPECT_FALSE(ss.degenerate);
  EXPECT_NEAR(ss.state.expectation(P("Z1", 1)), (gp - gm) / (gp + gm), 1e-12);
  EXPECT_NEAR(std::abs(ss.state.density()(0, 1)), 0.0, 1e-12);
}

TEST(SteadyState, DetailedBalanceResidual) {
  const auto model = build_boundary_driven(1, 2, 1.0, 1.0, {0.5, 0.2, 2.0}, {0.5, 0.2, 2.0});
  const auto ss = exact_steady_state(model);
  EXPECT_LE(ss.residual, 1e-9);
  EXPECT_LE((apply_lindbladian(model, ss.state.density())).norm(), 1e-9);
  ss.state.validate(1e-9);
}

TEST(SteadyState, ZeroRatesAreDegenerate) {
  auto model = build_boundary_driven(1, 2, 1.0, 1.0, {1.0, 0.0, 2.0}, {1.0, 0.0, 2.0});
  EXPECT_TRUE(exact_steady_state(model).degenerate);
}

TEST(SteadyState, SparsePathAgreesOnFiveQubits) {
  const auto model = build_boundary_driven(1, 5, 1.0, 1.0, {1.0, 0.01, 2.0}, {0.1, 0.05, 2.0});
  const auto ss = exact_steady_state(model);
  EXPECT_LE(ss.residual, 1e-9);
  ss.state.validate(1e-8);
}

TEST(PartialTrace, ProductStateFactor) {
  Eigen::VectorXcd a(2), b(2);
  a << 0.6, Complex(0, 0.8);
  b << 1.0, 0.0;
  Eigen::VectorXcd psi(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) psi(2 * i + j) = a(i) * b(j);
  }
  const auto state = DenseState::pure(psi);
  const std::vector<std::size_t> keep{0};
  EXPECT_LT((partial_trace(state, keep).density() - a * a.adjoint()).norm(), 1e-14);
}

TEST(PartialTrace, BellPairIsMaximallyMixed) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  const std::vector<std::size_t> keep{1};
  const auto red = partial_trace(DenseState::pure(psi), keep);
  EXPECT_LT((red.density() - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).norm(), 1e-14);
  EXPECT_NEAR(linear_entropy(red), 0.5, 1e-14);
}

TEST(PartialTrace, DimerState) {
  const auto state = singlet_product_state(4);
  const std::vector<std::size_t> pair{0, 1}, cross{1, 2};
  EXPECT_NEAR(linear_entropy(partial_trace(state, pair)), 0.0, 1e-13);
  EXPECT_NEAR(linear_entropy(partial_trace(state, cross)), 0.75, 1e-13);
}

TEST(ExactSdp, ObjectiveZWithoutData) {
  const auto [lo, hi] = exact_sdp_dense(OperatorPoly(P("Z1", 1)), {}, {});
  EXPECT_NEAR(*lo.value, -1.0, 1e-6);
  EXPECT_NEAR(*hi.value, 1.0, 1e-6);
}

TEST(ExactSdp, BandOnObjective) {
  IntervalConstraint b;
  b.observable = OperatorPoly(P("Z1", 1));
  b.lower = 0.25;
  b.upper = 0.35;
  const std::vector<IntervalConstraint> bands{b};
  const auto [lo, hi] = exact_sdp_dense(OperatorPoly(P("Z1", 1)), bands, {});
  EXPECT_NEAR(*lo.value, 0.25, 1e-6);
  EXPECT_NEAR(*hi.value, 0.35, 1e-6);
}

TEST(ExactSdp, GroundEnergyOfSmallTfi) {
  const auto h = build_tfi_2d(1, 3, 1.0, 1.0);
  const auto [lo, hi] = exact_sdp_dense(h, {}, {});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(testing::dense(h));
  EXPECT_NEAR(*lo.value, es.eigenvalues()(0), 1e-6);
  EXPECT_NEAR(*hi.value, es.eigenvalues()(7), 1e-6);
}

TEST(ExactSdp, SteadyGuaranteesPinTheState) {
  const auto model = build_boundary_driven(1, 2, 1.0, 1.0, {1.0, 0.1, 2.0}, {0.1, 0.2, 2.0});
  const auto guarantees = steady_state_guarantees(model);
  const auto j = heat_current_poly(model);
  const auto [lo, hi] = exact_sdp_dense(j, {}, guarantees);
  const double truth = exact_steady_state(model).state.expectation(j);
  EXPECT_NEAR(*lo.value, truth, 1e-6);
  EXPECT_NEAR(*hi.value, truth, 1e-6);
}

TEST(ExactSdp, SizeGuard) {
  EXPECT_THROW(exact_sdp_dense(OperatorPoly(P("Z1", kMaxExactSdpQubits + 1)), {}, {}),
               SizeLimitError);
}

}  // namespace
}  // namespace qbound
