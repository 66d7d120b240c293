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

#include <cmath>

#include "qbound/errors.hpp"
#include "qbound/models.hpp"
#include "qbound/oracle.hpp"
#include "test_util.hpp"

namespace qbound {
namespace {

using testing::dense;

PauliString P(const char* text, std::size_t n) { return PauliString::parse(text, n); }

// Dense L(ρ) for a single jump, used to check the adjoint maps.
Eigen::MatrixXcd dissipate(const Eigen::MatrixXcd& l, const Eigen::MatrixXcd& rho) {
  const Eigen::MatrixXcd ldl = l.adjoint() * l;
  return l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
}

TEST(Tfi, DimerExpansion) {
  OperatorPoly expect(2);
  expect.add_term(P("Z1", 2), 1.0);
  expect.add_term(P("Z2", 2), 1.0);
  expect.add_term(P("X1 X2", 2), 0.5);
  EXPECT_EQ(build_tfi_2d(1, 2, 1.0, 1.0), expect);
}

TEST(Tfi, ThreeByThreeTermCount) {
  const auto h = build_tfi_2d(3, 3, 0.7, 1.3);
  std::size_t singles = 0, pairs = 0;
  for (const auto& [p, c] : h.terms()) {
    if (p.weight() == 1) {
      ++singles;
      EXPECT_NEAR(c.real(), 0.7, 1e-15);
    } else {
      ++pairs;
      EXPECT_NEAR(c.real(), 0.65, 1e-15);
    }
  }
  EXPECT_EQ(singles, 9u);
  EXPECT_EQ(pairs, 12u);
  EXPECT_EQ((Grid{3, 3}).edges().size(), 12u);
}

TEST(Tfi, RejectsEmptyGrid) { EXPECT_THROW(build_tfi_2d(0, 3, 1.0, 1.0), GeometryError); }

TEST(Bath, BoseFactorAndRates) {
  const BathSpec hot{1.0, 0.001, 2.0};
  EXPECT_NEAR(hot.bose_factor(), 1.0 / (std::exp(2.0) - 1.0), 1e-15);
  EXPECT_NEAR(hot.bose_factor(), 0.156518, 1e-6);
  EXPECT_NEAR(hot.gain_rate(), 1.56518e-4, 1e-9);
  EXPECT_NEAR(hot.loss_rate(), 1.156518e-3, 1e-9);
  const BathSpec frozen{1e-4, 0.01, 2.0};
  EXPECT_NEAR(frozen.gain_rate(), 0.0, 1e-300);
  EXPECT_NEAR(frozen.loss_rate(), 0.01, 1e-15);
  EXPECT_THROW((BathSpec{1.0, -1.0, 2.0}.validate()), DomainError);
}

TEST(MajumdarGhosh, FourSiteTerms) {
  const auto h = build_majumdar_ghosh(4);
  // Nearest pairs (0,1),(1,2),(2,3),(3,0) at 1/4; the periodic next-nearest
  // sum visits (0,2) and (1,3) twice at 1/8 each.
  EXPECT_EQ(h.num_terms(), 18u);
  for (const char* s : {"X1 X2", "Y2 Y3", "Z3 Z4", "X1 X4"}) EXPECT_NEAR(h.coeff(P(s, 4)).real(), 0.25, 1e-15);
  for (const char* s : {"X1 X3", "Y2 Y4", "Z1 Z3"}) EXPECT_NEAR(h.coeff(P(s, 4)).real(), 0.25, 1e-15);
}

TEST(MajumdarGhosh, DimerEnergyPerSite) {
  for (std::size_t n : {4u, 6u, 8u}) {
    const auto h = build_majumdar_ghosh(n);
    const auto dimer = singlet_product_state(n);
    EXPECT_NEAR(dimer.expectation(h) / static_cast<double>(n), -0.375, 1e-12);
  }
}

TEST(MajumdarGhosh, SixSiteGroundEnergy) {
  const auto gs = exact_ground_state(build_majumdar_ghosh(6));
  EXPECT_NEAR(gs.energy / 6.0, -0.375, 1e-9);
}

TEST(MajumdarGhosh, PauliNormalization) {
  const auto h = build_majumdar_ghosh(6, MgNormalization::pauli);
  EXPECT_NEAR(singlet_product_state(6).expectation(h) / 6.0, -1.5, 1e-12);
  EXPECT_THROW(build_majumdar_ghosh(5), DomainError);
}

TEST(Adjoint, PureDecayOnZ) {
  const double gm = 0.3;
  const auto jump = sigma_minus(1, 0);
  const auto img = gm * adjoint_dissipator(jump, OperatorPoly(P("Z1", 1)));
  OperatorPoly expect = OperatorPoly::identity(1, -gm);
  expect.add_term(P("Z1", 1), -gm);
  EXPECT_EQ(img, expect);
}

TEST(Adjoint, TracePreservation) {
  const auto model = build_boundary_driven(1, 2, 1.0, 1.0, {1.0, 0.1, 2.0}, {0.3, 0.2, 2.0});
  EXPECT_TRUE(adjoint_lindblad_apply(model, PauliString(2)).empty());
}

TEST(Adjoint, MatchesDenseSuperoperatorDuality) {
  // tr(L†(P) ρ) = tr(P L(ρ)) for random ρ.
  const auto model = build_boundary_driven(1, 3, 0.8, 1.1, {1.0, 0.05, 2.0}, {0.2, 0.07, 2.0});
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testing::random_string(3, rng);
    const auto rho = testing::random_mixed_state(3, rng, 3).density();
    const Eigen::MatrixXcd lrho = apply_lindbladian(model, rho);
    const Complex lhs = (dense(adjoint_lindblad_apply(model, p)) * rho).trace();
    const Complex rhs = (dense(p) * lrho).trace();
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
  }
}

TEST(Adjoint, SingleQubitSteadyValue) {
  const BathSpec bath{1.0, 0.001, 2.0};
  const double gp = bath.gain_rate(), gm = bath.loss_rate();
  LindbladModel m;
  m.hamiltonian = OperatorPoly(P("Z1", 1));
  m.jumps = {{gp, sigma_plus(1, 0), BathTag::hot}, {gm, sigma_minus(1, 0), BathTag::hot}};
  const auto img = adjoint_lindblad_apply(m, P("Z1", 1));
  // ⟨L†(Z)⟩ = c0 + cz ⟨Z⟩ = 0.
  const double c0 = img.coeff(PauliString(1)).real();
  const double cz = img.coeff(P("Z1", 1)).real();
  EXPECT_NEAR(-c0 / cz, (gp - gm) / (gp + gm), 1e-14);
}

TEST(HeatCurrent, ZeroHotRatesGiveEmptyPoly) {
  const auto model = build_boundary_driven(1, 2, 1.0, 1.0, {1.0, 0.0, 2.0}, {0.1, 0.011, 2.0});
  EXPECT_TRUE(heat_current_poly(model).empty());
}

TEST(HeatCurrent, MatchesDenseFunctional) {
  const auto model = build_boundary_driven(1, 2, 1.0, 1.0, {1.0, 0.001, 2.0}, {0.1, 0.011, 2.0});
  const auto j = heat_current_poly(model);
  const Eigen::MatrixXcd h = dense(model.hamiltonian);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = testing::random_mixed_state(2, rng, 4).density();
    Eigen::MatrixXcd lhot = Eigen::MatrixXcd::Zero(4, 4);
    for (const auto& jump : model.jumps) {
      if (jump.bath == BathTag::hot) lhot += jump.rate * dissipate(dense(jump.op), rho);
    }
    const Complex expect = (h * lhot).trace();
    EXPECT_NEAR(std::abs((dense(j) * rho).trace() - expect), 0.0, 1e-12);
  }
}

TEST(HeatCurrent, SteadyCurrentIsPositiveOnSmallGrid) {
  const auto model = build_boundary_driven(2, 2, 1.0, 1.0, {1.0, 0.001, 2.0}, {0.1, 0.011, 2.0});
  const auto ss = exact_steady_state(model);
  EXPECT_GT(ss.state.expectation(heat_current_poly(model)), 0.0);
}

TEST(BoundaryDriven, NeedsTwoColumns) {
  EXPECT_THROW(build_boundary_driven(2, 1, 1.0, 1.0, {}, {}), GeometryError);
}

}  // namespace
}  // namespace qbound
