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

#include <Eigen/Eigenvalues>

#include "qbound/errors.hpp"
#include "qbound/models.hpp"
#include "qbound/oracle.hpp"
#include "qbound/relax.hpp"
#include "test_util.hpp"

namespace qbound {
namespace {

PauliString P(const char* text, std::size_t n) { return PauliString::parse(text, n); }

std::vector<double> exact_moments(const MomentRegistry& reg, const DenseState& state) {
  std::vector<double> y(reg.size());
  for (std::size_t i = 0; i < reg.size(); ++i) y[i] = state.expectation(reg.string(i));
  return y;
}

LindbladModel single_qubit_model(double gp, double gm) {
  LindbladModel m;
  m.hamiltonian = OperatorPoly(P("Z1", 1));
  m.jumps = {{gp, sigma_plus(1, 0), BathTag::hot}, {gm, sigma_minus(1, 0), BathTag::hot}};
  return m;
}

TEST(Registry, IdentityIsIndexZero) {
  MomentRegistry reg(2);
  EXPECT_EQ(reg.size(), 1u);
  EXPECT_TRUE(reg.string(MomentRegistry::kIdentity).is_identity());
  const auto a = reg.intern(P("X1", 2), IndexSet::objective);
  EXPECT_EQ(reg.intern(P("X1", 2), IndexSet::measured), a);
  EXPECT_TRUE(reg.in_set(a, IndexSet::objective));
  EXPECT_TRUE(reg.in_set(a, IndexSet::measured));
  EXPECT_FALSE(reg.in_set(a, IndexSet::positivity));
  EXPECT_THROW(reg.index_of(P("Z2", 2)), RegistryError);
  reg.freeze();
  EXPECT_THROW(reg.intern(P("Z2", 2), IndexSet::objective), RegistryError);
  EXPECT_EQ(reg.intern(P("X1", 2), IndexSet::guarantee), a);
}

TEST(Registry, SizesCountSets) {
  MomentRegistry reg(3);
  reg.note(build_tfi_2d(1, 3, 1.0, 1.0), IndexSet::objective);
  const auto s = reg.sizes();
  EXPECT_EQ(s.variables, 5u);
  EXPECT_EQ(s.objective, 5u);
  EXPECT_EQ(s.measured, 0u);
}

TEST(SteadyConstraints, SingleQubitFirstRow) {
  const double gp = 0.2, gm = 0.7;
  const auto model = single_qubit_model(gp, gm);
  MomentRegistry reg(1);
  const std::vector<PauliString> seeds{P("Z1", 1)};
  const auto rows = generate_steady_constraints(model, seeds, 5, reg);
  ASSERT_FALSE(rows.empty());
  // γ⁺(1 − z) − γ⁻(1 + z) = 0, i.e. −(γ⁺ + γ⁻) z = γ⁻ − γ⁺.
  const auto& r = rows.front();
  ASSERT_EQ(r.terms.size(), 1u);
  EXPECT_EQ(r.terms[0].first, reg.index_of(P("Z1", 1)));
  EXPECT_EQ(r.relation, Relation::equal);
  EXPECT_NEAR(r.rhs / r.terms[0].second, (gm - gp) / -(gp + gm), 1e-14);
}

TEST(SteadyConstraints, IdentitySeedIsTrivial) {
  const auto model = single_qubit_model(0.2, 0.7);
  MomentRegistry reg(1);
  const std::vector<PauliString> seeds{PauliString(1)};
  EXPECT_TRUE(generate_steady_constraints(model, seeds, 10, reg).empty());
}

TEST(SteadyConstraints, BudgetIsExact) {
  const auto model =
      build_boundary_driven(2, 2, 1.0, 1.0, {1.0, 0.001, 2.0}, {0.1, 0.011, 2.0});
  MomentRegistry reg(4);
  const auto j = heat_current_poly(model);
  reg.note(j, IndexSet::objective);
  std::vector<PauliString> seeds;
  for (const auto& [p, c] : j.terms()) {
    if (!p.is_identity()) seeds.push_back(p);
  }
  const auto rows = generate_steady_constraints(model, seeds, 120, reg);
  EXPECT_EQ(rows.size(), 120u);
  // Every row vanishes on the exact steady state.
  const auto ss = exact_steady_state(model);
  const auto y = exact_moments(reg, ss.state);
  for (const auto& r : rows) {
    double lhs = 0.0;
    for (const auto& [m, v] : r.terms) lhs += v * y[m];
    EXPECT_NEAR(lhs, r.rhs, 1e-9);
  }
}

TEST(Basis, ObjectiveOnlyRegistry) {
  MomentRegistry reg(2);
  const auto h = build_tfi_2d(1, 2, 1.0, 1.0);
  reg.note(h, IndexSet::objective);
  const auto sel = select_moment_basis(reg, 10);
  EXPECT_TRUE(sel.truncated);
  ASSERT_EQ(sel.basis.size(), 4u);
  EXPECT_TRUE(sel.basis[0].is_identity());
  // Equal frequencies fall back to canonical order.
  std::vector<PauliString> rest(sel.basis.begin() + 1, sel.basis.end());
  EXPECT_TRUE(std::is_sorted(rest.begin(), rest.end()));
}

TEST(Basis, FrequencyRanking) {
  MomentRegistry reg(2);
  const auto a = reg.intern(P("X1", 2), IndexSet::guarantee);
  const auto b = reg.intern(P("Z2", 2), IndexSet::guarantee);
  reg.count(a, 2);
  reg.count(b, 10);
  const auto sel = select_moment_basis(reg, 2);
  EXPECT_FALSE(sel.truncated);
  ASSERT_EQ(sel.basis.size(), 2u);
  EXPECT_EQ(sel.basis[1], P("Z2", 2));
}

TEST(MomentMatrix, TwoQubitGoldenExample) {
  MomentRegistry reg(2);
  const std::vector<PauliString> basis{PauliString(2), P("Z1", 2), P("Z2", 2), P("X1 X2", 2)};
  const auto m = build_moment_matrix(basis, reg);
  ASSERT_EQ(m.dim, 4u);
  auto expect_cell = [&](std::size_t r, std::size_t c, const char* s, Complex coeff) {
    const auto& e = m.cell(r, c);
    EXPECT_EQ(reg.string(e.moment), P(s, 2)) << r << "," << c;
    EXPECT_NEAR(std::abs(e.coeff - coeff), 0.0, 1e-15) << r << "," << c;
  };
  for (std::size_t k = 0; k < 4; ++k) expect_cell(k, k, "I", 1.0);
  expect_cell(0, 1, "Z1", 1.0);
  expect_cell(0, 2, "Z2", 1.0);
  expect_cell(0, 3, "X1 X2", 1.0);
  expect_cell(1, 2, "Z1 Z2", 1.0);
  expect_cell(1, 3, "Y1 X2", Complex(0, 1));
  expect_cell(2, 3, "X1 Y2", Complex(0, 1));
  expect_cell(3, 1, "Y1 X2", Complex(0, -1));
  expect_cell(3, 2, "X1 Y2", Complex(0, -1));
  EXPECT_TRUE(m.constant_matrix().isApprox(Eigen::MatrixXcd::Identity(4, 4)));
  Eigen::MatrixXcd a6 = Eigen::MatrixXcd::Zero(4, 4);
  a6(2, 3) = Complex(0, 1);
  a6(3, 2) = Complex(0, -1);
  EXPECT_TRUE(m.coefficient_matrix(reg.index_of(P("X1 Y2", 2))).isApprox(a6));
  for (std::size_t i : m.moments()) EXPECT_TRUE(reg.in_set(i, IndexSet::positivity));
}

TEST(MomentMatrix, DiagonalAndFirstRow) {
  std::mt19937_64 rng(2);
  MomentRegistry reg(3);
  std::vector<PauliString> basis{PauliString(3)};
  while (basis.size() < 8) {
    auto p = testing::random_string(3, rng);
    if (std::find(basis.begin(), basis.end(), p) == basis.end()) basis.push_back(p);
  }
  const auto m = build_moment_matrix(basis, reg);
  for (std::size_t r = 0; r < m.dim; ++r) {
    EXPECT_EQ(m.cell(r, r).moment, MomentRegistry::kIdentity);
    EXPECT_EQ(m.cell(0, r).moment, reg.index_of(basis[r]));
    EXPECT_EQ(m.cell(r, 0).moment, reg.index_of(basis[r]));
  }
}

TEST(MomentMatrix, PsdOnExactStates) {
  std::mt19937_64 rng(4);
  MomentRegistry reg(3);
  std::vector<PauliString> basis{PauliString(3)};
  while (basis.size() < 12) {
    auto p = testing::random_string(3, rng);
    if (std::find(basis.begin(), basis.end(), p) == basis.end()) basis.push_back(p);
  }
  const auto m = build_moment_matrix(basis, reg);
  for (int t = 0; t < 5; ++t) {
    const auto state = testing::random_mixed_state(3, rng, 2);
    const auto y = exact_moments(reg, state);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.evaluate(y));
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
  }
}

TEST(MomentMatrix, DuplicateBasisRejected) {
  MomentRegistry reg(1);
  const std::vector<PauliString> basis{P("Z1", 1), P("Z1", 1)};
  EXPECT_THROW(build_moment_matrix(basis, reg), ShapeError);
}

TEST(Rdm, SingleSiteIsBlochBall) {
  MomentRegistry reg(1);
  const std::vector<std::size_t> sites{0};
  const auto b = build_rdm_block(sites, reg);
  ASSERT_EQ(b.dim, 2u);
  std::vector<double> y(reg.size(), 0.0);
  y[0] = 1.0;
  const auto x = reg.index_of(P("X1", 1)), z = reg.index_of(P("Z1", 1));
  y[x] = 0.6;
  y[z] = 0.8;  // on the sphere: smallest eigenvalue 0
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> on(b.evaluate(y));
  EXPECT_NEAR(on.eigenvalues().minCoeff(), 0.0, 1e-14);
  y[z] = 0.9;  // outside the ball
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> out(b.evaluate(y));
  EXPECT_LT(out.eigenvalues().minCoeff(), 0.0);
}

TEST(Rdm, MatchesDensePartialTrace) {
  std::mt19937_64 rng(8);
  const auto state = testing::random_mixed_state(3, rng, 2);
  for (const std::vector<std::size_t>& sites :
       {std::vector<std::size_t>{0, 1}, {1, 2}, {0, 2}, {0, 1, 2}}) {
    MomentRegistry reg(3);
    const auto b = build_rdm_block(sites, reg);
    const auto y = exact_moments(reg, state);
    const auto expect = partial_trace(state, sites).density();
    EXPECT_LT((b.evaluate(y) - expect).norm(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b.evaluate(y));
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
  }
  MomentRegistry reg(5);
  const std::vector<std::size_t> big{0, 1, 2, 3};
  EXPECT_THROW(build_rdm_block(big, reg), SizeLimitError);
}

TEST(Rdm, TwoSitePrefactor) {
  MomentRegistry reg(2);
  const std::vector<std::size_t> sites{0, 1};
  const auto b = build_rdm_block(sites, reg);
  EXPECT_EQ(reg.size(), 16u);
  EXPECT_TRUE(b.constant_matrix().isApprox(0.25 * Eigen::MatrixXcd::Identity(4, 4)));
  const auto c = b.coefficient_matrix(reg.index_of(P("X1 Y2", 2)));
  EXPECT_LT((c - 0.25 * testing::dense(P("X1 Y2", 2))).norm(), 1e-15);
}

TEST(Symmetry, TranslationEquality) {
  MomentRegistry reg(4);
  OperatorPoly expr(P("X1 X2", 4));
  expr.add_term(P("X3 X4", 4), -1.0);
  const auto c = add_symmetry_constraint(expr, reg);
  EXPECT_EQ(c.relation, Relation::equal);
  EXPECT_EQ(c.terms.size(), 2u);
  EXPECT_DOUBLE_EQ(c.rhs, 0.0);
  EXPECT_TRUE(reg.in_set(reg.index_of(P("X3 X4", 4)), IndexSet::guarantee));
}

TEST(Symmetry, NonHermitianRejected) {
  MomentRegistry reg(1);
  EXPECT_THROW(add_symmetry_constraint(OperatorPoly(P("Z1", 1), Complex(0, 1)), reg), DomainError);
}

TEST(EnergyShell, TwoInequalities) {
  MomentRegistry reg(2);
  const auto h = build_tfi_2d(1, 2, 1.0, 1.0);
  const auto rows = energy_shell(h, -2.1, -2.0, reg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].relation, Relation::greater_equal);
  EXPECT_EQ(rows[1].relation, Relation::less_equal);
  EXPECT_DOUBLE_EQ(rows[0].rhs, -2.1);
  EXPECT_DOUBLE_EQ(rows[1].rhs, -2.0);
  EXPECT_THROW(energy_shell(h, 1.0, 0.0, reg), DomainError);
}

TEST(ToLinear, IdentityMovesToRhs) {
  MomentRegistry reg(1);
  OperatorPoly p(P("Z1", 1), 2.0);
  p.add_term(PauliString(1), 0.5);
  reg.note(p, IndexSet::guarantee);
  const auto c = to_linear(p, reg, Relation::equal, 1.0);
  EXPECT_DOUBLE_EQ(c.rhs, 0.5);
  ASSERT_EQ(c.terms.size(), 1u);
  EXPECT_DOUBLE_EQ(c.terms[0].second, 2.0);
}

}  // namespace
}  // namespace qbound
