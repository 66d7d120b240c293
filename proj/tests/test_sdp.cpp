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

#include <sstream>

#include "qbound/confidence.hpp"
#include "qbound/errors.hpp"
#include "qbound/models.hpp"
#include "qbound/oracle.hpp"
#include "qbound/relax.hpp"
#include "qbound/sdp.hpp"
#include "test_util.hpp"

namespace qbound {
namespace {

PauliString P(const char* text, std::size_t n) { return PauliString::parse(text, n); }

IntervalConstraint band(const char* text, std::size_t n, double lo, double hi) {
  IntervalConstraint b;
  b.observable = OperatorPoly(P(text, n));
  b.center = 0.5 * (lo + hi);
  b.half_width = 0.5 * (hi - lo);
  b.lower = lo;
  b.upper = hi;
  return b;
}

std::vector<PauliString> all_strings(std::size_t n) {
  std::vector<PauliString> out;
  for (std::size_t code = 0; code < (std::size_t{1} << (2 * n)); ++code) {
    PauliString p(n);
    for (std::size_t s = 0; s < n; ++s) p.set(s, static_cast<PauliOp>((code >> (2 * s)) & 3));
    out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Solve, BoxOnlyLinearProgram) {
  MomentRegistry reg(1);
  const OperatorPoly obj(P("Z1", 1));
  reg.note(obj, IndexSet::objective);
  const auto p = assemble(reg, obj, {}, {}, {});
  const auto [lo, hi] = solve_both(p);
  EXPECT_NEAR(*lo.value, -1.0, 1e-9);
  EXPECT_NEAR(*hi.value, 1.0, 1e-9);
  EXPECT_EQ(lo.confidence, 1.0);
}

TEST(Solve, BandIntersection) {
  MomentRegistry reg(1);
  const OperatorPoly obj(P("Z1", 1));
  reg.note(obj, IndexSet::objective);
  const std::vector<IntervalConstraint> bands{band("Z1", 1, 0.25, 0.35)};
  AssemblyOptions opt;
  opt.delta = 0.01;
  const auto p = assemble(reg, obj, {}, {}, bands, opt);
  const auto [lo, hi] = solve_both(p);
  EXPECT_NEAR(*lo.value, 0.25, 1e-7);
  EXPECT_NEAR(*hi.value, 0.35, 1e-7);
  EXPECT_GE(*hi.value, 0.35 - 1e-12);
  EXPECT_LE(*lo.value, 0.25 + 1e-12);
  EXPECT_DOUBLE_EQ(lo.confidence, 0.99);
}

TEST(Solve, SymmetricBoxProblem) {
  MomentRegistry reg(1);
  const OperatorPoly obj(P("X1", 1));
  reg.note(obj, IndexSet::objective);
  const auto [lo, hi] = solve_both(assemble(reg, obj, {}, {}, {}));
  EXPECT_NEAR(*lo.value, -1.0, 1e-9);
  EXPECT_NEAR(*hi.value, 1.0, 1e-9);
}

TEST(Solve, EmptyObjective) {
  MomentRegistry reg(2);
  const auto r = solve(assemble(reg, OperatorPoly(2), {}, {}, {}));
  EXPECT_EQ(r.status, SolverStatus::optimal);
  EXPECT_DOUBLE_EQ(*r.value, 0.0);
}

TEST(Solve, InfeasibleBandsReported) {
  MomentRegistry reg(1);
  const OperatorPoly obj(P("Z1", 1));
  reg.note(obj, IndexSet::objective);
  const std::vector<IntervalConstraint> bands{band("Z1", 1, 0.2, 0.3), band("Z1", 1, 0.5, 0.6)};
  const auto r = solve(assemble(reg, obj, {}, {}, bands));
  EXPECT_EQ(r.status, SolverStatus::infeasible);
  EXPECT_FALSE(r.value.has_value());
}

TEST(Solve, InfeasibleSdpReported) {
  // ⟨X⟩ = ⟨Z⟩ = 0.9 is outside the Bloch ball.
  MomentRegistry reg(1);
  const std::vector<std::size_t> site{0};
  const std::vector<MomentMatrixSpec> blocks{build_rdm_block(site, reg)};
  const OperatorPoly obj(P("Y1", 1));
  const std::vector<IntervalConstraint> bands{band("X1", 1, 0.9, 0.9), band("Z1", 1, 0.9, 0.9)};
  const auto r = solve(assemble(reg, obj, blocks, {}, bands));
  EXPECT_EQ(r.status, SolverStatus::infeasible);
}

TEST(Solve, SingleQubitSteadyStatePinned) {
  const BathSpec bath{1.0, 0.001, 2.0};
  const double gp = bath.gain_rate(), gm = bath.loss_rate();
  LindbladModel m;
  m.hamiltonian = OperatorPoly(P("Z1", 1));
  m.jumps = {{gp, sigma_plus(1, 0), BathTag::hot}, {gm, sigma_minus(1, 0), BathTag::hot}};
  MomentRegistry reg(1);
  const OperatorPoly obj(P("Z1", 1));
  reg.note(obj, IndexSet::objective);
  const std::vector<PauliString> seeds{P("Z1", 1)};
  const auto rows = generate_steady_constraints(m, seeds, 10, reg);
  const std::vector<std::size_t> site{0};
  const std::vector<MomentMatrixSpec> blocks{build_rdm_block(site, reg)};
  const auto [lo, hi] = solve_both(assemble(reg, obj, blocks, rows, {}));
  const double expect = (gp - gm) / (gp + gm);
  EXPECT_NEAR(*lo.value, expect, 1e-6);
  EXPECT_NEAR(*hi.value, expect, 1e-6);
}

TEST(Solve, FullBasisTightForTwoQubitTfi) {
  const auto h = build_tfi_2d(1, 2, 1.0, 1.0);
  MomentRegistry reg(2);
  reg.note(h, IndexSet::objective);
  const auto basis = all_strings(2);
  const std::vector<MomentMatrixSpec> blocks{build_moment_matrix(basis, reg)};
  const auto p = assemble(reg, h, blocks, {}, {});
  EXPECT_TRUE(p.real_reduced);
  const auto r = solve(p);
  EXPECT_NEAR(*r.value, exact_ground_state(h).energy, 1e-6);
  EXPECT_NEAR(*r.value, -std::sqrt(4.25), 1e-6);
}

TEST(Solve, RealReductionMatchesComplexEmbedding) {
  const auto h = build_tfi_2d(1, 3, 0.8, 1.2);
  MomentRegistry reg(3);
  reg.note(h, IndexSet::objective);
  const auto sel = select_moment_basis(reg, 6);
  std::vector<PauliString> basis = sel.basis;
  basis.push_back(P("Y1 Y2", 3));
  basis.push_back(P("X2 Y3", 3));
  const std::vector<MomentMatrixSpec> blocks{build_moment_matrix(basis, reg)};
  AssemblyOptions real, cplx;
  cplx.real_reduction = false;
  const auto pr = assemble(reg, h, blocks, {}, {}, real);
  const auto pc = assemble(reg, h, blocks, {}, {}, cplx);
  EXPECT_TRUE(pr.real_reduced);
  EXPECT_FALSE(pc.real_reduced);
  EXPECT_EQ(pr.blocks.at(0).dim, basis.size());
  EXPECT_EQ(pc.blocks.at(0).dim, 2 * basis.size());
  EXPECT_NEAR(*solve(pr).value, *solve(pc).value, 1e-6);
}

TEST(Solve, GoldenBlockFeasibleAtExactMoments) {
  MomentRegistry reg(2);
  const std::vector<PauliString> basis{PauliString(2), P("Z1", 2), P("Z2", 2), P("X1 X2", 2)};
  const auto m = build_moment_matrix(basis, reg);
  const std::vector<MomentMatrixSpec> blocks{m};
  const OperatorPoly obj(P("Z1 Z2", 2));
  AssemblyOptions opt;
  opt.real_reduction = false;
  std::mt19937_64 rng(5);
  const auto state = testing::random_mixed_state(2, rng, 1);
  std::vector<IntervalConstraint> bands;
  for (std::size_t i = 1; i < reg.size(); ++i) {
    const double v = state.expectation(reg.string(i));
    IntervalConstraint b;
    b.observable = OperatorPoly(reg.string(i));
    b.lower = b.upper = b.center = v;
    bands.push_back(b);
  }
  const auto p = assemble(reg, obj, blocks, {}, bands, opt);
  EXPECT_EQ(p.blocks.at(0).dim, 8u);
  const auto r = solve(p);
  ASSERT_TRUE(r.value.has_value());
  EXPECT_NEAR(*r.value, state.expectation(P("Z1 Z2", 2)), 1e-9);
}

TEST(Solve, HeatCurrentBracketsOracle) {
  const auto model = build_boundary_driven(2, 2, 1.0, 1.0, {1.0, 0.001, 2.0}, {0.1, 0.011, 2.0});
  const auto j = heat_current_poly(model);
  MomentRegistry reg(4);
  reg.note(j, IndexSet::objective);
  std::vector<PauliString> seeds;
  for (const auto& [p, c] : j.terms()) {
    if (!p.is_identity()) seeds.push_back(p);
  }
  const auto rows = generate_steady_constraints(model, seeds, 100, reg);
  const auto sel = select_moment_basis(reg, 20);
  const std::vector<MomentMatrixSpec> blocks{build_moment_matrix(sel.basis, reg)};
  const auto [lo, hi] = solve_both(assemble(reg, j, blocks, rows, {}));
  const double truth = exact_steady_state(model).state.expectation(j);
  EXPECT_LE(*lo.value, truth + 1e-7);
  EXPECT_GE(*hi.value, truth - 1e-7);
}

TEST(Purity, SingleQubitUnconstrained) {
  MomentRegistry reg(1);
  const std::vector<PauliString> strings{P("X1", 1), P("Y1", 1), P("Z1", 1)};
  for (const auto& s : strings) reg.intern(s, IndexSet::objective);
  const auto spec = purity_epigraph(reg, strings, 2.0);
  const auto p = assemble(reg, spec, {}, {}, {});
  EXPECT_NEAR(*solve(p).value, 0.5, 1e-7);
  ConicProblem up = p;
  up.sense = Sense::maximize;
  EXPECT_THROW(solve(up), UnsupportedDirection);
  EXPECT_THROW(solve_both(p), UnsupportedDirection);
}

TEST(Purity, PinnedMomentsGiveEvaluatedValue) {
  MomentRegistry reg(1);
  const std::vector<PauliString> strings{P("X1", 1), P("Z1", 1)};
  for (const auto& s : strings) reg.intern(s, IndexSet::objective);
  const std::vector<IntervalConstraint> bands{band("X1", 1, 0.6, 0.6), band("Z1", 1, 0.3, 0.7)};
  const auto p = assemble(reg, purity_epigraph(reg, strings, 2.0), {}, {}, bands);
  // min over z in [0.3, 0.7] of (1 + 0.36 + z²)/2 at z = 0.3.
  EXPECT_NEAR(*solve(p).value, (1.0 + 0.36 + 0.09) / 2.0, 1e-7);
}

TEST(Purity, CompleteSetAtPureStateIsOne) {
  const auto gs = exact_ground_state(build_tfi_2d(1, 2, 1.0, 1.0));
  double sum = 1.0;
  for (const auto& p : all_strings(2)) {
    if (!p.is_identity()) sum += std::pow(gs.state.expectation(p), 2);
  }
  EXPECT_NEAR(sum / 4.0, 1.0, 1e-9);
}

TEST(Sdpa, BoxBecomesDiagonalLpBlock) {
  MomentRegistry reg(1);
  const OperatorPoly obj(P("Z1", 1));
  reg.note(obj, IndexSet::objective);
  const auto text = to_sdpa_string(assemble(reg, obj, {}, {}, {}));
  std::istringstream in(text);
  std::string comment;
  std::getline(in, comment);
  EXPECT_EQ(comment.rfind("* qbound sdpa export", 0), 0u);
  int m = 0, nblocks = 0, size = 0;
  in >> m >> nblocks >> size;
  EXPECT_EQ(m, 1);
  EXPECT_EQ(nblocks, 1);
  EXPECT_EQ(size, -2);
}

TEST(Sdpa, GoldenBlockEmbedsAsEightByEight) {
  MomentRegistry reg(2);
  const std::vector<PauliString> basis{PauliString(2), P("Z1", 2), P("Z2", 2), P("X1 X2", 2)};
  const std::vector<MomentMatrixSpec> blocks{build_moment_matrix(basis, reg)};
  AssemblyOptions opt;
  opt.real_reduction = false;
  const OperatorPoly obj(P("X1 Y2", 2));
  const auto text = to_sdpa_string(assemble(reg, obj, blocks, {}, {}, opt));
  std::istringstream in(text);
  std::string comment;
  std::getline(in, comment);
  int m = 0, nblocks = 0, first = 0;
  in >> m >> nblocks >> first;
  EXPECT_EQ(m, 6);
  EXPECT_EQ(first, 8);
}

TEST(Sdpa, DeterministicText) {
  const auto h = build_tfi_2d(1, 2, 1.0, 1.0);
  MomentRegistry reg(2);
  reg.note(h, IndexSet::objective);
  const auto basis = all_strings(2);
  const std::vector<MomentMatrixSpec> blocks{build_moment_matrix(basis, reg)};
  const auto p = assemble(reg, h, blocks, {}, {});
  EXPECT_EQ(to_sdpa_string(p), to_sdpa_string(p));
}

TEST(Assemble, RejectsComplexObjective) {
  MomentRegistry reg(1);
  const OperatorPoly obj(P("Z1", 1), Complex(0, 1));
  reg.note(obj, IndexSet::objective);
  EXPECT_THROW(assemble(reg, obj, {}, {}, {}), DomainError);
}

TEST(Assemble, RejectsUnregisteredStrings) {
  MomentRegistry reg(1);
  EXPECT_THROW(assemble(reg, OperatorPoly(P("Z1", 1)), {}, {}, {}), RegistryError);
}

}  // namespace
}  // namespace qbound
