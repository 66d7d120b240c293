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
#include "qbound/sampler.hpp"

namespace qbound {
namespace {

PauliString P(const char* text, std::size_t n) { return PauliString::parse(text, n); }

TEST(Shots, DegenerateMeans) {
  auto rng = make_stream(1, {0});
  for (int k = 0; k < 20; ++k) {
    EXPECT_EQ(simulate_shots(1.0, 37, rng), 1.0);
    EXPECT_EQ(simulate_shots(-1.0, 37, rng), -1.0);
  }
}

TEST(Shots, ZeroMeanConcentrates) {
  int inside = 0;
  const int trials = 2000;
  for (int s = 0; s < trials; ++s) {
    auto rng = make_stream(static_cast<std::uint64_t>(s), {42});
    if (std::abs(simulate_shots(0.0, 1000000, rng)) <= 5e-3) ++inside;
  }
  EXPECT_GE(static_cast<double>(inside) / trials, 0.9999);
}

TEST(Shots, DomainErrors) {
  auto rng = make_stream(1, {});
  EXPECT_THROW(simulate_shots(0.0, 0, rng), DomainError);
  EXPECT_THROW(simulate_shots(1.5, 10, rng), DomainError);
}

TEST(Streams, DeterministicAndKeyed) {
  auto a = make_stream(9, {1, 2, 3});
  auto b = make_stream(9, {1, 2, 3});
  auto c = make_stream(9, {1, 2, 4});
  auto d = make_stream(10, {1, 2, 3});
  const auto va = a(), vb = b(), vc = c(), vd = d();
  EXPECT_EQ(va, vb);
  EXPECT_NE(va, vc);
  EXPECT_NE(va, vd);
}

TEST(DimerMoments, PaperExamples) {
  EXPECT_EQ(mg_true_moment(P("X1 X2", 4)), -1.0);
  EXPECT_EQ(mg_true_moment(P("X1 X3", 4)), 0.0);
  EXPECT_EQ(mg_true_moment(P("X1 X2 Y3 Y4", 4)), 1.0);
  EXPECT_EQ(mg_true_moment(P("X1 Y2", 4)), 0.0);
  EXPECT_EQ(mg_true_moment(PauliString(4)), 1.0);
}

TEST(DimerMoments, MatchDenseSingletProduct) {
  for (std::size_t n : {4u, 6u}) {
    const auto state = singlet_product_state(n);
    const std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < total; ++code) {
      PauliString p(n);
      for (std::size_t s = 0; s < n; ++s) p.set(s, static_cast<PauliOp>((code >> (2 * s)) & 3));
      ASSERT_NEAR(mg_true_moment(p), state.expectation(p), 1e-12) << p.str();
    }
  }
}

TEST(DimerMoments, ShiftedCoveringWraps) {
  EXPECT_EQ(mg_true_moment(P("Z2 Z3", 4), true), -1.0);
  EXPECT_EQ(mg_true_moment(P("Z1 Z4", 4), true), -1.0);
  EXPECT_EQ(mg_true_moment(P("Z1 Z2", 4), true), 0.0);
}

TEST(ShotSource, GroundStateOfZ) {
  const auto gs = exact_ground_state(OperatorPoly(P("Z1", 1)));
  const auto src = ShotSource::from_state(gs.state);
  EXPECT_NEAR(src.true_moment(P("Z1", 1)), -1.0, 1e-14);
}

TEST(ShotSource, SingleQubitSteadyState) {
  const BathSpec bath{1.0, 0.001, 2.0};
  LindbladModel m;
  m.hamiltonian = OperatorPoly(P("Z1", 1));
  m.jumps = {{bath.gain_rate(), sigma_plus(1, 0), BathTag::hot},
             {bath.loss_rate(), sigma_minus(1, 0), BathTag::hot}};
  const auto src = ShotSource::from_state(exact_steady_state(m).state);
  const double expect =
      (bath.gain_rate() - bath.loss_rate()) / (bath.gain_rate() + bath.loss_rate());
  EXPECT_NEAR(src.true_moment(P("Z1", 1)), expect, 1e-12);
}

TEST(ShotSource, AnalyticSourceDelegates) {
  const auto src = ShotSource::majumdar_ghosh(50);
  PauliString p(50);
  p.set(10, PauliOp::Y);
  p.set(11, PauliOp::Y);
  EXPECT_EQ(src.true_moment(p), mg_true_moment(p));
  EXPECT_NEAR(src.true_value(build_majumdar_ghosh(50)), -18.75, 1e-12);
}

TEST(ShotSource, MeasurementIsReproducible) {
  const auto src = ShotSource::majumdar_ghosh(8);
  std::vector<OperatorPoly> obs;
  for (const char* s : {"X1 X2", "Z3 Z4", "Y5 Y6", "X1 X3"}) obs.emplace_back(P(s, 8));
  auto r1 = make_stream(5, {0, 1});
  auto r2 = make_stream(5, {0, 1});
  const auto a = src.measure(obs, 1000, r1);
  const auto b = src.measure(obs, 1000, r2);
  ASSERT_EQ(a.size(), obs.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].mean, b[k].mean);
    EXPECT_EQ(a[k].shots, 1000);
  }
  const auto exact = src.exact_records(obs);
  EXPECT_EQ(exact[0].mean, -1.0);
  EXPECT_EQ(exact[3].mean, 0.0);
}

}  // namespace
}  // namespace qbound
