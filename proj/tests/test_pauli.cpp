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
#include "qbound/pauli.hpp"
#include "test_util.hpp"

namespace qbound {
namespace {

using testing::dense;

PauliString P(const char* text, std::size_t n) { return PauliString::parse(text, n); }

TEST(PauliMultiply, SingleSiteCyclicRule) {
  const auto r = multiply(P("X1", 1), P("Y1", 1));
  EXPECT_EQ(r.phase, Phase::i());
  EXPECT_EQ(r.string, P("Z1", 1));
  const auto back = multiply(P("Y1", 1), P("X1", 1));
  EXPECT_EQ(back.phase, Phase::minus_i());
}

TEST(PauliMultiply, ZTimesXXGivesIYX) {
  const auto r = multiply(P("Z1", 2), P("X1 X2", 2));
  EXPECT_EQ(r.phase, Phase::i());
  EXPECT_EQ(r.string, P("Y1 X2", 2));
}

TEST(PauliMultiply, Involution) {
  const auto r = multiply(P("Z1 Z2", 2), P("Z1 Z2", 2));
  EXPECT_EQ(r.phase, Phase::one());
  EXPECT_TRUE(r.string.is_identity());
}

TEST(PauliMultiply, AgreesWithDenseProductOnRandomStrings) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto a = testing::random_string(n, rng, true);
    const auto b = testing::random_string(n, rng, true);
    const auto r = multiply(a, b);
    const Eigen::MatrixXcd expect = dense(a) * dense(b);
    const Eigen::MatrixXcd got = r.phase.value() * dense(r.string);
    ASSERT_LT((expect - got).norm(), 1e-12) << a.str() << " * " << b.str();
    EXPECT_EQ(a.commutes_with(b), r.phase.is_real());
  }
}

TEST(PauliMultiply, WideStringsCrossWordBoundary) {
  PauliString a(130), b(130);
  a.set(0, PauliOp::X);
  a.set(64, PauliOp::Y);
  a.set(129, PauliOp::Z);
  b.set(64, PauliOp::Z);
  b.set(129, PauliOp::Z);
  const auto r = multiply(a, b);
  EXPECT_EQ(r.phase, Phase::i());  // Y·Z = iX
  EXPECT_EQ(r.string.op(64), PauliOp::X);
  EXPECT_EQ(r.string.op(129), PauliOp::I);
  EXPECT_EQ(r.string.op(0), PauliOp::X);
}

TEST(PauliMultiply, SizeMismatchThrows) {
  EXPECT_THROW(multiply(P("X1", 1), P("X1", 2)), ShapeError);
}

TEST(PauliString, TextRoundTrip) {
  const auto p = P("X1 Y3 Z4", 5);
  EXPECT_EQ(p.str(), "X1 Y3 Z4");
  EXPECT_EQ(p.letters(), "XIYZI");
  EXPECT_EQ(PauliString::from_letters("XIYZI"), p);
  EXPECT_EQ(P("XIYZI", 5), p);
  EXPECT_EQ(p.weight(), 3u);
  EXPECT_EQ(p.y_count(), 1u);
  EXPECT_FALSE(p.is_real_matrix());
  EXPECT_THROW(P("X6", 5), ShapeError);
  EXPECT_THROW(P("X1 Y1", 5), ShapeError);
  EXPECT_THROW(P("Q1", 5), ShapeError);
}

TEST(Commutator, SingleQubit) {
  const auto c = commutator(OperatorPoly(P("Z1", 1)), P("X1", 1));
  EXPECT_EQ(c.num_terms(), 1u);
  EXPECT_NEAR(std::abs(c.coeff(P("Y1", 1)) - Complex(0, 2)), 0.0, 1e-15);
  EXPECT_TRUE(commutator(OperatorPoly(P("Z1", 1)), P("Z1", 1)).empty());
}

TEST(Commutator, TfiDimerAgainstDenseMatrices) {
  const auto h = build_tfi_2d(1, 2, 1.0, 1.0);
  const auto z1 = P("Z1", 2);
  const auto c = commutator(h, z1);
  const Eigen::MatrixXcd expect = dense(h) * dense(z1) - dense(z1) * dense(h);
  EXPECT_LT((dense(c) - expect).norm(), 1e-13);
  // [X1X2/2, Z1] = -i Y1X2.
  EXPECT_NEAR(std::abs(c.coeff(P("Y1 X2", 2)) - Complex(0, -1)), 0.0, 1e-15);
}

TEST(OperatorPoly, AddCancels) {
  OperatorPoly a(P("X1", 1));
  const auto s = add(a, scale(a, -1.0));
  EXPECT_TRUE(s.empty());
}

TEST(OperatorPoly, SigmaPlusMinusProduct) {
  const auto sp = sigma_plus(1, 0);
  const auto sm = sigma_minus(1, 0);
  const auto prod = multiply_poly(sp, sm);
  OperatorPoly expect = OperatorPoly::identity(1, 0.5);
  expect.add_term(P("Z1", 1), 0.5);
  EXPECT_EQ(prod, expect);
  EXPECT_LT((dense(prod) - dense(sp) * dense(sm)).norm(), 1e-14);
  EXPECT_EQ(conjugate_transpose(sp), sm);
}

TEST(OperatorPoly, HermiticityCheck) {
  OperatorPoly h(2);
  h.add_term(P("X1 Y2", 2), 0.5);
  EXPECT_TRUE(h.is_hermitian());
  h.add_term(P("Z1", 2), Complex(0, 1));
  EXPECT_FALSE(h.is_hermitian());
}

TEST(OperatorPoly, ProductMatchesDenseOnRandomPolys) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    OperatorPoly a(3), b(3);
    for (int k = 0; k < 4; ++k) {
      a.add_term(testing::random_string(3, rng, true), {g(rng), g(rng)});
      b.add_term(testing::random_string(3, rng, true), {g(rng), g(rng)});
    }
    EXPECT_LT((dense(a * b) - dense(a) * dense(b)).norm(), 1e-12);
    EXPECT_LT((dense(conjugate_transpose(a)) - dense(a).adjoint()).norm(), 1e-12);
  }
}

TEST(OperatorPoly, JsonRoundTrip) {
  OperatorPoly a(3);
  a.add_term(P("X1 Z3", 3), {0.25, -1.5});
  a.add_term(P("I", 3), 2.0);
  EXPECT_EQ(poly_from_json(to_json(a)), a);
}

}  // namespace
}  // namespace qbound
