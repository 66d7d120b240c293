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

#include "qbound/kernels.hpp"
#include "qbound/models.hpp"
#include "test_util.hpp"

namespace qbound {
namespace {

Eigen::MatrixXcd kron_dense(const PauliString& p) {
  Eigen::Matrix2cd m[4];
  m[0] << 1, 0, 0, 1;
  m[1] << 0, 1, 1, 0;
  m[2] << 0, Complex(0, -1), Complex(0, 1), 0;
  m[3] << 1, 0, 0, -1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t s = 0; s < p.size(); ++s) {
    const Eigen::Matrix2cd& f = m[static_cast<int>(p.op(s))];
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * f;
    }
    out = next;
  }
  return out;
}

TEST(Kernels, DenseMatchesKroneckerProduct) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto p = testing::random_string(1 + t % 4, rng, true);
    EXPECT_LT((kernels::to_dense_serial(OperatorPoly(p)) - kron_dense(p)).norm(), 1e-15) << p.str();
  }
}

TEST(Kernels, SerialAndParallelDenseAgreeExactly) {
  const auto h = build_tfi_2d(2, 3, 0.7, 1.3);
  const Eigen::MatrixXcd a = kernels::to_dense_serial(h);
  const Eigen::MatrixXcd b = kernels::to_dense_omp(h);
  EXPECT_TRUE((a.array() == b.array()).all());
}

TEST(Kernels, ExpectationsAgreeExactly) {
  std::mt19937_64 rng(2);
  const auto rho = testing::random_mixed_state(5, rng, 3).density();
  const auto psi = testing::random_pure_state(5, rng).vector();
  std::vector<PauliString> strings;
  for (int k = 0; k < 64; ++k) strings.push_back(testing::random_string(5, rng, true));
  std::vector<double> s1(strings.size()), s2(strings.size()), p1(strings.size()), p2(strings.size());
  kernels::expectations_serial(rho, strings, s1);
  kernels::expectations_omp(rho, strings, s2);
  kernels::pure_expectations_serial(psi, strings, p1);
  kernels::pure_expectations_omp(psi, strings, p2);
  EXPECT_EQ(s1, s2);
  EXPECT_EQ(p1, p2);
  for (std::size_t k = 0; k < strings.size(); ++k) {
    const Eigen::MatrixXcd m = kron_dense(strings[k]);
    EXPECT_NEAR(s1[k], (m * rho).trace().real(), 1e-12);
    EXPECT_NEAR(p1[k], psi.dot(m * psi).real(), 1e-12);
  }
}

}  // namespace
}  // namespace qbound
