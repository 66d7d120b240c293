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
#include <filesystem>
#include <fstream>

#include "qbound/confidence.hpp"
#include "qbound/errors.hpp"

namespace qbound {
namespace {

// Reference values evaluated with 40-digit arithmetic (mpmath) from
// sqrt(2 ln(2K/δ) / N).
constexpr double kEps1000_100 = 0.149046706483988193;
constexpr double kEps10000_1 = 0.036061863986416378;

MeasurementRecord record(const char* text, std::size_t n, std::int64_t shots, double mean) {
  return {OperatorPoly(PauliString::parse(text, n)), shots, mean};
}

TEST(Epsilon, ReferenceValue) {
  EXPECT_NEAR(epsilon(1000, 100, 0.003), kEps1000_100, 1e-15);
  EXPECT_NEAR(epsilon(10000, 1, 0.003), kEps10000_1, 1e-15);
}

TEST(Epsilon, ScalesAsInverseRootShots) {
  for (std::int64_t n : {1, 10, 1000, 123457}) {
    EXPECT_NEAR(epsilon(4 * n, 50, 0.01), epsilon(n, 50, 0.01) / 2.0, 1e-15);
  }
}

TEST(Epsilon, GrowsWithObservableCount) {
  EXPECT_GT(epsilon(1000, 200, 0.003), epsilon(1000, 100, 0.003));
  EXPECT_GT(epsilon(1000, 2, 0.003), epsilon(1000, 1, 0.003));
}

TEST(Epsilon, DomainErrors) {
  EXPECT_THROW(epsilon(0, 1, 0.1), DomainError);
  EXPECT_THROW(epsilon(10, 0, 0.1), DomainError);
  EXPECT_THROW(epsilon(10, 1, 0.0), DomainError);
  EXPECT_THROW(epsilon(10, 1, 1.0), DomainError);
}

TEST(HoeffdingTail, InvertsEpsilon) {
  EXPECT_NEAR(hoeffding_tail(1000, epsilon(1000, 100, 0.003)), 0.003 / 100, 1e-15);
  EXPECT_NEAR(hoeffding_tail(1, 2.0), 2.0 * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(hoeffding_tail(1, 2.0), 0.27067, 1e-5);
}

TEST(HoeffdingTail, Monotone) {
  EXPECT_LT(hoeffding_tail(200, 0.1), hoeffding_tail(100, 0.1));
  EXPECT_LT(hoeffding_tail(100, 0.2), hoeffding_tail(100, 0.1));
  EXPECT_THROW(hoeffding_tail(0, 0.1), DomainError);
  EXPECT_THROW(hoeffding_tail(10, -0.1), DomainError);
}

TEST(Intervals, SingleRecordBand) {
  const std::vector<MeasurementRecord> recs{record("Z1", 1, 10000, 0.3)};
  const auto bands = build_intervals(recs, 0.003);
  ASSERT_EQ(bands.size(), 1u);
  EXPECT_NEAR(bands[0].center, 0.3, 1e-15);
  EXPECT_NEAR(bands[0].half_width, kEps10000_1, 1e-15);
  EXPECT_NEAR(bands[0].lower, 0.3 - kEps10000_1, 1e-15);
  EXPECT_NEAR(bands[0].upper, 0.3 + kEps10000_1, 1e-15);
}

TEST(Intervals, ClippedToSpectrum) {
  const std::vector<MeasurementRecord> recs{record("X1", 2, 10, 0.95), record("Y2", 2, 10, -0.9)};
  const auto bands = build_intervals(recs, 0.05);
  EXPECT_DOUBLE_EQ(bands[0].upper, 1.0);
  EXPECT_DOUBLE_EQ(bands[1].lower, -1.0);
  EXPECT_LT(bands[0].lower, 0.95);
}

TEST(Intervals, EqualShotsShareWidth) {
  std::vector<MeasurementRecord> recs;
  for (const char* s : {"X1", "Y1", "Z1", "X1 X2", "Z2"}) recs.push_back(record(s, 2, 500, 0.1));
  const auto bands = build_intervals(recs, 0.01);
  for (const auto& b : bands) EXPECT_DOUBLE_EQ(b.half_width, epsilon(500, 5, 0.01));
}

TEST(Intervals, ExactBandsHaveZeroWidth) {
  const std::vector<MeasurementRecord> recs{record("Z1", 1, 1, -0.25)};
  const auto bands = exact_intervals(recs);
  EXPECT_DOUBLE_EQ(bands[0].lower, -0.25);
  EXPECT_DOUBLE_EQ(bands[0].upper, -0.25);
}

TEST(Intervals, InvalidRecordsRejected) {
  EXPECT_THROW(build_intervals(std::vector<MeasurementRecord>{record("Z1", 1, 0, 0.0)}, 0.1),
               DomainError);
  EXPECT_THROW(build_intervals(std::vector<MeasurementRecord>{record("Z1", 1, 10, 1.5)}, 0.1),
               DomainError);
  EXPECT_THROW(build_intervals(std::vector<MeasurementRecord>{record("Z1", 1, 10, 0.0)}, 1.5),
               DomainError);
}

TEST(Records, CsvRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "qbound_records_test.csv";
  const std::vector<MeasurementRecord> recs{record("X1 Z3", 3, 400, 0.125), record("Y2", 3, 17, -1.0)};
  save_records_csv(path, recs);
  const auto back = load_records_csv(path, 3);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].observable, recs[0].observable);
  EXPECT_EQ(back[1].shots, 17);
  EXPECT_DOUBLE_EQ(back[0].mean, 0.125);
  std::filesystem::remove(path);
}

TEST(Records, JsonLoad) {
  const auto path = std::filesystem::temp_directory_path() / "qbound_records_test.json";
  {
    std::ofstream out(path);
    out << R"({"num_qubits": 2, "records": [{"observable": "X1 X2", "shots": 100, "mean": 0.5}]})";
  }
  const auto recs = load_records_json(path);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].shots, 100);
  std::filesystem::remove(path);
  EXPECT_THROW(load_records_json(path), ConfigError);
}

}  // namespace
}  // namespace qbound
