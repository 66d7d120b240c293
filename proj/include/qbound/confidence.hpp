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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "qbound/pauli.hpp"

namespace qbound {

/// Empirical mean of `shots` projective measurements of an observable whose
/// spectrum lies in [−1, 1].
struct MeasurementRecord {
  OperatorPoly observable;
  std::int64_t shots = 1;
  double mean = 0.0;

  void validate() const;
};

/// lower ≤ ⟨observable⟩ ≤ upper, already intersected with [−1, 1].
struct IntervalConstraint {
  OperatorPoly observable;
  double center = 0.0;
  double half_width = 0.0;
  double lower = -1.0;
  double upper = 1.0;
};

/// Hoeffding half-width with a union bound over K observables:
/// sqrt(2 ln(2K/δ) / N).
double epsilon(std::int64_t shots, std::int64_t num_observables, double delta);

/// 2 exp(−N ε² / 2), the two-sided deviation probability bound.
double hoeffding_tail(std::int64_t shots, double eps);

/// One band per record, jointly valid with probability at least 1 − δ.
std::vector<IntervalConstraint> build_intervals(std::span<const MeasurementRecord> records,
                                                double delta);

/// Zero-width bands at the given means (the infinite-shot limit).
std::vector<IntervalConstraint> exact_intervals(std::span<const MeasurementRecord> records);

/// Records from JSON: {"num_qubits": n, "records": [{"observable": "X1 Y2",
/// "shots": 1000, "mean": 0.12}, ...]}. "observable" may also be a
/// polynomial object as produced by to_json(OperatorPoly).
std::vector<MeasurementRecord> load_records_json(const std::filesystem::path& path);
/// Records from CSV with header "observable,shots,mean"; observables are
/// single Pauli strings in "X1 Y2" form.
std::vector<MeasurementRecord> load_records_csv(const std::filesystem::path& path,
                                                std::size_t num_qubits);
void save_records_csv(const std::filesystem::path& path, std::span<const MeasurementRecord> records);

}  // namespace qbound
