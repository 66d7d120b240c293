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
#include <initializer_list>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "qbound/confidence.hpp"
#include "qbound/oracle.hpp"
#include "qbound/pauli.hpp"

namespace qbound {

/// Empirical mean of N projective ±1 outcomes: 2k/N − 1 with
/// k ~ Binomial(N, (1 + true_mean)/2).
double simulate_shots(double true_mean, std::int64_t shots, std::mt19937_64& rng);

/// Independent generator for one (seed, stream...) key. Keys are mixed with
/// SplitMix64 so neighbouring keys give unrelated streams on every platform.
std::mt19937_64 make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> key);

/// Ground-state moment of the Majumdar–Ghosh chain in the dimer covering
/// (0,1), (2,3), …: (−1)^{m/2} when every dimer carries either nothing or the
/// same letter on both sites, 0 otherwise. `shifted` selects the partner
/// covering (1,2), …, (n−1,0).
double mg_true_moment(const PauliString& p, bool shifted = false);

/// Source of true means for simulated measurements.
class ShotSource {
 public:
  enum class Kind { exact_state, analytic_mg };

  static ShotSource from_state(DenseState state);
  static ShotSource majumdar_ghosh(std::size_t num_qubits, bool shifted = false);

  Kind kind() const { return kind_; }
  std::size_t num_qubits() const { return num_qubits_; }
  double true_moment(const PauliString& p) const;
  /// Expectation of a Hermitian polynomial.
  double true_value(const OperatorPoly& poly) const;

  /// One record per observable with `shots` simulated outcomes each.
  std::vector<MeasurementRecord> measure(std::span<const OperatorPoly> observables,
                                         std::int64_t shots, std::mt19937_64& rng) const;
  /// Records at the exact means (the infinite-shot limit).
  std::vector<MeasurementRecord> exact_records(std::span<const OperatorPoly> observables) const;

 private:
  Kind kind_ = Kind::analytic_mg;
  std::size_t num_qubits_ = 0;
  bool shifted_ = false;
  std::shared_ptr<const DenseState> state_;
};

}  // namespace qbound
