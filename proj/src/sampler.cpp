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


#include "qbound/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "qbound/errors.hpp"

namespace qbound {

double simulate_shots(double true_mean, std::int64_t shots, std::mt19937_64& rng) {
  if (shots < 1) throw DomainError("simulate_shots needs at least one shot");
  if (!(std::abs(true_mean) <= 1.0 + 1e-12)) throw DomainError("true mean outside [-1, 1]");
  const double p = std::clamp((1.0 + true_mean) / 2.0, 0.0, 1.0);
  std::binomial_distribution<std::int64_t> dist(shots, p);
  const auto k = dist(rng);
  return 2.0 * static_cast<double>(k) / static_cast<double>(shots) - 1.0;
}

std::mt19937_64 make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> key) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t h = splitmix(seed);
  for (std::uint64_t k : key) h = splitmix(h ^ splitmix(k + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return std::mt19937_64(seq);
}

double mg_true_moment(const PauliString& p, bool shifted) {
  const std::size_t n = p.size();
  if (n == 0 || n % 2 != 0) throw DomainError("dimer moments need an even number of sites");
  std::size_t weight = 0;
  for (std::size_t d = 0; d < n / 2; ++d) {
    const std::size_t a = (2 * d + (shifted ? 1 : 0)) % n;
    const std::size_t b = (a + 1) % n;
    const PauliOp oa = p.op(a);
    const PauliOp ob = p.op(b);
    if (oa != ob) return 0.0;
    if (oa != PauliOp::I) weight += 2;
  }
  return (weight / 2) % 2 == 0 ? 1.0 : -1.0;
}

ShotSource ShotSource::from_state(DenseState state) {
  ShotSource s;
  s.kind_ = Kind::exact_state;
  s.num_qubits_ = state.num_qubits();
  s.state_ = std::make_shared<const DenseState>(std::move(state));
  return s;
}

ShotSource ShotSource::majumdar_ghosh(std::size_t num_qubits, bool shifted) {
  if (num_qubits == 0 || num_qubits % 2 != 0) {
    throw DomainError("dimer source needs an even number of sites");
  }
  ShotSource s;
  s.kind_ = Kind::analytic_mg;
  s.num_qubits_ = num_qubits;
  s.shifted_ = shifted;
  return s;
}

double ShotSource::true_moment(const PauliString& p) const {
  if (p.size() != num_qubits_) throw ShapeError("string size differs from the source");
  if (kind_ == Kind::analytic_mg) return mg_true_moment(p, shifted_);
  return state_->expectation(p);
}

double ShotSource::true_value(const OperatorPoly& poly) const {
  if (poly.size() != num_qubits_) throw ShapeError("polynomial size differs from the source");
  if (!poly.is_hermitian()) throw DomainError("true value of a non-Hermitian polynomial");
  if (kind_ == Kind::exact_state) return state_->expectation(poly);
  double acc = 0.0;
  for (const auto& [p, c] : poly.terms()) acc += c.real() * mg_true_moment(p, shifted_);
  return acc;
}

std::vector<MeasurementRecord> ShotSource::measure(std::span<const OperatorPoly> observables,
                                                   std::int64_t shots,
                                                   std::mt19937_64& rng) const {
  std::vector<MeasurementRecord> out;
  out.reserve(observables.size());
  for (const auto& obs : observables) {
    const double mean = std::clamp(true_value(obs), -1.0, 1.0);
    out.push_back({obs, shots, simulate_shots(mean, shots, rng)});
  }
  return out;
}

std::vector<MeasurementRecord> ShotSource::exact_records(
    std::span<const OperatorPoly> observables) const {
  std::vector<MeasurementRecord> out;
  out.reserve(observables.size());
  for (const auto& obs : observables) {
    out.push_back({obs, 1, std::clamp(true_value(obs), -1.0, 1.0)});
  }
  return out;
}

}  // namespace qbound
