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

#include "qbound/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "qbound/errors.hpp"

namespace qbound {

void MeasurementRecord::validate() const {
  if (shots < 1) throw DomainError("measurement record needs at least one shot");
  if (!(std::abs(mean) <= 1.0)) throw DomainError("empirical mean must lie in [-1, 1]");
  if (!observable.is_hermitian()) throw DomainError("measured observable must be Hermitian");
}

double epsilon(std::int64_t shots, std::int64_t num_observables, double delta) {
  if (shots < 1) throw DomainError("epsilon: shot count must be >= 1");
  if (num_observables < 1) throw DomainError("epsilon: observable count must be >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("epsilon: delta must lie in (0, 1)");
  const double k = static_cast<double>(num_observables);
  return std::sqrt(2.0 * std::log(2.0 * k / delta) / static_cast<double>(shots));
}

double hoeffding_tail(std::int64_t shots, double eps) {
  if (shots < 1) throw DomainError("hoeffding_tail: shot count must be >= 1");
  if (!(eps > 0.0)) throw DomainError("hoeffding_tail: eps must be positive");
  return 2.0 * std::exp(-static_cast<double>(shots) * eps * eps / 2.0);
}

namespace {

IntervalConstraint make_band(const MeasurementRecord& r, double half_width) {
  IntervalConstraint band;
  band.observable = r.observable;
  band.center = r.mean;
  band.half_width = half_width;
  band.lower = std::max(-1.0, r.mean - half_width);
  band.upper = std::min(1.0, r.mean + half_width);
  return band;
}

}  // namespace

std::vector<IntervalConstraint> build_intervals(std::span<const MeasurementRecord> records,
                                                double delta) {
  if (records.empty()) throw DomainError("build_intervals: no measurement records");
  const auto k = static_cast<std::int64_t>(records.size());
  std::vector<IntervalConstraint> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    r.validate();
    out.push_back(make_band(r, epsilon(r.shots, k, delta)));
  }
  return out;
}

std::vector<IntervalConstraint> exact_intervals(std::span<const MeasurementRecord> records) {
  std::vector<IntervalConstraint> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    r.validate();
    out.push_back(make_band(r, 0.0));
  }
  return out;
}

std::vector<MeasurementRecord> load_records_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open measurement file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
    const std::size_t n = j.at("num_qubits").get<std::size_t>();
    std::vector<MeasurementRecord> out;
    for (const auto& rec : j.at("records")) {
      MeasurementRecord r;
      const auto& obs = rec.at("observable");
      r.observable = obs.is_string() ? OperatorPoly(PauliString::parse(obs.get<std::string>(), n))
                                     : poly_from_json(obs);
      r.shots = rec.at("shots").get<std::int64_t>();
      r.mean = rec.at("mean").get<double>();
      r.validate();
      out.push_back(std::move(r));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed measurement JSON " + path.string() + ": " + e.what());
  }
}

std::vector<MeasurementRecord> load_records_csv(const std::filesystem::path& path,
                                                std::size_t num_qubits) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open measurement file " + path.string());
  std::vector<MeasurementRecord> out;
  std::string line;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      if (line.rfind("observable", 0) == 0) continue;
    }
    std::stringstream ss(line);
    std::string obs, shots, mean;
    if (!std::getline(ss, obs, ',') || !std::getline(ss, shots, ',') || !std::getline(ss, mean, ',')) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected 3 columns");
    }
    MeasurementRecord r;
    try {
      r.observable = OperatorPoly(PauliString::parse(obs, num_qubits));
      r.shots = std::stoll(shots);
      r.mean = std::stod(mean);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    r.validate();
    out.push_back(std::move(r));
  }
  return out;
}

void save_records_csv(const std::filesystem::path& path, std::span<const MeasurementRecord> records) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "observable,shots,mean\n";
  out.precision(17);
  for (const auto& r : records) {
    const auto& terms = r.observable.terms();
    if (terms.size() != 1 || terms.begin()->second != Complex(1.0, 0.0)) {
      throw ConfigError("CSV export supports single unit-weight Pauli observables only");
    }
    out << terms.begin()->first.str() << ',' << r.shots << ',' << r.mean << '\n';
  }
}

}  // namespace qbound
