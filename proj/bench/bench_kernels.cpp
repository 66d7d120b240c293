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


#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qbound/kernels.hpp"
#include "qbound/models.hpp"

namespace {

using namespace qbound;

std::vector<PauliString> sample_strings(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> letter(0, 3);
  std::vector<PauliString> out;
  for (std::size_t k = 0; k < count; ++k) {
    PauliString p(n);
    for (std::size_t s = 0; s < n; ++s) p.set(s, static_cast<PauliOp>(letter(rng)));
    out.push_back(p);
  }
  return out;
}

Eigen::MatrixXcd sample_density(std::size_t n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(d, d);
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace();
}

template <bool Parallel>
void BM_ToDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = build_tfi_2d(2, n / 2, 1.0, 1.0);
  for (auto _ : state) {
    auto m = Parallel ? kernels::to_dense_omp(h) : kernels::to_dense_serial(h);
    benchmark::DoNotOptimize(m.data());
  }
}

template <bool Parallel>
void BM_Expectations(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto rho = sample_density(n);
  const auto strings = sample_strings(n, 256, 7);
  std::vector<double> out(strings.size());
  for (auto _ : state) {
    if (Parallel) {
      kernels::expectations_omp(rho, strings, out);
    } else {
      kernels::expectations_serial(rho, strings, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(strings.size()));
}

template <bool Parallel>
void BM_PureExpectations(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Eigen::VectorXcd psi = Eigen::VectorXcd::Random(Eigen::Index{1} << n).normalized();
  const auto strings = sample_strings(n, 1024, 9);
  std::vector<double> out(strings.size());
  for (auto _ : state) {
    if (Parallel) {
      kernels::pure_expectations_omp(psi, strings, out);
    } else {
      kernels::pure_expectations_serial(psi, strings, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(strings.size()));
}

}  // namespace

BENCHMARK(BM_ToDense<false>)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ToDense<true>)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Expectations<false>)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Expectations<true>)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PureExpectations<false>)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PureExpectations<true>)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
