// Copyright 2026 The spvte Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <benchmark/benchmark.h>

#include "spvte/ansatz.hpp"
#include "spvte/qsim.hpp"

namespace spvte {
namespace {

void BM_SingleQubitGate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector s(n);
  const Gate g = Gate::ry(n / 2, 0.3);
  for (auto _ : state) {
    s.apply(g);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.dim()));
}
BENCHMARK(BM_SingleQubitGate)->DenseRange(4, 20, 4);

void BM_ToffoliGate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector s(n);
  const Gate g = Gate::toffoli(0, 1, n - 1);
  for (auto _ : state) {
    s.apply(g);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.dim()));
}
BENCHMARK(BM_ToffoliGate)->DenseRange(4, 20, 4);

void BM_AnsatzState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto wf = LayeredAnsatz::wavefunction(n, 4);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  RealVector theta(static_cast<std::size_t>(wf.param_count()));
  for (auto& t : theta) t = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(build_unitary_state(wf, theta));
}
BENCHMARK(BM_AnsatzState)->DenseRange(4, 12, 2);

void BM_ControlledAdder(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto layout = AdderLayout::contiguous(0, 1, n, 1 + n);
  const int width = 1 + n + adder_work_qubits(n);
  const Circuit c = adder_circuit(layout, ShiftDirection::Minus, width);
  StateVector s(width);
  s.apply(Gate::h(0));
  for (auto _ : state) {
    s.apply(c);
    benchmark::DoNotOptimize(s.amplitudes().data());
  }
}
BENCHMARK(BM_ControlledAdder)->DenseRange(3, 8, 1);

}  // namespace
}  // namespace spvte
