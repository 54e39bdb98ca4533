// Copyright 2026 The rydgate Authors
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

#include <random>

#include <benchmark/benchmark.h>

#include "rydgate/circuit.hpp"
#include "rydgate/gatelib.hpp"
#include "rydgate/io.hpp"
#include "rydgate/propagator.hpp"
#include "rydgate/pulseopt.hpp"
#include "rydgate/vqe.hpp"

namespace rydgate {
namespace {

PulseSegment some_segment(int n, double J) {
  return PulseSegment::uniform(n, 0.7 * J, 0.3, -0.4 * J, 1.6 / J, "bench");
}

void BM_SegmentUnitary(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto reg = reference_register(n, Geometry::ChainOpen);
  auto seg = some_segment(n, reg.nn_coupling());
  for (auto _ : state) benchmark::DoNotOptimize(segment_unitary(reg, seg));
}
BENCHMARK(BM_SegmentUnitary)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_ChebyshevSegment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto reg = reference_register(n, Geometry::ChainOpen);
  auto seg = some_segment(n, reg.nn_coupling());
  const RMatrix coupling = coupling_matrix(reg);
  CVector psi = CVector::Zero(Eigen::Index{1} << n);
  psi(0) = 1.0;
  for (auto _ : state) {
    CVector v = psi;
    apply_segment_chebyshev(reg, coupling, seg, v);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_ChebyshevSegment)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_OptimizerRestart(benchmark::State& state) {
  auto reg = reference_register(4, Geometry::ChainPeriodic);
  OptimizerConfig cfg;
  cfg.p_max = static_cast<int>(state.range(0));
  auto target = rotation_target(4, {digital::Axis::X, 1});
  int seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_restart(target, reg, cfg, seed++, nullptr));
}
BENCHMARK(BM_OptimizerRestart)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_CompileCircuit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto reg = reference_register(n, Geometry::ChainOpen);
  auto lib = RotationLibrary::ideal(kReferenceRotationUs);
  auto circuit = compile_swap_network(n);
  for (auto _ : state) benchmark::DoNotOptimize(compile_circuit(circuit, reg, lib));
}
BENCHMARK(BM_CompileCircuit)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_VqeEnergy(benchmark::State& state) {
  auto h = vqe::load_fixture(RYDGATE_DATA_DIR "/fixtures/lih_sto3g.json");
  vqe::Ansatz a({h.n_qubits(), h.n_qubits(), vqe::Backend::Ideal});
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RVector th(a.spec().parameter_count());
  for (auto& x : th) x = u(rng);
  const auto hf = vqe::hartree_fock_state(h.n_qubits(), h.n_pairs());
  for (auto _ : state) benchmark::DoNotOptimize(vqe::energy(h, a.prepare(hf, th)));
}
BENCHMARK(BM_VqeEnergy)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace rydgate

BENCHMARK_MAIN();
