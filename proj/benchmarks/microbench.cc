// Microbenchmarks for the hot paths: gate application at several widths and
// worker counts, shot sampling, and the runtime's synchronized surfaces.

#include <benchmark/benchmark.h>

#include "qcrt/algorithms/bell.hpp"
#include "qcrt/algorithms/shor.hpp"
#include "qcrt/buffer.hpp"
#include "qcrt/qpu_manager.hpp"
#include "qcrt/simulator.hpp"

namespace {

void BM_ApplyH(benchmark::State& state) {
  const auto n_qubits = static_cast<std::uint32_t>(state.range(0));
  const int workers = static_cast<int>(state.range(1));
  qcrt::StateVector sv(n_qubits);
  const qcrt::Instruction h = qcrt::Instruction::h(n_qubits / 2);
  for (auto _ : state) {
    qcrt::apply_gate(sv, h, workers);
    benchmark::DoNotOptimize(sv.amplitudes_mut().data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(sv.dimension()));
}
BENCHMARK(BM_ApplyH)->Args({12, 1})->Args({18, 1})->Args({18, 2})->Args({22, 1})->Args({22, 2});

void BM_ApplyCx(benchmark::State& state) {
  const auto n_qubits = static_cast<std::uint32_t>(state.range(0));
  const int workers = static_cast<int>(state.range(1));
  qcrt::StateVector sv(n_qubits);
  const qcrt::Instruction cx = qcrt::Instruction::cx(0, n_qubits - 1);
  for (auto _ : state) {
    qcrt::apply_gate(sv, cx, workers);
    benchmark::DoNotOptimize(sv.amplitudes_mut().data());
  }
}
BENCHMARK(BM_ApplyCx)->Args({18, 1})->Args({18, 2})->Args({22, 1})->Args({22, 2});

void BM_BellShots(benchmark::State& state) {
  const auto shots = static_cast<std::uint64_t>(state.range(0));
  const qcrt::Circuit bell = qcrt::algo::bell_kernel();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcrt::run_shots(bell, shots, seed++));
  }
}
BENCHMARK(BM_BellShots)->Arg(1024)->Arg(8192);

void BM_ShorKernelBatch(benchmark::State& state) {
  qcrt::algo::ShorParams params;
  params.modulus = 15;
  params.base = 7;
  const qcrt::Circuit kernel = qcrt::algo::shor_kernel(params);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcrt::run_shots(kernel, 10, seed++));
  }
}
BENCHMARK(BM_ShorKernelBatch);

void BM_Qalloc(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(qcrt::qalloc(2));
  }
}
BENCHMARK(BM_Qalloc)->Threads(1)->Threads(4);

void BM_QpuManagerSetGet(benchmark::State& state) {
  auto acc = qcrt::get_accelerator("statevector");
  for (auto _ : state) {
    qcrt::QpuManager::instance().set(acc);
    benchmark::DoNotOptimize(qcrt::QpuManager::instance().get());
  }
}
BENCHMARK(BM_QpuManagerSetGet)->Threads(1)->Threads(4);

}  // namespace

BENCHMARK_MAIN();
