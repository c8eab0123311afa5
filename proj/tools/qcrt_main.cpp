// qcrt: run kernels, benchmark one-by-one vs parallel execution, sweep
// worker counts, and generate random benchmark kernels.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qcrt/algorithms/bell.hpp"
#include "qcrt/bench/bench.hpp"
#include "qcrt/buffer.hpp"
#include "qcrt/dsl/kernel.hpp"
#include "qcrt/runtime.hpp"

namespace {

int env_workers_default() {
  const char* raw = std::getenv(qcrt::kWorkersPerKernelEnv);
  if (raw == nullptr) return 1;
  const int value = std::atoi(raw);
  return value >= 1 ? value : 1;
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

qcrt::bench::Workload parse_workload(const std::string& name, std::string& kernel_path) {
  if (name == "bell") return qcrt::bench::Workload::Bell;
  if (name == "shor") return qcrt::bench::Workload::Shor;
  if (name == "vqe") return qcrt::bench::Workload::Vqe;
  if (name.rfind("file:", 0) == 0) {
    kernel_path = name.substr(5);
    return qcrt::bench::Workload::File;
  }
  throw CLI::ValidationError("--workload", "expected bell, shor, vqe or file:<path.xqk>");
}

struct RunArgs {
  std::string kernel_path;
  std::string workload;
  std::uint32_t size = 0;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 42;
  int workers = 1;
  int shot_workers = 1;
  std::vector<double> args;
};

int cmd_run(const RunArgs& a) {
  qcrt::Circuit kernel;
  if (!a.kernel_path.empty()) {
    const qcrt::dsl::KernelSource source = qcrt::dsl::parse_kernel_file(a.kernel_path);
    const std::uint32_t size = a.size != 0 ? a.size : 2;
    kernel = qcrt::dsl::lower(source, size, a.args);
  } else if (a.workload == "bell") {
    kernel = qcrt::algo::bell_kernel();
  } else {
    std::cerr << "qcrt run: need --kernel <file.xqk> or --workload bell\n";
    return 2;
  }
  if (!kernel.has_measure()) {
    std::cerr << "qcrt run: kernel has no Measure instruction\n";
    return 2;
  }

  qcrt::initialize_worker("statevector", {{"seed", a.seed},
                                          {"shots", a.shots},
                                          {"gate_workers", a.workers},
                                          {"shot_workers", a.shot_workers}});
  qcrt::BufferPtr buffer = qcrt::qalloc(kernel.num_qubits());
  qcrt::execute(kernel, *buffer, a.shots);
  std::cout << qcrt::buffer_to_json(*buffer);
  return 0;
}

struct BenchArgs {
  std::string workload = "bell";
  std::string mode = "parallel";
  std::string preset;
  std::string out;
  std::string baseline_path;
  qcrt::bench::BenchSpec spec;
  bool workers_set = false;
};

int cmd_bench(BenchArgs& a) {
  a.spec.workload = parse_workload(a.workload, a.spec.kernel_path);
  if (a.mode == "one-by-one") {
    a.spec.mode = qcrt::bench::Mode::OneByOne;
  } else if (a.mode == "parallel") {
    a.spec.mode = qcrt::bench::Mode::Parallel;
  } else {
    std::cerr << "qcrt bench: --mode must be one-by-one or parallel\n";
    return 2;
  }

  if (a.preset == "paper-eval") {
    // Ryzen9 3900X setup: two tasks sharing a 24-thread budget, 1024 shots,
    // shot-level parallelism off.
    a.spec.tasks = 2;
    a.spec.shots = 1024;
    a.spec.repetitions = 5;
    a.spec.shot_workers = 1;
    if (!a.workers_set) {
      a.spec.workers_per_kernel = a.spec.mode == qcrt::bench::Mode::Parallel ? 12 : 24;
    }
  } else if (!a.preset.empty()) {
    std::cerr << "qcrt bench: unknown preset '" << a.preset << "'\n";
    return 2;
  }

  qcrt::bench::BenchReport report = qcrt::bench::run_bench(a.spec);
  if (!a.baseline_path.empty()) {
    std::ifstream in(a.baseline_path);
    if (!in) throw std::runtime_error("cannot read baseline " + a.baseline_path);
    nlohmann::json j;
    in >> j;
    report.set_baseline(qcrt::bench::BenchReport::from_json(j), a.baseline_path);
  }
  write_or_print(a.out, report.to_json().dump(2) + "\n");
  if (!report.valid) {
    std::cerr << "qcrt bench: run failed validation: " << report.validation_error << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-classical runtime and benchmark harness"};
  app.require_subcommand(1);

  // --- run ---
  RunArgs run_args;
  run_args.workers = env_workers_default();
  CLI::App* run = app.add_subcommand("run", "execute a kernel and print the buffer JSON");
  run->add_option("--kernel", run_args.kernel_path, "kernel source file (.xqk)");
  run->add_option("--workload", run_args.workload, "built-in kernel name (bell)");
  run->add_option("--size", run_args.size, "register size for file kernels");
  run->add_option("--shots", run_args.shots, "shots to execute");
  run->add_option("--seed", run_args.seed, "random seed");
  run->add_option("--workers-per-kernel", run_args.workers, "inner amplitude workers");
  run->add_option("--shot-workers", run_args.shot_workers, "concurrent shot executors");
  run->add_option("--arg", run_args.args, "scalar kernel argument (repeatable)");

  // --- bench ---
  BenchArgs bench_args;
  bench_args.spec.workers_per_kernel = env_workers_default();
  CLI::App* bench = app.add_subcommand("bench", "compare one-by-one vs parallel execution");
  bench->add_option("--workload", bench_args.workload, "bell | shor | vqe | file:<path.xqk>");
  bench->add_option("--mode", bench_args.mode, "one-by-one | parallel");
  bench->add_option("--tasks", bench_args.spec.tasks, "concurrent kernel tasks");
  auto* workers_opt = bench->add_option("--workers-per-kernel",
                                        bench_args.spec.workers_per_kernel,
                                        "inner workers per kernel");
  bench->add_option("--shot-workers", bench_args.spec.shot_workers, "shot fan-out per kernel");
  bench->add_option("--shots", bench_args.spec.shots, "shots per kernel execution");
  bench->add_option("--seed", bench_args.spec.seed, "random seed");
  bench->add_option("--reps", bench_args.spec.repetitions, "timed repetitions");
  bench->add_option("--modulus", bench_args.spec.shor_modulus, "shor workload modulus");
  bench->add_option("--size", bench_args.spec.register_size, "file workload register size");
  bench->add_option("--arg", bench_args.spec.kernel_args, "file workload scalar argument");
  bench->add_option("--preset", bench_args.preset, "paper-eval");
  bench->add_option("--out", bench_args.out, "report JSON path (default stdout)");
  bench->add_option("--baseline", bench_args.baseline_path,
                    "baseline report JSON for the speedup field");

  // --- sweep ---
  BenchArgs sweep_args;
  sweep_args.workload = "shor";
  int max_workers = 8;
  std::string sweep_out;
  CLI::App* sweep = app.add_subcommand("sweep", "strong-scaling sweep over worker counts");
  sweep->add_option("--workload", sweep_args.workload, "bell | shor | vqe | file:<path.xqk>");
  sweep->add_option("--max-workers", max_workers, "largest total worker budget");
  sweep->add_option("--tasks", sweep_args.spec.tasks, "concurrent kernel tasks");
  sweep->add_option("--shots", sweep_args.spec.shots, "shots per kernel execution");
  sweep->add_option("--seed", sweep_args.spec.seed, "random seed");
  sweep->add_option("--reps", sweep_args.spec.repetitions, "timed repetitions");
  sweep->add_option("--modulus", sweep_args.spec.shor_modulus, "shor workload modulus");
  sweep->add_option("--size", sweep_args.spec.register_size, "file workload register size");
  sweep->add_option("--arg", sweep_args.spec.kernel_args, "file workload scalar argument");
  sweep->add_option("--out", sweep_out, "CSV path (default stdout)");

  // --- gen-kernel ---
  std::uint32_t gen_qubits = 20;
  std::uint32_t gen_depth = 30;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen-kernel", "emit a random benchmark kernel (.xqk)");
  gen->add_option("--qubits", gen_qubits, "register width");
  gen->add_option("--depth", gen_depth, "gate layers");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (bench->parsed()) {
      bench_args.workers_set = workers_opt->count() > 0;
      return cmd_bench(bench_args);
    }
    if (sweep->parsed()) {
      sweep_args.spec.workload = parse_workload(sweep_args.workload, sweep_args.spec.kernel_path);
      const auto reports = qcrt::bench::scaling_sweep(sweep_args.spec, max_workers);
      write_or_print(sweep_out, qcrt::bench::reports_to_csv(reports));
      return 0;
    }
    if (gen->parsed()) {
      write_or_print(gen_out, qcrt::bench::make_random_kernel(gen_qubits, gen_depth, gen_seed));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "qcrt: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
