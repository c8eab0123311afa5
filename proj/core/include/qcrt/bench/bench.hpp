#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace qcrt::bench {

enum class Workload { Bell, Shor, Vqe, File };
enum class Mode { OneByOne, Parallel };

const char* workload_name(Workload w);
const char* mode_name(Mode m);

/// One benchmark configuration: which kernels, how many concurrent tasks,
/// and the per-kernel worker budget.
struct BenchSpec {
  Workload workload = Workload::Bell;
  Mode mode = Mode::OneByOne;
  /// Concurrent kernel tasks (the paper runs 2).
  int tasks = 2;
  /// Inner data-parallel workers per kernel (the per-kernel thread budget).
  int workers_per_kernel = 1;
  /// Shot fan-out per kernel; left at 1 in the paper-style comparisons.
  int shot_workers = 1;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 42;
  /// Timed repetitions (one extra warm-up run is discarded).
  int repetitions = 5;

  /// Shor workload: the number to factor.
  std::uint64_t shor_modulus = 15;
  /// File workload: kernel path and register size.
  std::string kernel_path;
  std::uint32_t register_size = 0;
  std::vector<double> kernel_args;
};

/// Schema version stamped into every serialized report.
inline constexpr int kReportSchemaVersion = 1;

struct BenchReport {
  std::string workload;
  std::string mode;
  int tasks = 0;
  int workers_per_kernel = 0;
  int shot_workers = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  int repetitions = 0;

  std::vector<double> times_s;  // one entry per timed repetition
  double median_s = 0.0;

  bool valid = false;
  std::string validation_error;
  nlohmann::json digest;  // per-task workload results

  /// baseline_median / median_s; 0 when no baseline was named.
  double speedup = 0.0;
  std::string baseline;

  nlohmann::json to_json() const;
  static BenchReport from_json(const nlohmann::json& j);

  /// Sets speedup relative to `base` (which must be valid).
  void set_baseline(const BenchReport& base, const std::string& label);
};

/// Executes the spec: a discarded warm-up plus `repetitions` timed runs of
/// the full task set. One-by-one runs tasks sequentially, parallel spawns
/// them concurrently; either way each task owns a private accelerator with
/// `workers_per_kernel` inner workers. Workload results are validated and
/// an invalid run never reports a speedup.
BenchReport run_bench(const BenchSpec& spec);

/// Runs the workload at worker counts {1, 2, 4, ..., max_workers} in both
/// modes, holding the total worker budget matched (parallel tasks split the
/// budget). Speedups are normalized to the single-worker one-by-one row.
std::vector<BenchReport> scaling_sweep(const BenchSpec& base, int max_workers);

std::string reports_to_csv(const std::vector<BenchReport>& reports);

/// Seeded random kernel source (xqk text) over `n_qubits` qubits with
/// `depth` gate layers and trailing measures; wide workloads for scaling
/// runs.
std::string make_random_kernel(std::uint32_t n_qubits, std::uint32_t depth, std::uint64_t seed);

/// Soft cap on tasks * workers_per_kernel; exceeding it warns (stderr) but
/// never fails.
int worker_budget_cap();

}  // namespace qcrt::bench
