#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "qcrt/circuit.hpp"
#include "qcrt/counts.hpp"
#include "qcrt/simulator.hpp"

#include "json.hpp"

namespace qcrt {

struct AcceleratorConfig {
  std::uint64_t default_shots = 1024;
  std::uint64_t seed = 0;
  int shot_workers = 1;
  int gate_workers = 1;
  SamplingMode sampling = SamplingMode::Auto;
};

/// One simulator instance. Every instance returned by get_accelerator is
/// independent: advancing this instance's RNG or execution counter never
/// affects another. An Accelerator is exclusively owned by one worker; it
/// is not internally synchronized.
class Accelerator {
 public:
  Accelerator(std::string backend_name, AcceleratorConfig config)
      : backend_name_(std::move(backend_name)), config_(config) {}

  const std::string& backend_name() const { return backend_name_; }
  const AcceleratorConfig& config() const { return config_; }

  /// Re-seeds the RNG family and rewinds the execution counter.
  void reseed(std::uint64_t seed) {
    config_.seed = seed;
    executions_ = 0;
  }

  std::uint64_t executions() const { return executions_; }

  /// Runs the circuit with this instance's worker settings. Execution k of
  /// a given instance uses random substream k of the instance seed, so
  /// repeat executions differ but the whole sequence is reproducible.
  Counts execute(const Circuit& circuit, std::uint64_t shots);

  Counts execute(const Circuit& circuit) { return execute(circuit, config_.default_shots); }

 private:
  std::string backend_name_;
  AcceleratorConfig config_;
  std::uint64_t executions_ = 0;
};

using AcceleratorPtr = std::shared_ptr<Accelerator>;

/// Name of the env var holding the default inner worker count per
/// accelerator (the per-kernel thread budget).
inline constexpr const char* kWorkersPerKernelEnv = "QCRT_WORKERS_PER_KERNEL";

/// Returns a NEW independent Accelerator per call. "statevector" is the only
/// built-in backend. Config keys: "shots", "seed", "shot_workers",
/// "gate_workers", "sampling" ("auto" | "resimulate" | "final").
/// Unset gate_workers defaults to QCRT_WORKERS_PER_KERNEL when present.
/// Throws std::invalid_argument for unknown backends or config keys.
AcceleratorPtr get_accelerator(const std::string& backend,
                               const nlohmann::json& config = nlohmann::json::object());

}  // namespace qcrt
