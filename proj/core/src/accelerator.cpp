#include "qcrt/accelerator.hpp"

#include <cstdlib>
#include <stdexcept>

#include "qcrt/rng.hpp"

namespace qcrt {

namespace {

int env_default_workers() {
  const char* raw = std::getenv(kWorkersPerKernelEnv);
  if (raw == nullptr) return 1;
  const int value = std::atoi(raw);
  return value >= 1 ? value : 1;
}

SamplingMode parse_sampling(const std::string& name) {
  if (name == "auto") return SamplingMode::Auto;
  if (name == "resimulate") return SamplingMode::Resimulate;
  if (name == "final") return SamplingMode::FinalDistribution;
  throw std::invalid_argument("get_accelerator: unknown sampling mode '" + name + "'");
}

AcceleratorConfig parse_config(const nlohmann::json& config) {
  AcceleratorConfig parsed;
  parsed.gate_workers = env_default_workers();
  for (const auto& [key, value] : config.items()) {
    if (key == "shots") {
      parsed.default_shots = value.get<std::uint64_t>();
    } else if (key == "seed") {
      parsed.seed = value.get<std::uint64_t>();
    } else if (key == "shot_workers") {
      parsed.shot_workers = value.get<int>();
    } else if (key == "gate_workers") {
      parsed.gate_workers = value.get<int>();
    } else if (key == "sampling") {
      parsed.sampling = parse_sampling(value.get<std::string>());
    } else {
      throw std::invalid_argument("get_accelerator: unknown config key '" + key + "'");
    }
  }
  if (parsed.shot_workers < 1 || parsed.gate_workers < 1) {
    throw std::invalid_argument("get_accelerator: worker counts must be >= 1");
  }
  return parsed;
}

}  // namespace

Counts Accelerator::execute(const Circuit& circuit, std::uint64_t shots) {
  RunOptions options;
  options.shot_workers = config_.shot_workers;
  options.gate_workers = config_.gate_workers;
  options.sampling = config_.sampling;
  const std::uint64_t run_seed = substream_seed(config_.seed, executions_++);
  return run_shots(circuit, shots, run_seed, options);
}

AcceleratorPtr get_accelerator(const std::string& backend, const nlohmann::json& config) {
  if (backend != "statevector") {
    throw std::invalid_argument("get_accelerator: unknown backend '" + backend + "'");
  }
  // Fresh instance per call; callers that need shared access hold the
  // shared_ptr themselves.
  return std::make_shared<Accelerator>(backend, parse_config(config));
}

}  // namespace qcrt
