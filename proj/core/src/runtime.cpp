#include "qcrt/runtime.hpp"

#include <sstream>
#include <stdexcept>

namespace qcrt {

void initialize_worker(const std::string& backend, const nlohmann::json& config) {
  QpuManager::instance().set(get_accelerator(backend, config));
}

bool worker_initialized() { return QpuManager::instance().get() != nullptr; }

void execute(const Circuit& kernel, AcceleratorBuffer& buffer, std::uint64_t shots) {
  AcceleratorPtr qpu = QpuManager::instance().get();
  if (!qpu) {
    throw std::runtime_error("execute: worker not initialized (call initialize_worker first)");
  }
  if (kernel.num_qubits() > buffer.size()) {
    throw std::invalid_argument("execute: kernel needs " + std::to_string(kernel.num_qubits()) +
                                " qubits but buffer '" + buffer.name() + "' has " +
                                std::to_string(buffer.size()));
  }
  // Simulation runs outside any lock; only the merge below synchronizes.
  Counts counts = qpu->execute(kernel, shots);
  buffer.merge_measurements(counts);
}

void execute(const Circuit& kernel, AcceleratorBuffer& buffer) {
  AcceleratorPtr qpu = QpuManager::instance().get();
  if (!qpu) {
    throw std::runtime_error("execute: worker not initialized (call initialize_worker first)");
  }
  execute(kernel, buffer, qpu->config().default_shots);
}

namespace {

void append_object(std::ostringstream& out, const std::map<std::string, nlohmann::json>& entries,
                   const char* indent) {
  if (entries.empty()) {
    out << "{}";
    return;
  }
  out << "{\n";
  std::size_t remaining = entries.size();
  for (const auto& [key, value] : entries) {
    out << indent << "  \"" << key << "\": " << value.dump();
    if (--remaining) out << ',';
    out << '\n';
  }
  out << indent << '}';
}

}  // namespace

std::string buffer_to_json(const AcceleratorBuffer& buffer) {
  std::map<std::string, nlohmann::json> measurements;
  for (const auto& [key, tally] : buffer.measurements()) measurements[key] = tally;

  std::ostringstream out;
  out << "\"AcceleratorBuffer\": {\n";
  out << "  \"name\": \"" << buffer.name() << "\",\n";
  out << "  \"size\": " << buffer.size() << ",\n";
  out << "  \"Information\": ";
  append_object(out, buffer.information(), "  ");
  out << ",\n";
  out << "  \"Measurements\": ";
  append_object(out, measurements, "  ");
  out << "\n}\n";
  return out.str();
}

}  // namespace qcrt
