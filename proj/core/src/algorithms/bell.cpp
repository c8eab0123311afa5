#include "qcrt/algorithms/bell.hpp"

#include <stdexcept>

namespace qcrt::algo {

Circuit bell_kernel(std::uint32_t n_qubits) {
  if (n_qubits != 2) throw std::invalid_argument("bell_kernel: n must be 2");
  Circuit circuit(2, "bell");
  circuit.append(Instruction::h(0));
  circuit.append(Instruction::cx(0, 1));
  circuit.append(Instruction::measure(0));
  circuit.append(Instruction::measure(1));
  return circuit;
}

Circuit ghz_kernel(std::uint32_t n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("ghz_kernel: n must be >= 2");
  Circuit circuit(n_qubits, "ghz");
  circuit.append(Instruction::h(0));
  for (std::uint32_t q = 0; q + 1 < n_qubits; ++q) circuit.append(Instruction::cx(q, q + 1));
  for (std::uint32_t q = 0; q < n_qubits; ++q) circuit.append(Instruction::measure(q));
  return circuit;
}

}  // namespace qcrt::algo
