#include "qcrt/algorithms/qft.hpp"

#include <numbers>
#include <stdexcept>

namespace qcrt::algo {

void append_qft(Circuit& circuit, std::uint32_t first, std::uint32_t count) {
  if (count == 0) throw std::invalid_argument("append_qft: empty register");
  for (std::uint32_t k = count; k-- > 0;) {
    circuit.append(Instruction::h(first + k));
    for (std::uint32_t m = k; m-- > 0;) {
      const double angle = std::numbers::pi / static_cast<double>(std::uint64_t{1} << (k - m));
      circuit.append(Instruction::cphase(first + m, first + k, angle));
    }
  }
  for (std::uint32_t i = 0; i < count / 2; ++i) {
    circuit.append(Instruction::swap(first + i, first + count - 1 - i));
  }
}

void append_inverse_qft(Circuit& circuit, std::uint32_t first, std::uint32_t count) {
  Circuit forward(circuit.num_qubits());
  append_qft(forward, first, count);
  const auto& ops = forward.instructions();
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    Instruction inst = *it;
    if (inst.kind == Gate::CPhase) inst.params[0] = -inst.params[0];
    circuit.append(std::move(inst));
  }
}

}  // namespace qcrt::algo
