#include "qcrt/circuit.hpp"

#include <set>
#include <stdexcept>

namespace qcrt {

void Circuit::append(Instruction inst) {
  validate_instruction(inst);
  for (std::uint32_t q : inst.targets) {
    if (q >= n_qubits_) {
      throw std::out_of_range("circuit '" + name_ + "': qubit " + std::to_string(q) +
                              " out of range for " + std::to_string(n_qubits_) + " qubits");
    }
  }
  instructions_.push_back(std::move(inst));
}

std::uint32_t Circuit::measured_qubit_count() const {
  std::set<std::uint32_t> seen;
  for (const Instruction& inst : instructions_) {
    if (inst.kind == Gate::Measure) seen.insert(inst.targets[0]);
  }
  return static_cast<std::uint32_t>(seen.size());
}

bool Circuit::has_measure() const {
  for (const Instruction& inst : instructions_) {
    if (inst.kind == Gate::Measure) return true;
  }
  return false;
}

bool Circuit::measures_are_trailing() const {
  bool in_measure_tail = false;
  for (const Instruction& inst : instructions_) {
    if (inst.kind == Gate::Measure) {
      in_measure_tail = true;
    } else if (in_measure_tail) {
      return false;
    }
  }
  return in_measure_tail;
}

bool Circuit::structurally_equal(const Circuit& other) const {
  if (n_qubits_ != other.n_qubits_) return false;
  if (instructions_.size() != other.instructions_.size()) return false;
  for (std::size_t i = 0; i < instructions_.size(); ++i) {
    const Instruction& a = instructions_[i];
    const Instruction& b = other.instructions_[i];
    if (a.kind != b.kind || a.targets != b.targets || a.params != b.params ||
        a.modmul_a != b.modmul_a || a.modmul_n != b.modmul_n) {
      return false;
    }
  }
  return true;
}

}  // namespace qcrt
