#include "qcrt/instruction.hpp"

#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcrt {

const char* gate_name(Gate g) {
  switch (g) {
    case Gate::H: return "H";
    case Gate::X: return "X";
    case Gate::Y: return "Y";
    case Gate::Z: return "Z";
    case Gate::S: return "S";
    case Gate::T: return "T";
    case Gate::Rx: return "Rx";
    case Gate::Ry: return "Ry";
    case Gate::Rz: return "Rz";
    case Gate::CX: return "CX";
    case Gate::CZ: return "CZ";
    case Gate::CPhase: return "CPhase";
    case Gate::SWAP: return "SWAP";
    case Gate::Measure: return "Measure";
    case Gate::CModMul: return "CModMul";
  }
  return "?";
}

Instruction Instruction::cmodmul(std::uint32_t control, std::uint32_t work_first,
                                 std::uint32_t work_count, std::uint64_t a, std::uint64_t n) {
  Instruction inst;
  inst.kind = Gate::CModMul;
  inst.targets.reserve(1 + work_count);
  inst.targets.push_back(control);
  for (std::uint32_t i = 0; i < work_count; ++i) inst.targets.push_back(work_first + i);
  inst.modmul_a = a;
  inst.modmul_n = n;
  validate_instruction(inst);
  return inst;
}

namespace {

struct Arity {
  std::size_t qubits;
  std::size_t params;
};

Arity arity_of(Gate g) {
  switch (g) {
    case Gate::H:
    case Gate::X:
    case Gate::Y:
    case Gate::Z:
    case Gate::S:
    case Gate::T:
    case Gate::Measure:
      return {1, 0};
    case Gate::Rx:
    case Gate::Ry:
    case Gate::Rz:
      return {1, 1};
    case Gate::CX:
    case Gate::CZ:
    case Gate::SWAP:
      return {2, 0};
    case Gate::CPhase:
      return {2, 1};
    case Gate::CModMul:
      return {0, 0};  // variable, checked separately
  }
  return {0, 0};
}

}  // namespace

void validate_instruction(const Instruction& inst) {
  const std::set<std::uint32_t> distinct(inst.targets.begin(), inst.targets.end());
  if (distinct.size() != inst.targets.size()) {
    throw std::invalid_argument(std::string(gate_name(inst.kind)) +
                                ": duplicate qubit operands");
  }

  if (inst.kind == Gate::CModMul) {
    if (inst.targets.size() < 2) {
      throw std::invalid_argument("CModMul: needs one control and a work register");
    }
    for (std::size_t i = 2; i < inst.targets.size(); ++i) {
      if (inst.targets[i] != inst.targets[i - 1] + 1) {
        throw std::invalid_argument("CModMul: work register must be contiguous ascending");
      }
    }
    if (inst.modmul_n < 2) {
      throw std::invalid_argument("CModMul: modulus must be >= 2");
    }
    if (std::gcd(inst.modmul_a, inst.modmul_n) != 1) {
      throw std::invalid_argument("CModMul: gcd(a, N) must be 1");
    }
    return;
  }

  const Arity want = arity_of(inst.kind);
  if (inst.targets.size() != want.qubits) {
    throw std::invalid_argument(std::string(gate_name(inst.kind)) + ": expected " +
                                std::to_string(want.qubits) + " qubit operand(s)");
  }
  if (inst.params.size() != want.params) {
    throw std::invalid_argument(std::string(gate_name(inst.kind)) + ": expected " +
                                std::to_string(want.params) + " parameter(s)");
  }
}

std::string Instruction::to_string() const {
  std::ostringstream out;
  out << gate_name(kind) << '(';
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (i) out << ", ";
    out << 'q' << targets[i];
  }
  for (double p : params) out << ", " << p;
  if (kind == Gate::CModMul) out << ", a=" << modmul_a << ", N=" << modmul_n;
  out << ')';
  return out.str();
}

}  // namespace qcrt
