#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qcrt {

enum class Gate {
  H,
  X,
  Y,
  Z,
  S,
  T,
  Rx,
  Ry,
  Rz,
  CX,
  CZ,
  CPhase,
  SWAP,
  Measure,
  CModMul,
};

const char* gate_name(Gate g);

/// One circuit instruction: a gate kind, its ordered qubit operands and,
/// depending on the kind, rotation angles or modular-multiplication operands.
///
/// CModMul is the controlled permutation |c>|y> -> |c>|a*y mod N> for y < N
/// (basis values >= N are fixed points). targets = {control, w0..wk-1} with a
/// contiguous ascending work range.
struct Instruction {
  Gate kind = Gate::H;
  std::vector<std::uint32_t> targets;
  std::vector<double> params;
  std::uint64_t modmul_a = 0;
  std::uint64_t modmul_n = 0;

  static Instruction h(std::uint32_t q) { return {Gate::H, {q}, {}}; }
  static Instruction x(std::uint32_t q) { return {Gate::X, {q}, {}}; }
  static Instruction y(std::uint32_t q) { return {Gate::Y, {q}, {}}; }
  static Instruction z(std::uint32_t q) { return {Gate::Z, {q}, {}}; }
  static Instruction s(std::uint32_t q) { return {Gate::S, {q}, {}}; }
  static Instruction t(std::uint32_t q) { return {Gate::T, {q}, {}}; }
  static Instruction rx(std::uint32_t q, double theta) { return {Gate::Rx, {q}, {theta}}; }
  static Instruction ry(std::uint32_t q, double theta) { return {Gate::Ry, {q}, {theta}}; }
  static Instruction rz(std::uint32_t q, double theta) { return {Gate::Rz, {q}, {theta}}; }
  static Instruction cx(std::uint32_t control, std::uint32_t target) {
    return {Gate::CX, {control, target}, {}};
  }
  static Instruction cz(std::uint32_t control, std::uint32_t target) {
    return {Gate::CZ, {control, target}, {}};
  }
  static Instruction cphase(std::uint32_t control, std::uint32_t target, double theta) {
    return {Gate::CPhase, {control, target}, {theta}};
  }
  static Instruction swap(std::uint32_t a, std::uint32_t b) { return {Gate::SWAP, {a, b}, {}}; }
  static Instruction measure(std::uint32_t q) { return {Gate::Measure, {q}, {}}; }
  static Instruction cmodmul(std::uint32_t control, std::uint32_t work_first,
                             std::uint32_t work_count, std::uint64_t a, std::uint64_t n);

  /// Number of work-register qubits of a CModMul (targets minus the control).
  std::uint32_t work_count() const { return static_cast<std::uint32_t>(targets.size()) - 1; }

  std::string to_string() const;
};

/// Throws std::invalid_argument if the instruction is malformed on its own
/// terms (duplicate targets, bad operand counts, CModMul with gcd(a,N) != 1
/// or a non-contiguous work range). Range checks against a qubit count are
/// the circuit's job.
void validate_instruction(const Instruction& inst);

}  // namespace qcrt
