#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcrt/instruction.hpp"

namespace qcrt {

/// An ordered gate list over a fixed-width qubit register. Measure
/// instructions may appear anywhere; mid-circuit collapse is supported.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::uint32_t n_qubits, std::string name = "")
      : n_qubits_(n_qubits), name_(std::move(name)) {}

  std::uint32_t num_qubits() const { return n_qubits_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<Instruction>& instructions() const { return instructions_; }
  std::size_t size() const { return instructions_.size(); }

  /// Validates the instruction (including qubit bounds) and appends it.
  void append(Instruction inst);

  /// Number of distinct qubits that carry at least one Measure.
  std::uint32_t measured_qubit_count() const;

  bool has_measure() const;

  /// True when every Measure sits in a trailing block (no gate after any
  /// Measure). Enables sampling the final distribution instead of
  /// re-executing per shot.
  bool measures_are_trailing() const;

  bool operator==(const Circuit& other) const {
    return n_qubits_ == other.n_qubits_ && structurally_equal(other);
  }

  /// Instruction-for-instruction equality, ignoring the name label.
  bool structurally_equal(const Circuit& other) const;

 private:
  std::uint32_t n_qubits_ = 0;
  std::string name_;
  std::vector<Instruction> instructions_;
};

}  // namespace qcrt
