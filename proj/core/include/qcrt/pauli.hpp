#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qcrt {

enum class PauliOp { X, Y, Z };

/// Sparse tensor product of single-qubit Pauli operators, e.g. X0*Y2.
/// The empty string is the identity. At most one operator per qubit.
class PauliString {
 public:
  PauliString() = default;

  static PauliString identity() { return {}; }
  static PauliString x(std::uint32_t q) { return PauliString({{q, PauliOp::X}}); }
  static PauliString y(std::uint32_t q) { return PauliString({{q, PauliOp::Y}}); }
  static PauliString z(std::uint32_t q) { return PauliString({{q, PauliOp::Z}}); }

  /// Tensor product over disjoint qubit sets. Throws std::invalid_argument
  /// if both factors act on the same qubit.
  PauliString operator*(const PauliString& other) const;

  bool is_identity() const { return ops_.empty(); }
  std::size_t weight() const { return ops_.size(); }

  /// Largest qubit index acted on; identity returns 0.
  std::uint32_t max_qubit() const;

  /// Ascending by qubit index.
  const std::vector<std::pair<std::uint32_t, PauliOp>>& ops() const { return ops_; }

  std::string to_string() const;

 private:
  explicit PauliString(std::vector<std::pair<std::uint32_t, PauliOp>> ops)
      : ops_(std::move(ops)) {}

  std::vector<std::pair<std::uint32_t, PauliOp>> ops_;
};

/// Real-weighted sum of Pauli strings. Coefficients are real by contract,
/// so the operator is Hermitian.
struct Hamiltonian {
  std::vector<std::pair<double, PauliString>> terms;

  void add(double coefficient, PauliString p) { terms.emplace_back(coefficient, std::move(p)); }
  std::uint32_t max_qubit() const;

  /// Sum of |coefficient|; bounds every expectation value's magnitude.
  double one_norm() const;
};

}  // namespace qcrt
