#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qcrt {

using Amplitude = std::complex<double>;

/// Dense 2^n complex amplitude vector. Qubit 0 is the least significant bit
/// of the amplitude index. Owned by exactly one executor at a time; there is
/// no internal synchronization.
class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(std::uint32_t n_qubits);

  std::uint32_t num_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amps_.size(); }

  Amplitude amp(std::size_t index) const { return amps_[index]; }
  void set_amp(std::size_t index, Amplitude a) { amps_[index] = a; }

  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> amplitudes_mut() { return amps_; }

  /// Resets to the computational basis state |index>.
  void set_basis_state(std::size_t index);

  /// Sum of |amp|^2, accumulated in a fixed serial order.
  double norm_sq() const;

 private:
  std::uint32_t n_qubits_ = 0;
  std::vector<Amplitude> amps_;
};

}  // namespace qcrt
