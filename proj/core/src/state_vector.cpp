#include "qcrt/state_vector.hpp"

#include <stdexcept>

namespace qcrt {

namespace {
constexpr std::uint32_t kMaxQubits = 30;  // 16 GiB of amplitudes; enough for desk-scale runs
}

StateVector::StateVector(std::uint32_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0) throw std::invalid_argument("StateVector: need at least one qubit");
  if (n_qubits > kMaxQubits) {
    throw std::invalid_argument("StateVector: " + std::to_string(n_qubits) +
                                " qubits exceeds the " + std::to_string(kMaxQubits) +
                                "-qubit limit");
  }
  amps_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
  amps_[0] = Amplitude{1.0, 0.0};
}

void StateVector::set_basis_state(std::size_t index) {
  if (index >= amps_.size()) throw std::out_of_range("set_basis_state: index out of range");
  std::fill(amps_.begin(), amps_.end(), Amplitude{0.0, 0.0});
  amps_[index] = Amplitude{1.0, 0.0};
}

double StateVector::norm_sq() const {
  double total = 0.0;
  for (const Amplitude& a : amps_) total += std::norm(a);
  return total;
}

}  // namespace qcrt
