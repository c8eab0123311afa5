#pragma once

#include <cstdint>

#include "qcrt/circuit.hpp"

namespace qcrt::algo {

/// The 2-qubit Bell kernel: H(q0); CX(q0,q1); Measure(q0); Measure(q1).
/// Only n == 2 is accepted.
Circuit bell_kernel(std::uint32_t n_qubits = 2);

/// An n-qubit GHZ chain with trailing measures; the Bell kernel scaled up.
/// Used as a wide timing workload.
Circuit ghz_kernel(std::uint32_t n_qubits);

}  // namespace qcrt::algo
