#pragma once

#include <cstdint>

#include "qcrt/circuit.hpp"

namespace qcrt::algo {

/// Appends the quantum Fourier transform on qubits [first, first+count) to
/// `circuit`. Convention: for register value x (qubit first+j carries bit j
/// of x), the map is |x> -> (1/sqrt(2^count)) * sum_y exp(+2*pi*i*x*y/2^count) |y>.
void append_qft(Circuit& circuit, std::uint32_t first, std::uint32_t count);

/// Appends the inverse transform (negated phases, reversed order).
void append_inverse_qft(Circuit& circuit, std::uint32_t first, std::uint32_t count);

}  // namespace qcrt::algo
