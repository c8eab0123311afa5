#pragma once

#include <cstdint>

#include "qcrt/circuit.hpp"
#include "qcrt/counts.hpp"
#include "qcrt/pauli.hpp"
#include "qcrt/rng.hpp"
#include "qcrt/state_vector.hpp"

namespace qcrt {

/// How run_shots executes the per-shot sampling.
///   Resimulate: every shot runs the full circuit with mid-circuit collapse.
///   FinalDistribution: simulate the gate prefix once and sample outcomes
///     from the final distribution; only legal when all Measures trail.
///   Auto: FinalDistribution when the circuit allows it, else Resimulate.
enum class SamplingMode { Auto, Resimulate, FinalDistribution };

struct RunOptions {
  /// Concurrent shot executors. Counts are identical for any value.
  int shot_workers = 1;
  /// Data-parallel workers for amplitude updates inside one simulation.
  /// Results are bit-identical to single-worker application.
  int gate_workers = 1;
  SamplingMode sampling = SamplingMode::Auto;
};

/// Applies one non-Measure instruction to the state in place. `gate_workers`
/// may fan the amplitude update out across threads; the result does not
/// depend on the worker count. Throws std::invalid_argument on malformed
/// instructions and std::out_of_range on bad qubit indices.
void apply_gate(StateVector& state, const Instruction& inst, int gate_workers = 1);

/// Measures qubit q with Born-rule probability using `rng`, collapses and
/// renormalizes the state, and returns the observed bit. A zero-probability
/// branch is never selected.
int measure_qubit(StateVector& state, std::uint32_t q, ShotRng& rng);

/// <state|P|state>, real by Hermiticity, in [-1, 1].
double expectation(const StateVector& state, const PauliString& pauli);

/// Runs the circuit `shots` times and histograms the measured bitstrings.
/// Shot s draws from random substream s of `seed`, so the returned Counts
/// are identical for fixed (circuit, shots, seed) regardless of worker
/// counts. Requires shots >= 1 and a circuit with at least one Measure.
Counts run_shots(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                 const RunOptions& options);

/// Spec-shaped convenience overload: `workers` counts shot executors.
inline Counts run_shots(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                        int workers = 1) {
  return run_shots(circuit, shots, seed, RunOptions{.shot_workers = workers});
}

/// Applies every non-Measure instruction in order (ignores Measures).
/// Used for expectation-value workloads on the final state.
void apply_circuit(StateVector& state, const Circuit& circuit, int gate_workers = 1);

/// Energy <state|H|state> as the coefficient-weighted sum of Pauli
/// expectations.
double expectation(const StateVector& state, const Hamiltonian& hamiltonian);

}  // namespace qcrt
