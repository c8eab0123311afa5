#include "qcrt/simulator.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "parallel_util.hpp"

namespace qcrt {

namespace {

using Mat2 = std::array<Amplitude, 4>;  // row-major {m00, m01, m10, m11}

constexpr Amplitude kI{0.0, 1.0};

Mat2 single_qubit_matrix(const Instruction& inst) {
  const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  switch (inst.kind) {
    case Gate::H: return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
    case Gate::X: return {0.0, 1.0, 1.0, 0.0};
    case Gate::Y: return {0.0, -kI, kI, 0.0};
    case Gate::Z: return {1.0, 0.0, 0.0, -1.0};
    case Gate::S: return {1.0, 0.0, 0.0, kI};
    case Gate::T: return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4.0)};
    case Gate::Rx: {
      const double half = inst.params[0] / 2.0;
      return {std::cos(half), -kI * std::sin(half), -kI * std::sin(half), std::cos(half)};
    }
    case Gate::Ry: {
      const double half = inst.params[0] / 2.0;
      return {std::cos(half), -std::sin(half), std::sin(half), std::cos(half)};
    }
    case Gate::Rz: {
      const double half = inst.params[0] / 2.0;
      return {std::polar(1.0, -half), 0.0, 0.0, std::polar(1.0, half)};
    }
    default:
      throw std::invalid_argument("not a single-qubit gate");
  }
}

// Applies a 2x2 unitary to qubit q. Iterates over base indices with bit q
// clear; each (i, i|bit) pair is updated independently.
void apply_single(StateVector& state, std::uint32_t q, const Mat2& m, int workers) {
  auto amps = state.amplitudes_mut();
  const std::size_t bit = std::size_t{1} << q;
  const std::size_t low_mask = bit - 1;
  const std::size_t pairs = amps.size() >> 1;
  detail::parallel_for(pairs, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t i0 = ((k & ~low_mask) << 1) | (k & low_mask);
      const std::size_t i1 = i0 | bit;
      const Amplitude a0 = amps[i0];
      const Amplitude a1 = amps[i1];
      amps[i0] = m[0] * a0 + m[1] * a1;
      amps[i1] = m[2] * a0 + m[3] * a1;
    }
  });
}

void apply_cx(StateVector& state, std::uint32_t control, std::uint32_t target, int workers) {
  auto amps = state.amplitudes_mut();
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  detail::parallel_for(amps.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      // visit each swapped pair once, from its target-clear member
      if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
    }
  });
}

void apply_phase_on_mask(StateVector& state, std::size_t mask, Amplitude phase, int workers) {
  auto amps = state.amplitudes_mut();
  detail::parallel_for(amps.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if ((i & mask) == mask) amps[i] *= phase;
    }
  });
}

void apply_swap(StateVector& state, std::uint32_t a, std::uint32_t b, int workers) {
  auto amps = state.amplitudes_mut();
  const std::size_t abit = std::size_t{1} << a;
  const std::size_t bbit = std::size_t{1} << b;
  detail::parallel_for(amps.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      // visit each (a=1, b=0) index once; its partner has the bits exchanged
      if ((i & abit) && !(i & bbit)) std::swap(amps[i], amps[i ^ abit ^ bbit]);
    }
  });
}

void apply_cmodmul(StateVector& state, const Instruction& inst, int workers) {
  const std::uint32_t control = inst.targets[0];
  const std::uint32_t work_first = inst.targets[1];
  const std::uint32_t work_count = inst.work_count();
  const std::uint64_t a = inst.modmul_a;
  const std::uint64_t n = inst.modmul_n;
  if (n > (std::uint64_t{1} << work_count)) {
    throw std::invalid_argument("CModMul: work register too narrow for modulus");
  }

  auto amps = state.amplitudes_mut();
  std::vector<Amplitude> out(amps.size());
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t work_mask = ((std::size_t{1} << work_count) - 1) << work_first;

  detail::parallel_for(amps.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::size_t j = i;
      if (i & cbit) {
        const std::uint64_t y = (i & work_mask) >> work_first;
        if (y < n) {
          const std::uint64_t mapped = (a * y) % n;
          j = (i & ~work_mask) | (static_cast<std::size_t>(mapped) << work_first);
        }
      }
      out[j] = amps[i];  // bijective, so writes never collide
    }
  });
  std::copy(out.begin(), out.end(), amps.begin());
}

void check_targets(const StateVector& state, const Instruction& inst) {
  for (std::uint32_t q : inst.targets) {
    if (q >= state.num_qubits()) {
      throw std::out_of_range(std::string(gate_name(inst.kind)) + ": qubit " +
                              std::to_string(q) + " out of range");
    }
  }
}

}  // namespace

void apply_gate(StateVector& state, const Instruction& inst, int gate_workers) {
  validate_instruction(inst);
  check_targets(state, inst);
  switch (inst.kind) {
    case Gate::H:
    case Gate::X:
    case Gate::Y:
    case Gate::Z:
    case Gate::S:
    case Gate::T:
    case Gate::Rx:
    case Gate::Ry:
    case Gate::Rz:
      apply_single(state, inst.targets[0], single_qubit_matrix(inst), gate_workers);
      return;
    case Gate::CX:
      apply_cx(state, inst.targets[0], inst.targets[1], gate_workers);
      return;
    case Gate::CZ:
      apply_phase_on_mask(state,
                          (std::size_t{1} << inst.targets[0]) | (std::size_t{1} << inst.targets[1]),
                          Amplitude{-1.0, 0.0}, gate_workers);
      return;
    case Gate::CPhase:
      apply_phase_on_mask(state,
                          (std::size_t{1} << inst.targets[0]) | (std::size_t{1} << inst.targets[1]),
                          std::polar(1.0, inst.params[0]), gate_workers);
      return;
    case Gate::SWAP:
      apply_swap(state, inst.targets[0], inst.targets[1], gate_workers);
      return;
    case Gate::CModMul:
      apply_cmodmul(state, inst, gate_workers);
      return;
    case Gate::Measure:
      throw std::invalid_argument("apply_gate: Measure is not a unitary; use measure_qubit");
  }
}

int measure_qubit(StateVector& state, std::uint32_t q, ShotRng& rng) {
  if (q >= state.num_qubits()) throw std::out_of_range("measure_qubit: qubit out of range");
  auto amps = state.amplitudes_mut();
  const std::size_t bit = std::size_t{1} << q;

  // Serial reduction keeps the probability bit-identical across worker counts.
  double p_one = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & bit) p_one += std::norm(amps[i]);
  }

  const double u = rng.uniform();
  const int outcome = u < p_one ? 1 : 0;  // p_one == 0 never selects 1; u < 1 always
  const double p_kept = outcome ? p_one : 1.0 - p_one;
  const double scale = 1.0 / std::sqrt(p_kept);

  for (std::size_t i = 0; i < amps.size(); ++i) {
    const bool keep = ((i & bit) != 0) == (outcome == 1);
    amps[i] = keep ? amps[i] * scale : Amplitude{0.0, 0.0};
  }
  return outcome;
}

double expectation(const StateVector& state, const PauliString& pauli) {
  if (!pauli.is_identity() && pauli.max_qubit() >= state.num_qubits()) {
    throw std::out_of_range("expectation: Pauli acts past the last qubit");
  }

  std::size_t x_mask = 0;  // X or Y: flips the basis index
  std::size_t y_mask = 0;
  std::size_t z_mask = 0;  // Z or Y: contributes a (-1)^bit sign
  for (const auto& [q, op] : pauli.ops()) {
    const std::size_t bit = std::size_t{1} << q;
    if (op != PauliOp::Z) x_mask |= bit;
    if (op != PauliOp::X) z_mask |= bit;
    if (op == PauliOp::Y) y_mask |= bit;
  }

  const int n_y = std::popcount(y_mask);
  auto amps = state.amplitudes();
  Amplitude acc{0.0, 0.0};
  for (std::size_t i = 0; i < amps.size(); ++i) {
    // P|i> = phase * |i ^ x_mask>; phase collects i^{n_y}, Y bit signs, Z signs
    const int sign_bits = std::popcount(i & z_mask);
    double re = (sign_bits & 1) ? -1.0 : 1.0;
    Amplitude phase = re;
    switch (n_y & 3) {
      case 1: phase *= kI; break;
      case 2: phase *= -1.0; break;
      case 3: phase *= -kI; break;
      default: break;
    }
    acc += std::conj(amps[i ^ x_mask]) * phase * amps[i];
  }
  return acc.real();
}

double expectation(const StateVector& state, const Hamiltonian& hamiltonian) {
  double energy = 0.0;
  for (const auto& [coefficient, pauli] : hamiltonian.terms) {
    energy += coefficient * expectation(state, pauli);
  }
  return energy;
}

void apply_circuit(StateVector& state, const Circuit& circuit, int gate_workers) {
  if (circuit.num_qubits() > state.num_qubits()) {
    throw std::invalid_argument("apply_circuit: circuit wider than state");
  }
  for (const Instruction& inst : circuit.instructions()) {
    if (inst.kind == Gate::Measure) continue;
    apply_gate(state, inst, gate_workers);
  }
}

namespace {

// Measurement-order slot per qubit: first Measure of a qubit claims the next
// key position; a later Measure of the same qubit overwrites its slot.
std::vector<int> measure_slots(const Circuit& circuit, std::uint32_t& n_slots) {
  std::vector<int> slot(circuit.num_qubits(), -1);
  int next = 0;
  for (const Instruction& inst : circuit.instructions()) {
    if (inst.kind != Gate::Measure) continue;
    const std::uint32_t q = inst.targets[0];
    if (slot[q] < 0) slot[q] = next++;
  }
  n_slots = static_cast<std::uint32_t>(next);
  return slot;
}

std::string run_one_shot(const Circuit& circuit, const std::vector<int>& slot,
                         std::uint32_t n_slots, std::uint64_t seed, std::uint64_t shot,
                         int gate_workers) {
  StateVector state(circuit.num_qubits());
  ShotRng rng(seed, shot);
  std::string key(n_slots, '0');
  for (const Instruction& inst : circuit.instructions()) {
    if (inst.kind == Gate::Measure) {
      const std::uint32_t q = inst.targets[0];
      const int bit = measure_qubit(state, q, rng);
      key[static_cast<std::size_t>(slot[q])] = static_cast<char>('0' + bit);
    } else {
      apply_gate(state, inst, gate_workers);
    }
  }
  return key;
}

Counts sample_final_distribution(const Circuit& circuit, const std::vector<int>& slot,
                                 std::uint32_t n_slots, std::uint64_t shots, std::uint64_t seed,
                                 const RunOptions& options) {
  StateVector state(circuit.num_qubits());
  apply_circuit(state, circuit, options.gate_workers);

  // Inclusive-scan CDF; built serially so it is worker-count independent.
  auto amps = state.amplitudes();
  std::vector<double> cdf(amps.size());
  double cum = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    cum += std::norm(amps[i]);
    cdf[i] = cum;
  }
  const double total = cdf.back();

  std::vector<std::uint32_t> measured(n_slots);  // qubit per key slot
  for (std::uint32_t q = 0; q < circuit.num_qubits(); ++q) {
    if (slot[q] >= 0) measured[static_cast<std::size_t>(slot[q])] = q;
  }

  auto sample_range = [&](std::uint64_t first, std::uint64_t stride, Counts& local) {
    std::string key(n_slots, '0');
    for (std::uint64_t s = first; s < shots; s += stride) {
      ShotRng rng(seed, s);
      const double u = rng.uniform() * total;
      const std::size_t idx = static_cast<std::size_t>(
          std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      const std::size_t basis = std::min(idx, cdf.size() - 1);
      for (std::uint32_t k = 0; k < n_slots; ++k) {
        key[k] = static_cast<char>('0' + ((basis >> measured[k]) & 1));
      }
      ++local[key];
    }
  };

  const std::uint64_t n_threads =
      std::min<std::uint64_t>(std::max(1, options.shot_workers), shots);
  if (n_threads == 1) {
    Counts counts;
    sample_range(0, 1, counts);
    return counts;
  }

  std::vector<Counts> partial(n_threads);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::uint64_t w = 0; w < n_threads; ++w) {
    pool.emplace_back([&, w] { sample_range(w, n_threads, partial[w]); });
  }
  for (std::thread& t : pool) t.join();

  Counts counts;
  for (Counts& p : partial) merge_counts(counts, p);
  return counts;
}

}  // namespace

Counts run_shots(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                 const RunOptions& options) {
  if (shots == 0) throw std::invalid_argument("run_shots: shots must be >= 1");
  if (!circuit.has_measure()) {
    throw std::invalid_argument("run_shots: circuit has no Measure instruction");
  }

  std::uint32_t n_slots = 0;
  const std::vector<int> slot = measure_slots(circuit, n_slots);

  const bool fast_path =
      options.sampling != SamplingMode::Resimulate && circuit.measures_are_trailing();
  if (options.sampling == SamplingMode::FinalDistribution && !circuit.measures_are_trailing()) {
    throw std::invalid_argument(
        "run_shots: FinalDistribution sampling needs all Measures trailing");
  }
  if (fast_path) {
    return sample_final_distribution(circuit, slot, n_slots, shots, seed, options);
  }

  const int workers = std::max(1, options.shot_workers);
  if (workers == 1) {
    Counts counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
      ++counts[run_one_shot(circuit, slot, n_slots, seed, s, options.gate_workers)];
    }
    return counts;
  }

  const std::uint64_t n_threads = std::min<std::uint64_t>(workers, shots);
  std::vector<Counts> partial(n_threads);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::uint64_t w = 0; w < n_threads; ++w) {
    pool.emplace_back([&, w] {
      Counts local;
      for (std::uint64_t s = w; s < shots; s += n_threads) {
        ++local[run_one_shot(circuit, slot, n_slots, seed, s, options.gate_workers)];
      }
      partial[w] = std::move(local);
    });
  }
  for (std::thread& t : pool) t.join();

  Counts counts;
  for (Counts& p : partial) merge_counts(counts, p);
  return counts;
}

}  // namespace qcrt
