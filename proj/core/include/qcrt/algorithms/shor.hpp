#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "qcrt/circuit.hpp"
#include "qcrt/counts.hpp"

namespace qcrt::algo {

/// Order-finding kernel parameters for factoring `modulus` with base `base`.
struct ShorParams {
  std::uint64_t modulus = 0;
  std::uint64_t base = 0;
  /// Shots per order-finding batch.
  std::uint32_t n_shots = 10;
  /// Counting-register width; 0 means the 2*ceil(log2 N) default.
  std::uint32_t counting_bits = 0;

  std::uint32_t effective_counting_bits() const;
  std::uint32_t work_bits() const;
};

/// Phase-estimation order-finding circuit: counting register in qubits
/// [0, t), Hadamards on it, work register [t, t+w) initialized to |1>,
/// controlled modular multiplications by base^(2^j), inverse QFT, then
/// measurement of every counting qubit in ascending order.
/// Requires gcd(base, modulus) == 1 and modulus >= 3.
Circuit shor_kernel(const ShorParams& params);

/// Decodes a Counts histogram from shor_kernel into the measured
/// counting-register integers, one per shot (key position k is counting
/// qubit k).
std::vector<std::uint64_t> decode_counting_samples(const Counts& counts);

struct OrderEstimate {
  bool valid = false;
  std::uint64_t order = 0;
  std::vector<std::uint64_t> raw_samples;
};

/// Estimates the multiplicative order of `base` mod `modulus` from measured
/// counting-register integers. Each sample m is expanded as the continued
/// fraction of m/q_dim with denominators bounded by modulus; candidate
/// denominators and pairwise lcms are verified with base^d mod modulus == 1
/// and the smallest verified value wins. All-zero samples yield invalid.
OrderEstimate estimate_order(std::span<const std::uint64_t> samples, std::uint64_t q_dim,
                             std::uint64_t modulus, std::uint64_t base);

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t modulus);

enum class ShorMode { Serial, Parallel };

struct ShorOptions {
  ShorMode mode = ShorMode::Serial;
  std::uint64_t seed = 0;
  int max_attempts = 16;
  std::uint32_t n_shots = 10;
  /// Concurrent order-finding attempts per wave in parallel mode.
  int attempt_tasks = 2;
  /// Shot-loop fan-out inside each attempt.
  int shot_workers = 1;
  /// Data-parallel amplitude workers inside each simulation.
  int gate_workers = 1;
};

struct ShorAttempt {
  std::uint64_t base = 0;
  bool used_kernel = false;
  OrderEstimate estimate;
  std::set<std::uint64_t> divisors;
};

struct ShorResult {
  bool found = false;
  std::set<std::uint64_t> divisors;
  std::vector<ShorAttempt> attempts;
};

/// One order-finding attempt for a fixed coprime base, executed through the
/// calling worker's accelerator against a freshly allocated buffer, with the
/// full classical post-processing (order estimate, parity/-1 rejection,
/// gcd divisors completed with cofactors). Requires an initialized worker.
ShorAttempt shor_attempt(std::uint64_t n, std::uint64_t base, std::uint32_t n_shots);

/// Factors composite N >= 4. Each attempt draws a fresh base a in (1, N);
/// gcd(a, N) > 1 short-circuits classically, otherwise the order-finding
/// kernel runs and an even verified order r with base^(r/2) != -1 (mod N)
/// yields gcd(base^(r/2) +- 1, N). Any divisor d is completed with N/d so a
/// successful result names a full split. Serial mode runs attempts on a
/// private accelerator; parallel mode spawns attempts as runtime tasks with
/// per-worker accelerators, and the lowest-numbered successful attempt in a
/// wave wins. Exhausted attempts report found == false, never a wrong
/// divisor.
ShorResult shor_factor(std::uint64_t n, const ShorOptions& options);

}  // namespace qcrt::algo
