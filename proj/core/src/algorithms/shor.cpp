#include "qcrt/algorithms/shor.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "qcrt/accelerator.hpp"
#include "qcrt/algorithms/qft.hpp"
#include "qcrt/buffer.hpp"
#include "qcrt/rng.hpp"
#include "qcrt/runtime.hpp"

namespace qcrt::algo {

std::uint32_t ShorParams::work_bits() const {
  return static_cast<std::uint32_t>(std::bit_width(modulus - 1));
}

std::uint32_t ShorParams::effective_counting_bits() const {
  return counting_bits != 0 ? counting_bits : 2 * work_bits();
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % modulus);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
  if (modulus == 1) return 0;
  std::uint64_t result = 1;
  std::uint64_t acc = base % modulus;
  while (exponent != 0) {
    if (exponent & 1) result = mod_mul(result, acc, modulus);
    acc = mod_mul(acc, acc, modulus);
    exponent >>= 1;
  }
  return result;
}

Circuit shor_kernel(const ShorParams& params) {
  if (params.modulus < 3) throw std::invalid_argument("shor_kernel: modulus must be >= 3");
  if (params.base <= 1 || params.base >= params.modulus) {
    throw std::invalid_argument("shor_kernel: base must satisfy 1 < a < N");
  }
  if (std::gcd(params.base, params.modulus) != 1) {
    throw std::invalid_argument("shor_kernel: gcd(a, N) must be 1");
  }

  const std::uint32_t t = params.effective_counting_bits();
  const std::uint32_t w = params.work_bits();
  Circuit circuit(t + w, "shor");

  circuit.append(Instruction::x(t));  // work register := |1>
  for (std::uint32_t j = 0; j < t; ++j) circuit.append(Instruction::h(j));

  // Counting qubit j controls multiplication by base^(2^j) mod N.
  std::uint64_t power = params.base % params.modulus;
  for (std::uint32_t j = 0; j < t; ++j) {
    circuit.append(Instruction::cmodmul(j, t, w, power, params.modulus));
    power = mod_mul(power, power, params.modulus);
  }

  append_inverse_qft(circuit, 0, t);
  for (std::uint32_t j = 0; j < t; ++j) circuit.append(Instruction::measure(j));
  return circuit;
}

std::vector<std::uint64_t> decode_counting_samples(const Counts& counts) {
  std::vector<std::uint64_t> samples;
  for (const auto& [key, tally] : counts) {
    std::uint64_t value = 0;
    for (std::size_t k = 0; k < key.size(); ++k) {
      if (key[k] == '1') value |= std::uint64_t{1} << k;
    }
    samples.insert(samples.end(), tally, value);
  }
  return samples;
}

namespace {

// Denominators of the continued-fraction convergents of m/q, all < bound.
// Recurrence k_j = a_j * k_{j-1} + k_{j-2} with k_{-1} = 0, k_{-2} = 1.
std::vector<std::uint64_t> convergent_denominators(std::uint64_t m, std::uint64_t q,
                                                   std::uint64_t bound) {
  std::vector<std::uint64_t> denominators;
  std::uint64_t num = m;
  std::uint64_t den = q;
  std::uint64_t k_prev = 0;
  std::uint64_t k_prevprev = 1;
  while (den != 0) {
    const std::uint64_t a = num / den;
    const std::uint64_t k = a * k_prev + k_prevprev;
    if (k >= bound) break;
    denominators.push_back(k);
    k_prevprev = k_prev;
    k_prev = k;
    const std::uint64_t rem = num % den;
    num = den;
    den = rem;
  }
  return denominators;
}

std::uint64_t lcm_capped(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  const std::uint64_t g = std::gcd(a, b);
  if (g == 0) return 0;
  const unsigned __int128 l = static_cast<unsigned __int128>(a / g) * b;
  return l < cap ? static_cast<std::uint64_t>(l) : 0;
}

}  // namespace

OrderEstimate estimate_order(std::span<const std::uint64_t> samples, std::uint64_t q_dim,
                             std::uint64_t modulus, std::uint64_t base) {
  OrderEstimate estimate;
  estimate.raw_samples.assign(samples.begin(), samples.end());
  if (samples.empty() || q_dim == 0) return estimate;

  std::vector<std::uint64_t> candidates;
  for (std::uint64_t m : samples) {
    if (m == 0) continue;  // zero phase carries no order information
    for (std::uint64_t d : convergent_denominators(m, q_dim, modulus)) {
      if (d > 1) candidates.push_back(d);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<std::uint64_t> trial = candidates;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      const std::uint64_t l = lcm_capped(candidates[i], candidates[j], modulus);
      if (l > 1) trial.push_back(l);
    }
  }
  std::sort(trial.begin(), trial.end());
  trial.erase(std::unique(trial.begin(), trial.end()), trial.end());

  for (std::uint64_t d : trial) {
    if (mod_pow(base, d, modulus) == 1) {
      estimate.valid = true;
      estimate.order = d;
      return estimate;  // smallest verified value: trial is sorted ascending
    }
  }
  return estimate;
}

namespace {

// Non-trivial divisors of n from the raw candidate set, each completed with
// its cofactor so a successful attempt names a full split.
std::set<std::uint64_t> complete_divisors(std::uint64_t n,
                                          std::initializer_list<std::uint64_t> raw) {
  std::set<std::uint64_t> divisors;
  for (std::uint64_t d : raw) {
    if (d <= 1 || d >= n || n % d != 0) continue;
    divisors.insert(d);
    const std::uint64_t cofactor = n / d;
    if (cofactor > 1 && cofactor < n) divisors.insert(cofactor);
  }
  return divisors;
}

ShorAttempt postprocess_attempt(std::uint64_t n, std::uint64_t base, const Counts& counts,
                                std::uint64_t q_dim) {
  ShorAttempt attempt;
  attempt.base = base;
  attempt.used_kernel = true;

  const std::vector<std::uint64_t> samples = decode_counting_samples(counts);
  attempt.estimate = estimate_order(samples, q_dim, n, base);
  if (!attempt.estimate.valid) return attempt;

  const std::uint64_t r = attempt.estimate.order;
  if (r % 2 == 1) return attempt;  // odd order: reject
  const std::uint64_t half_power = mod_pow(base, r / 2, n);
  if (half_power == n - 1) return attempt;  // base^(r/2) == -1 (mod N): reject
  attempt.divisors = complete_divisors(n, {std::gcd(half_power - 1, n),
                                           std::gcd(half_power + 1, n)});
  return attempt;
}

ShorAttempt run_quantum_attempt(std::uint64_t n, std::uint64_t base, const ShorOptions& options,
                                std::uint64_t attempt_seed, bool through_runtime) {
  ShorParams params;
  params.modulus = n;
  params.base = base;
  params.n_shots = options.n_shots;
  const Circuit kernel = shor_kernel(params);

  Counts counts;
  if (through_runtime) {
    // Worker accelerator was seeded by the spawning wrapper.
    BufferPtr buffer = qalloc(kernel.num_qubits());
    execute(kernel, *buffer, options.n_shots);
    counts = buffer->measurements();
  } else {
    nlohmann::json config = {{"seed", attempt_seed},
                             {"shot_workers", options.shot_workers},
                             {"gate_workers", options.gate_workers}};
    AcceleratorPtr accelerator = get_accelerator("statevector", config);
    counts = accelerator->execute(kernel, options.n_shots);
  }
  return postprocess_attempt(n, base, counts,
                             std::uint64_t{1} << params.effective_counting_bits());
}

}  // namespace

ShorAttempt shor_attempt(std::uint64_t n, std::uint64_t base, std::uint32_t n_shots) {
  ShorParams params;
  params.modulus = n;
  params.base = base;
  params.n_shots = n_shots;
  const Circuit kernel = shor_kernel(params);

  BufferPtr buffer = qalloc(kernel.num_qubits());
  execute(kernel, *buffer, n_shots);
  return postprocess_attempt(n, base, buffer->measurements(),
                             std::uint64_t{1} << params.effective_counting_bits());
}

ShorResult shor_factor(std::uint64_t n, const ShorOptions& options) {
  if (n < 4) throw std::invalid_argument("shor_factor: n must be >= 4 and composite");

  ShorResult result;
  if (n % 2 == 0) {
    // trivial factor-2 check; no quantum work needed
    ShorAttempt attempt;
    attempt.base = 2;
    attempt.divisors = complete_divisors(n, {2});
    result.found = true;
    result.divisors = attempt.divisors;
    result.attempts.push_back(std::move(attempt));
    return result;
  }

  ShotRng base_rng(options.seed, /*stream=*/0);
  std::set<std::uint64_t> tried;
  const std::uint64_t candidate_count = n - 3;  // bases in (1, N) exclusive

  auto draw_base = [&]() -> std::uint64_t {
    if (tried.size() >= candidate_count) return 0;  // search space explored
    for (;;) {
      const std::uint64_t a = base_rng.uniform_int(2, n - 2);
      if (tried.insert(a).second) return a;
    }
  };

  int attempt_index = 0;
  while (attempt_index < options.max_attempts) {
    // Draw bases for one wave. A gcd hit factors N classically on the spot.
    std::vector<std::pair<int, std::uint64_t>> wave;  // (attempt index, base)
    const int wave_size =
        options.mode == ShorMode::Parallel ? std::max(1, options.attempt_tasks) : 1;
    while (static_cast<int>(wave.size()) < wave_size && attempt_index < options.max_attempts) {
      const std::uint64_t a = draw_base();
      if (a == 0) break;
      const std::uint64_t k = std::gcd(a, n);
      if (k > 1) {
        ShorAttempt attempt;
        attempt.base = a;
        attempt.divisors = complete_divisors(n, {k});
        result.attempts.push_back(attempt);
        result.found = true;
        result.divisors = attempt.divisors;
        return result;
      }
      wave.emplace_back(attempt_index++, a);
    }
    if (wave.empty()) break;

    std::vector<ShorAttempt> outcomes(wave.size());
    if (options.mode == ShorMode::Parallel) {
      std::vector<TaskHandle<ShorAttempt>> handles;
      handles.reserve(wave.size());
      for (const auto& entry : wave) {
        const std::uint64_t base = entry.second;
        const std::uint64_t attempt_seed = substream_seed(options.seed, 1000 + entry.first);
        nlohmann::json config = {{"seed", attempt_seed},
                                 {"shot_workers", options.shot_workers},
                                 {"gate_workers", options.gate_workers}};
        handles.push_back(spawn_worker("statevector", config, [n, base, attempt_seed, &options] {
          return run_quantum_attempt(n, base, options, attempt_seed, /*through_runtime=*/true);
        }));
      }
      for (std::size_t i = 0; i < handles.size(); ++i) outcomes[i] = handles[i].join();
    } else {
      for (std::size_t i = 0; i < wave.size(); ++i) {
        const std::uint64_t attempt_seed = substream_seed(options.seed, 1000 + wave[i].first);
        outcomes[i] = run_quantum_attempt(n, wave[i].second, options, attempt_seed,
                                          /*through_runtime=*/false);
      }
    }

    for (ShorAttempt& attempt : outcomes) {
      const bool success = !attempt.divisors.empty();
      result.attempts.push_back(std::move(attempt));
      if (success && !result.found) {
        result.found = true;
        result.divisors = result.attempts.back().divisors;
      }
    }
    if (result.found) return result;
  }

  return result;  // found == false: attempts exhausted, no wrong divisor reported
}

}  // namespace qcrt::algo
