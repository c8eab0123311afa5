#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "qcrt/algorithms/qft.hpp"
#include "qcrt/algorithms/shor.hpp"
#include "qcrt/runtime.hpp"
#include "qcrt/simulator.hpp"
#include "support/oracles.hpp"

using namespace qcrt;
using namespace qcrt::algo;

namespace {

// Marginal probability of each counting-register value, from the
// pre-measurement statevector.
std::map<std::uint64_t, double> counting_distribution(const ShorParams& params) {
  const Circuit kernel = shor_kernel(params);
  StateVector state(kernel.num_qubits());
  apply_circuit(state, kernel);

  const std::uint32_t t = params.effective_counting_bits();
  const std::uint64_t mask = (std::uint64_t{1} << t) - 1;
  std::map<std::uint64_t, double> dist;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    dist[i & mask] += std::norm(state.amp(i));
  }
  return dist;
}

}  // namespace

TEST_CASE("qft circuit matches the direct DFT oracle") {
  for (std::uint32_t n : {1u, 2u, 3u, 4u}) {
    // a non-trivial input state
    StateVector state(n);
    for (std::uint32_t q = 0; q < n; ++q) {
      apply_gate(state, Instruction::ry(q, 0.3 * static_cast<double>(q) + 0.4));
    }
    if (n > 1) apply_gate(state, Instruction::cx(0, n - 1));
    const oracle::CVec input(state.amplitudes().begin(), state.amplitudes().end());

    Circuit qft(n, "qft");
    append_qft(qft, 0, n);
    apply_circuit(state, qft);

    const oracle::CVec expect = oracle::dft(input, +1);
    for (std::size_t i = 0; i < expect.size(); ++i) {
      CHECK(std::abs(state.amp(i) - expect[i]) < 1e-10);
    }
  }
}

TEST_CASE("inverse qft undoes the qft") {
  StateVector state(3);
  apply_gate(state, Instruction::h(0));
  apply_gate(state, Instruction::ry(1, 1.1));
  apply_gate(state, Instruction::cx(1, 2));
  std::vector<Amplitude> before(state.amplitudes().begin(), state.amplitudes().end());

  Circuit round_trip(3, "qft+iqft");
  append_qft(round_trip, 0, 3);
  append_inverse_qft(round_trip, 0, 3);
  apply_circuit(state, round_trip);

  for (std::size_t i = 0; i < state.dimension(); ++i) {
    CHECK(std::abs(state.amp(i) - before[i]) < 1e-10);
  }
}

TEST_CASE("shor kernel shape: N=15, a=7, t=8 gives 12 qubits") {
  ShorParams params;
  params.modulus = 15;
  params.base = 7;
  const Circuit kernel = shor_kernel(params);
  CHECK(params.effective_counting_bits() == 8);
  CHECK(params.work_bits() == 4);
  CHECK(kernel.num_qubits() == 12);
  CHECK(kernel.measured_qubit_count() == 8);
  CHECK(kernel.measures_are_trailing());
}

TEST_CASE("shor kernel rejects invalid bases") {
  ShorParams params;
  params.modulus = 15;
  params.base = 6;  // gcd 3
  CHECK_THROWS_AS(shor_kernel(params), std::invalid_argument);
  params.base = 1;
  CHECK_THROWS_AS(shor_kernel(params), std::invalid_argument);
}

TEST_CASE("phase estimation concentrates on multiples of Q/r") {
  // oracle: brute-force orders; r divides Q here, so the ideal distribution
  // is exactly uniform on {0, Q/r, 2Q/r, ...}
  struct Case {
    std::uint64_t base;
    std::uint64_t order;
  };
  for (const Case c : {Case{7, 4}, Case{4, 2}, Case{2, 4}}) {
    REQUIRE(oracle::brute_force_order(c.base, 15) == c.order);
    ShorParams params;
    params.modulus = 15;
    params.base = c.base;
    const auto dist = counting_distribution(params);

    const std::uint64_t q_dim = 256;
    const std::uint64_t step = q_dim / c.order;
    double on_peaks = 0.0;
    for (const auto& [value, probability] : dist) {
      if (value % step == 0) {
        on_peaks += probability;
        CHECK(probability == doctest::Approx(1.0 / static_cast<double>(c.order)).epsilon(1e-9));
      } else {
        CHECK(probability < 1e-12);
      }
    }
    CHECK(on_peaks == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("estimate_order recovers r from single and aggregated samples") {
  // oracle: exhaustive convergent enumeration says 192/256 -> 3/4, so the
  // denominator 4 is the verified order of 7 mod 15
  const std::uint64_t samples_one[] = {192};
  const OrderEstimate one = estimate_order(samples_one, 256, 15, 7);
  CHECK(one.valid);
  CHECK(one.order == 4);

  const std::uint64_t samples_two[] = {64, 192};
  const OrderEstimate two = estimate_order(samples_two, 256, 15, 7);
  CHECK(two.valid);
  CHECK(two.order == 4);

  const std::uint64_t zeros[] = {0};
  CHECK_FALSE(estimate_order(zeros, 256, 15, 7).valid);

  CHECK_FALSE(estimate_order({}, 256, 15, 7).valid);
}

TEST_CASE("estimate_order aggregates shots that alone are insufficient") {
  // m = 64 gives denominator 4 directly; m = 128 alone gives only 2.
  // For base 2 (order 4), 128 alone verifies nothing (2^2 = 4 != 1), but
  // paired with 64 the lcm path still lands on 4.
  const std::uint64_t lone[] = {128};
  const OrderEstimate partial = estimate_order(lone, 256, 15, 2);
  CHECK_FALSE(partial.valid);

  const std::uint64_t batch[] = {128, 64};
  const OrderEstimate full = estimate_order(batch, 256, 15, 2);
  CHECK(full.valid);
  CHECK(full.order == 4);
}

TEST_CASE("estimate_order never verifies a wrong order") {
  // property over every valid base and a spread of synthetic samples
  for (std::uint64_t base : {2ull, 4ull, 7ull, 8ull, 11ull, 13ull, 14ull}) {
    const std::uint64_t true_order = oracle::brute_force_order(base, 15);
    for (std::uint64_t m = 0; m < 256; m += 3) {
      const std::uint64_t samples[] = {m};
      const OrderEstimate estimate = estimate_order(samples, 256, 15, base);
      if (estimate.valid) {
        CHECK(mod_pow(base, estimate.order, 15) == 1);
        CHECK(estimate.order % true_order == 0);  // verified orders are multiples
      }
    }
  }
}

TEST_CASE("kernel-driven order finding equals the brute-force oracle") {
  // N=15, every valid base, a few seeds each; aggregated 10-shot batches
  initialize_worker("statevector", {{"seed", 55}});
  for (std::uint64_t base : {2ull, 4ull, 7ull, 8ull, 11ull, 13ull, 14ull}) {
    const std::uint64_t expect = oracle::brute_force_order(base, 15);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      initialize_worker("statevector", {{"seed", seed}});
      const ShorAttempt attempt = shor_attempt(15, base, 10);
      REQUIRE(attempt.estimate.valid);
      CHECK(attempt.estimate.order == expect);
    }
  }
}

TEST_CASE("rejected attempt: base 14 has order 2 and 14 == -1 (mod 15)") {
  initialize_worker("statevector", {{"seed", 8}});
  const ShorAttempt attempt = shor_attempt(15, 14, 10);
  CHECK(attempt.estimate.valid);
  CHECK(attempt.estimate.order == 2);
  CHECK(attempt.divisors.empty());  // rejected by the -1 test, never wrong divisors
}

TEST_CASE("productive attempt: base 7 yields the {3, 5} split") {
  initialize_worker("statevector", {{"seed", 8}});
  const ShorAttempt attempt = shor_attempt(15, 7, 10);
  CHECK(attempt.divisors == std::set<std::uint64_t>{3, 5});
}

TEST_CASE("shor_factor(15) finds {3, 5} in serial and parallel modes") {
  for (const ShorMode mode : {ShorMode::Serial, ShorMode::Parallel}) {
    ShorOptions options;
    options.mode = mode;
    options.seed = 1;
    const ShorResult result = shor_factor(15, options);
    REQUIRE(result.found);
    CHECK(result.divisors == std::set<std::uint64_t>{3, 5});
    for (std::uint64_t d : result.divisors) {
      CHECK(15 % d == 0);
      CHECK(d > 1);
      CHECK(d < 15);
    }
  }
}

TEST_CASE("shor_factor gcd shortcut skips the kernel") {
  // scan a few seeds for a run whose first draw shares a factor with 15
  bool exercised = false;
  for (std::uint64_t seed = 0; seed < 40 && !exercised; ++seed) {
    ShorOptions options;
    options.seed = seed;
    const ShorResult result = shor_factor(15, options);
    REQUIRE(result.found);
    const ShorAttempt& first = result.attempts.front();
    if (!first.used_kernel && !first.divisors.empty()) {
      exercised = true;
      CHECK(std::gcd(first.base, std::uint64_t{15}) > 1);
      CHECK(result.divisors == std::set<std::uint64_t>{3, 5});
    }
  }
  CHECK(exercised);
}

TEST_CASE("shor_factor handles the even shortcut and bad input") {
  const ShorResult even = shor_factor(14, {});
  CHECK(even.found);
  CHECK(even.divisors.count(2) == 1);
  CHECK(even.divisors.count(7) == 1);
  CHECK_THROWS_AS(shor_factor(3, {}), std::invalid_argument);
}

TEST_CASE("shor_factor on a prime exhausts attempts without lying") {
  ShorOptions options;
  options.seed = 2;
  options.max_attempts = 4;
  const ShorResult result = shor_factor(7, options);  // timing workload in the scaling study
  CHECK_FALSE(result.found);
  CHECK(result.divisors.empty());
  for (const ShorAttempt& attempt : result.attempts) CHECK(attempt.divisors.empty());
}

TEST_CASE("shor_factor divisor validity holds across seeds and both modes") {
  for (std::uint64_t seed = 10; seed < 16; ++seed) {
    for (const ShorMode mode : {ShorMode::Serial, ShorMode::Parallel}) {
      ShorOptions options;
      options.mode = mode;
      options.seed = seed;
      const ShorResult result = shor_factor(15, options);
      for (std::uint64_t d : result.divisors) {
        CHECK(15 % d == 0);
        CHECK(d != 1);
        CHECK(d != 15);
      }
      if (result.found) CHECK_FALSE(result.divisors.empty());
    }
  }
}

TEST_CASE("mod_pow and mod_mul basics") {
  CHECK(mod_pow(7, 0, 15) == 1);
  CHECK(mod_pow(7, 4, 15) == 1);
  CHECK(mod_pow(7, 2, 15) == 4);
  CHECK(mod_pow(2, 63, 100) == 8);
  CHECK(mod_pow(5, 3, 1) == 0);
  CHECK(mod_mul(0xFFFFFFFFull, 0xFFFFFFFFull, 1000000007ull) == 992409480ull);
}
