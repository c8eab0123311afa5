#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qcrt/circuit.hpp"
#include "qcrt/pauli.hpp"

namespace qcrt::algo {

/// The Deuteron Hamiltonian:
///   5.907*I - 2.1433*X0X1 - 2.1433*Y0Y1 + 0.21829*Z0 - 6.125*Z1.
Hamiltonian deuteron_hamiltonian();

/// The two-qubit ansatz X(q0); Ry(q1, theta); CX(q1, q0). No trailing
/// Measure; expectations are evaluated on the statevector.
Circuit ansatz(double theta);

/// Builds a circuit for a given parameter vector.
using AnsatzBuilder = std::function<Circuit(std::span<const double>)>;

struct ObjectiveValue {
  double energy = 0.0;
  std::vector<double> gradient;
};

/// Energy and central-difference gradient of <psi(params)|H|psi(params)>.
class ObjectiveFunction {
 public:
  ObjectiveFunction(Hamiltonian hamiltonian, AnsatzBuilder builder, std::size_t n_params,
                    double fd_step = 1e-3);

  std::size_t n_params() const { return n_params_; }

  double energy(std::span<const double> params) const;
  ObjectiveValue operator()(std::span<const double> params) const;

 private:
  Hamiltonian hamiltonian_;
  AnsatzBuilder builder_;
  std::size_t n_params_;
  double fd_step_;
};

struct VqeConfig {
  std::vector<double> initial_params{0.0};
  double fd_step = 1e-3;
  double gradient_tolerance = 1e-5;
  int max_iterations = 500;
};

struct VqeResult {
  bool converged = false;
  double opt_val = 0.0;
  std::vector<double> opt_params;
  int iterations = 0;
  std::vector<double> energy_history;
};

/// Gradient descent with backtracking (Armijo) line search over the
/// objective. Stops when the gradient norm drops below the tolerance;
/// otherwise reports the best value seen with converged == false.
VqeResult minimize(const ObjectiveFunction& objective, const VqeConfig& config);

/// The Deuteron VQE instance: builds the shipped Hamiltonian and ansatz,
/// then minimizes over theta.
VqeResult vqe_minimize(const VqeConfig& config = {});

}  // namespace qcrt::algo
