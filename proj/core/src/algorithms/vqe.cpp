#include "qcrt/algorithms/vqe.hpp"

#include <cmath>
#include <stdexcept>

#include "qcrt/simulator.hpp"
#include "qcrt/state_vector.hpp"

namespace qcrt::algo {

Hamiltonian deuteron_hamiltonian() {
  Hamiltonian h;
  h.add(5.907, PauliString::identity());
  h.add(-2.1433, PauliString::x(0) * PauliString::x(1));
  h.add(-2.1433, PauliString::y(0) * PauliString::y(1));
  h.add(0.21829, PauliString::z(0));
  h.add(-6.125, PauliString::z(1));
  return h;
}

Circuit ansatz(double theta) {
  Circuit circuit(2, "ansatz");
  circuit.append(Instruction::x(0));
  circuit.append(Instruction::ry(1, theta));
  circuit.append(Instruction::cx(1, 0));
  return circuit;
}

ObjectiveFunction::ObjectiveFunction(Hamiltonian hamiltonian, AnsatzBuilder builder,
                                     std::size_t n_params, double fd_step)
    : hamiltonian_(std::move(hamiltonian)),
      builder_(std::move(builder)),
      n_params_(n_params),
      fd_step_(fd_step) {
  if (fd_step_ <= 0.0) throw std::invalid_argument("ObjectiveFunction: step must be > 0");
}

double ObjectiveFunction::energy(std::span<const double> params) const {
  if (params.size() != n_params_) {
    throw std::invalid_argument("ObjectiveFunction: expected " + std::to_string(n_params_) +
                                " parameter(s), got " + std::to_string(params.size()));
  }
  const Circuit circuit = builder_(params);
  StateVector state(circuit.num_qubits());
  apply_circuit(state, circuit);
  return expectation(state, hamiltonian_);
}

ObjectiveValue ObjectiveFunction::operator()(std::span<const double> params) const {
  ObjectiveValue value;
  value.energy = energy(params);
  value.gradient.resize(n_params_);
  std::vector<double> shifted(params.begin(), params.end());
  for (std::size_t i = 0; i < n_params_; ++i) {
    const double original = shifted[i];
    shifted[i] = original + fd_step_;
    const double plus = energy(shifted);
    shifted[i] = original - fd_step_;
    const double minus = energy(shifted);
    shifted[i] = original;
    value.gradient[i] = (plus - minus) / (2.0 * fd_step_);
  }
  return value;
}

namespace {

double norm2(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x * x;
  return std::sqrt(total);
}

}  // namespace

VqeResult minimize(const ObjectiveFunction& objective, const VqeConfig& config) {
  if (config.max_iterations < 1) throw std::invalid_argument("minimize: max_iterations >= 1");

  VqeResult result;
  std::vector<double> params = config.initial_params;
  ObjectiveValue current = objective(params);
  result.energy_history.push_back(current.energy);
  result.opt_val = current.energy;
  result.opt_params = params;

  constexpr double kArmijo = 1e-4;
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    result.iterations = iter;
    const double grad_norm = norm2(current.gradient);
    if (grad_norm < config.gradient_tolerance) {
      result.converged = true;
      break;
    }

    // Backtracking line search along -gradient.
    double step = 1.0;
    std::vector<double> trial(params.size());
    ObjectiveValue next;
    bool accepted = false;
    for (int backtrack = 0; backtrack < 40; ++backtrack) {
      for (std::size_t i = 0; i < params.size(); ++i) {
        trial[i] = params[i] - step * current.gradient[i];
      }
      next = objective(trial);
      if (next.energy <= current.energy - kArmijo * step * grad_norm * grad_norm) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // step underflow: report best so far

    params = trial;
    current = next;
    result.energy_history.push_back(current.energy);
    if (current.energy < result.opt_val) {
      result.opt_val = current.energy;
      result.opt_params = params;
    }
  }

  if (!result.converged && norm2(current.gradient) < config.gradient_tolerance) {
    result.converged = true;
  }
  return result;
}

VqeResult vqe_minimize(const VqeConfig& config) {
  const ObjectiveFunction objective(
      deuteron_hamiltonian(),
      [](std::span<const double> params) { return ansatz(params[0]); },
      /*n_params=*/1, config.fd_step);
  return minimize(objective, config);
}

}  // namespace qcrt::algo
