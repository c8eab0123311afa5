#include "qcrt/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcrt {

namespace {
char op_char(PauliOp op) {
  switch (op) {
    case PauliOp::X: return 'X';
    case PauliOp::Y: return 'Y';
    case PauliOp::Z: return 'Z';
  }
  return '?';
}
}  // namespace

PauliString PauliString::operator*(const PauliString& other) const {
  std::vector<std::pair<std::uint32_t, PauliOp>> merged = ops_;
  for (const auto& [q, op] : other.ops_) {
    for (const auto& [mine, _] : ops_) {
      if (mine == q) {
        throw std::invalid_argument("PauliString: product factors must act on disjoint qubits");
      }
    }
    merged.emplace_back(q, op);
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return PauliString(std::move(merged));
}

std::uint32_t PauliString::max_qubit() const {
  return ops_.empty() ? 0 : ops_.back().first;
}

std::string PauliString::to_string() const {
  if (ops_.empty()) return "I";
  std::string out;
  for (const auto& [q, op] : ops_) {
    if (!out.empty()) out += '*';
    out += op_char(op);
    out += std::to_string(q);
  }
  return out;
}

std::uint32_t Hamiltonian::max_qubit() const {
  std::uint32_t max = 0;
  for (const auto& [c, p] : terms) max = std::max(max, p.max_qubit());
  return max;
}

double Hamiltonian::one_norm() const {
  double total = 0.0;
  for (const auto& [c, p] : terms) total += std::abs(c);
  return total;
}

}  // namespace qcrt
