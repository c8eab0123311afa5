#include "qcrt/buffer.hpp"

#include <chrono>
#include <random>
#include <stdexcept>

#include "qcrt/rng.hpp"

namespace qcrt {

BufferRegistry& BufferRegistry::instance() {
  static BufferRegistry registry;
  return registry;
}

BufferRegistry::BufferRegistry() {
  std::random_device rd;
  name_state_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^
                static_cast<std::uint64_t>(
                    std::chrono::steady_clock::now().time_since_epoch().count());
}

std::string BufferRegistry::fresh_name_locked() {
  static constexpr char kAlphabet[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  constexpr std::size_t kBase = sizeof(kAlphabet) - 1;
  for (;;) {
    std::string name = "qrg_";
    std::uint64_t bits = mix64(name_state_++);
    for (int i = 0; i < 6; ++i) {
      name += kAlphabet[bits % kBase];
      bits /= kBase;
    }
    if (!buffers_.contains(name)) return name;
  }
}

BufferPtr BufferRegistry::allocate(std::uint32_t n_qubits) {
  if (n_qubits == 0) throw std::invalid_argument("qalloc: register size must be >= 1");
  std::lock_guard<std::mutex> lock(mutex_);
  std::string name = fresh_name_locked();
  auto buffer = std::make_shared<AcceleratorBuffer>(name, n_qubits);
  buffers_.emplace(std::move(name), buffer);
  return buffer;
}

BufferPtr BufferRegistry::find(const std::string& name) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = buffers_.find(name);
  return it == buffers_.end() ? nullptr : it->second;
}

std::size_t BufferRegistry::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return buffers_.size();
}

BufferPtr qalloc(std::uint32_t n_qubits) {
  return BufferRegistry::instance().allocate(n_qubits);
}

}  // namespace qcrt
