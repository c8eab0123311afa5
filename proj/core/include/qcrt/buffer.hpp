#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "qcrt/counts.hpp"

#include "json.hpp"

namespace qcrt {

/// A named qubit register plus the measurement tallies accumulated across
/// kernel executions. Shareable across workers; the measurement merge and
/// the metadata map are internally synchronized.
class AcceleratorBuffer {
 public:
  AcceleratorBuffer(std::string name, std::uint32_t size)
      : name_(std::move(name)), size_(size) {}

  const std::string& name() const { return name_; }
  std::uint32_t size() const { return size_; }

  Counts measurements() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return measurements_;
  }

  std::uint64_t total_shots() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return qcrt::total_shots(measurements_);
  }

  /// Adds tallies key by key. Atomic per buffer under concurrent executors.
  void merge_measurements(const Counts& counts) {
    std::lock_guard<std::mutex> lock(mutex_);
    merge_counts(measurements_, counts);
  }

  void set_information(const std::string& key, nlohmann::json value) {
    std::lock_guard<std::mutex> lock(mutex_);
    information_[key] = std::move(value);
  }

  std::map<std::string, nlohmann::json> information() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return information_;
  }

 private:
  std::string name_;
  std::uint32_t size_;
  mutable std::mutex mutex_;
  Counts measurements_;
  std::map<std::string, nlohmann::json> information_;
};

using BufferPtr = std::shared_ptr<AcceleratorBuffer>;

/// Process-wide name -> buffer map. Insertion is atomic; names stay unique
/// for the process lifetime (entries are never evicted).
class BufferRegistry {
 public:
  static BufferRegistry& instance();

  /// Allocates a buffer with a fresh "qrg_"-prefixed name and registers it.
  BufferPtr allocate(std::uint32_t n_qubits);

  BufferPtr find(const std::string& name) const;
  std::size_t size() const;

  BufferRegistry(const BufferRegistry&) = delete;
  BufferRegistry& operator=(const BufferRegistry&) = delete;

 private:
  BufferRegistry();

  std::string fresh_name_locked();

  mutable std::mutex mutex_;
  std::map<std::string, BufferPtr> buffers_;
  std::uint64_t name_state_;
};

/// Allocates an n-qubit buffer in the global registry. Safe under arbitrary
/// concurrency. Throws std::invalid_argument for n == 0.
BufferPtr qalloc(std::uint32_t n_qubits);

}  // namespace qcrt
