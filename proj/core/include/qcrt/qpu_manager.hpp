#pragma once

#include <map>
#include <mutex>
#include <thread>

#include "qcrt/accelerator.hpp"

namespace qcrt {

/// Process-wide singleton mapping a worker (thread) identity to its private
/// Accelerator. Entries persist until the same worker re-registers, so
/// pooled runtimes that reuse thread ids stay safe via replace-on-reinit.
class QpuManager {
 public:
  static QpuManager& instance();

  /// Registers `qpu` for the calling worker, replacing any previous entry.
  void set(AcceleratorPtr qpu);

  /// The calling worker's Accelerator, or nullptr when unregistered.
  AcceleratorPtr get() const;

  void set_for(std::thread::id worker, AcceleratorPtr qpu);
  AcceleratorPtr get_for(std::thread::id worker) const;

  /// Drops the calling worker's entry. Spawned tasks start from a cleared
  /// entry so a reused thread id never leaks a dead worker's accelerator.
  void clear_current();

  std::size_t size() const;

  QpuManager(const QpuManager&) = delete;
  QpuManager& operator=(const QpuManager&) = delete;

 private:
  QpuManager() = default;

  mutable std::mutex mutex_;
  std::map<std::thread::id, AcceleratorPtr> qpu_map_;
};

}  // namespace qcrt
