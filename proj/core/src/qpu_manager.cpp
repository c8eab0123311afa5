#include "qcrt/qpu_manager.hpp"

namespace qcrt {

QpuManager& QpuManager::instance() {
  static QpuManager manager;
  return manager;
}

void QpuManager::set(AcceleratorPtr qpu) { set_for(std::this_thread::get_id(), std::move(qpu)); }

AcceleratorPtr QpuManager::get() const { return get_for(std::this_thread::get_id()); }

void QpuManager::set_for(std::thread::id worker, AcceleratorPtr qpu) {
  std::lock_guard<std::mutex> lock(mutex_);
  qpu_map_[worker] = std::move(qpu);
}

AcceleratorPtr QpuManager::get_for(std::thread::id worker) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = qpu_map_.find(worker);
  return it == qpu_map_.end() ? nullptr : it->second;
}

void QpuManager::clear_current() {
  std::lock_guard<std::mutex> lock(mutex_);
  qpu_map_.erase(std::this_thread::get_id());
}

std::size_t QpuManager::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return qpu_map_.size();
}

}  // namespace qcrt
