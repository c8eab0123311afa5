#pragma once

#include <future>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

#include "qcrt/accelerator.hpp"
#include "qcrt/buffer.hpp"
#include "qcrt/circuit.hpp"
#include "qcrt/qpu_manager.hpp"

namespace qcrt {

/// Creates a fresh Accelerator and registers it for the calling worker.
/// Must run on the worker that will execute kernels. Idempotent per worker:
/// re-initialization replaces the previous instance.
void initialize_worker(const std::string& backend = "statevector",
                       const nlohmann::json& config = nlohmann::json::object());

/// True when the calling worker has an Accelerator registered.
bool worker_initialized();

/// Runs `kernel` for `shots` shots on the calling worker's private
/// Accelerator and merges the Counts into `buffer`. Throws
/// std::runtime_error("worker not initialized...") without
/// initialize_worker, std::invalid_argument when kernel.num_qubits() >
/// buffer.size().
void execute(const Circuit& kernel, AcceleratorBuffer& buffer, std::uint64_t shots);

/// Uses the worker accelerator's default shot count.
void execute(const Circuit& kernel, AcceleratorBuffer& buffer);

/// Handle to a spawned task. join() returns the task's value exactly once;
/// a second join throws, and an exception thrown by the task surfaces here.
template <typename T>
class TaskHandle {
 public:
  explicit TaskHandle(std::future<T> future) : future_(std::move(future)) {}

  T join() {
    if (!future_.valid()) throw std::logic_error("TaskHandle: task already joined");
    return future_.get();
  }

  bool joinable() const { return future_.valid(); }

 private:
  std::future<T> future_;
};

/// Runs `task` concurrently with the spawner. The task may call
/// initialize_worker, qalloc and execute freely. Each spawned task starts
/// with no registered accelerator, even if the platform reuses thread ids.
template <typename F>
auto spawn(F&& task) -> TaskHandle<std::invoke_result_t<std::decay_t<F>>> {
  using R = std::invoke_result_t<std::decay_t<F>>;
  return TaskHandle<R>(std::async(std::launch::async, [task = std::forward<F>(task)]() mutable {
    QpuManager::instance().clear_current();
    return task();
  }));
}

template <typename T>
T join(TaskHandle<T>& handle) {
  return handle.join();
}

/// Convenience wrapper: spawns a task whose worker is pre-initialized with
/// the given backend/config before `task` runs.
template <typename F>
auto spawn_worker(std::string backend, nlohmann::json config, F&& task)
    -> TaskHandle<std::invoke_result_t<std::decay_t<F>>> {
  return spawn([backend = std::move(backend), config = std::move(config),
                task = std::forward<F>(task)]() mutable {
    initialize_worker(backend, config);
    return task();
  });
}

/// Serializes the buffer in the runtime's print format: a top-level
/// "AcceleratorBuffer" key holding name, size, Information and Measurements
/// (keys sorted), two-space indentation.
std::string buffer_to_json(const AcceleratorBuffer& buffer);

}  // namespace qcrt
