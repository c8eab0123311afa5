#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace qcrt::detail {

// Minimum work items before fanning out; below this the dispatch cost
// dominates.
inline constexpr std::size_t kParallelGrain = std::size_t{1} << 13;

/// Persistent helper threads for data-parallel amplitude updates. One pool
/// per owning thread (thread_local), so concurrent simulations never share
/// dispatch state. Helpers idle on a condition variable between gates;
/// re-dispatch is a wakeup, not a thread spawn.
class GatePool {
 public:
  static GatePool& local() {
    thread_local GatePool pool;
    return pool;
  }

  /// Runs fn(begin, end) over `n_chunks` contiguous chunks of [0, count).
  /// The caller executes chunk 0; helpers take the rest. Chunk boundaries
  /// depend only on (count, n_chunks), so results are identical to the
  /// single-threaded run.
  void run(std::size_t count, std::size_t n_chunks,
           const std::function<void(std::size_t, std::size_t)>& fn) {
    const std::size_t chunk = (count + n_chunks - 1) / n_chunks;
    // chunks that actually carry work (the last ones may be empty)
    std::size_t active = 0;
    while (active < n_chunks && active * chunk < count) ++active;
    if (active <= 1) {
      fn(0, count);
      return;
    }

    ensure_helpers(active - 1);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      fn_ = &fn;
      count_ = count;
      chunk_ = chunk;
      active_ = active;
      remaining_ = active - 1;
      ++generation_;
    }
    work_ready_.notify_all();

    fn(0, chunk < count ? chunk : count);

    std::unique_lock<std::mutex> lock(mutex_);
    all_done_.wait(lock, [this] { return remaining_ == 0; });
    fn_ = nullptr;
  }

  GatePool(const GatePool&) = delete;
  GatePool& operator=(const GatePool&) = delete;

  ~GatePool() {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      stop_ = true;
    }
    work_ready_.notify_all();
    for (std::thread& helper : helpers_) helper.join();
  }

 private:
  GatePool() = default;

  void ensure_helpers(std::size_t needed) {
    while (helpers_.size() < needed) {
      const std::size_t index = helpers_.size();
      // a fresh helper must skip generations published before it existed
      const std::uint64_t born_at = generation_;
      helpers_.emplace_back([this, index, born_at] { helper_loop(index, born_at); });
    }
  }

  void helper_loop(std::size_t index, std::uint64_t seen) {
    for (;;) {
      const std::function<void(std::size_t, std::size_t)>* fn = nullptr;
      std::size_t begin = 0, end = 0;
      bool participate = false;
      {
        std::unique_lock<std::mutex> lock(mutex_);
        work_ready_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        if (index + 1 < active_) {
          participate = true;
          fn = fn_;
          begin = (index + 1) * chunk_;
          end = begin + chunk_ < count_ ? begin + chunk_ : count_;
        }
      }
      if (!participate) continue;
      (*fn)(begin, end);
      bool last = false;
      {
        std::lock_guard<std::mutex> lock(mutex_);
        last = --remaining_ == 0;
      }
      if (last) all_done_.notify_one();
    }
  }

  std::mutex mutex_;
  std::condition_variable work_ready_;
  std::condition_variable all_done_;
  std::vector<std::thread> helpers_;

  const std::function<void(std::size_t, std::size_t)>* fn_ = nullptr;
  std::size_t count_ = 0;
  std::size_t chunk_ = 0;
  std::size_t active_ = 0;
  std::size_t remaining_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

/// Runs fn(begin, end) over a partition of [0, count) on up to `workers`
/// threads (the calling thread handles the first chunk). The per-item work
/// must be independent; the result is identical for any worker count.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  if (count == 0) return;
  std::size_t n_chunks = workers > 1 ? static_cast<std::size_t>(workers) : 1;
  if (n_chunks > count) n_chunks = count;
  if (n_chunks <= 1 || count < kParallelGrain) {
    fn(std::size_t{0}, count);
    return;
  }
  const std::function<void(std::size_t, std::size_t)> erased = std::forward<Fn>(fn);
  GatePool::local().run(count, n_chunks, erased);
}

}  // namespace qcrt::detail
