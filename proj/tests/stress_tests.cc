// Concurrency stress suite. Run it under ThreadSanitizer via
// -DQCRT_SANITIZE_THREAD=ON; the logical invariants below hold either way.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <barrier>
#include <thread>
#include <vector>

#include "qcrt/algorithms/bell.hpp"
#include "qcrt/runtime.hpp"

using namespace qcrt;

TEST_CASE("registry stays exact under 24 workers x 100 qallocs") {
  const std::size_t before = BufferRegistry::instance().size();
  constexpr int kWorkers = 24;
  constexpr int kAllocs = 100;

  std::barrier gate(kWorkers);
  std::vector<std::thread> pool;
  std::vector<std::vector<BufferPtr>> owned(kWorkers);
  for (int w = 0; w < kWorkers; ++w) {
    pool.emplace_back([&gate, &owned, w] {
      gate.arrive_and_wait();  // maximize interleaving
      for (int i = 0; i < kAllocs; ++i) owned[w].push_back(qalloc(2));
    });
  }
  for (std::thread& t : pool) t.join();

  CHECK(BufferRegistry::instance().size() == before + kWorkers * kAllocs);
  std::set<std::string> names;
  for (const auto& per_worker : owned) {
    for (const BufferPtr& buffer : per_worker) names.insert(buffer->name());
  }
  CHECK(names.size() == kWorkers * kAllocs);
}

TEST_CASE("interleaved Bell executions keep per-buffer totals exact") {
  constexpr int kWorkers = 8;
  constexpr int kRounds = 4;
  constexpr std::uint64_t kShots = 256;

  std::vector<TaskHandle<BufferPtr>> handles;
  handles.reserve(kWorkers);
  for (int w = 0; w < kWorkers; ++w) {
    handles.push_back(spawn_worker("statevector", {{"seed", 2000 + w}}, [] {
      BufferPtr buffer = qalloc(2);
      for (int round = 0; round < kRounds; ++round) {
        execute(algo::bell_kernel(), *buffer, kShots);
      }
      return buffer;
    }));
  }

  for (auto& handle : handles) {
    BufferPtr buffer = handle.join();
    CHECK(buffer->total_shots() == kRounds * kShots);
    for (const auto& [key, tally] : buffer->measurements()) {
      CHECK((key == "00" || key == "11"));
    }
  }
}

TEST_CASE("concurrent executes into one shared buffer merge atomically") {
  // user-beware semantically, but the counts must still add up exactly
  BufferPtr shared = qalloc(2);
  constexpr int kWorkers = 8;
  constexpr std::uint64_t kShots = 250;

  std::vector<TaskHandle<int>> handles;
  handles.reserve(kWorkers);
  for (int w = 0; w < kWorkers; ++w) {
    handles.push_back(spawn_worker("statevector", {{"seed", 3000 + w}}, [shared] {
      execute(algo::bell_kernel(), *shared, kShots);
      return 0;
    }));
  }
  for (auto& handle : handles) handle.join();
  CHECK(shared->total_shots() == kWorkers * kShots);
}

TEST_CASE("QpuManager survives 1000 set/get rounds on 16 workers") {
  constexpr int kWorkers = 16;
  constexpr int kRounds = 1000;
  std::atomic<int> wrong_instance{0};

  std::barrier gate(kWorkers);
  std::vector<std::thread> pool;
  for (int w = 0; w < kWorkers; ++w) {
    pool.emplace_back([&gate, &wrong_instance] {
      gate.arrive_and_wait();
      for (int round = 0; round < kRounds; ++round) {
        AcceleratorPtr mine = get_accelerator("statevector");
        QpuManager::instance().set(mine);
        AcceleratorPtr back = QpuManager::instance().get();
        if (back != mine) wrong_instance.fetch_add(1);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  CHECK(wrong_instance.load() == 0);
}

TEST_CASE("spawned tasks always start uninitialized") {
  // thread ids may be reused across tasks; the spawn wrapper must not leak
  // a dead worker's accelerator into a new task
  for (int round = 0; round < 50; ++round) {
    auto stale = spawn([] {
      initialize_worker("statevector");
      return 0;
    });
    stale.join();
    auto fresh = spawn([] { return worker_initialized() ? 1 : 0; });
    CHECK(fresh.join() == 0);
  }
}

TEST_CASE("concurrent buffer metadata and measurement access") {
  BufferPtr buffer = qalloc(3);
  std::vector<std::thread> pool;
  for (int w = 0; w < 6; ++w) {
    pool.emplace_back([buffer, w] {
      for (int i = 0; i < 200; ++i) {
        if (w % 2 == 0) {
          buffer->merge_measurements({{"000", 1}});
          buffer->set_information("writer_" + std::to_string(w), i);
        } else {
          (void)buffer->measurements();
          (void)buffer->total_shots();
          (void)buffer->information();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  CHECK(buffer->total_shots() == 3 * 200);
}
