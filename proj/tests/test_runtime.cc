#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <regex>
#include <thread>
#include <vector>

#include "qcrt/algorithms/bell.hpp"
#include "qcrt/runtime.hpp"
#include "support/oracles.hpp"

using namespace qcrt;

TEST_CASE("qalloc returns a fresh registered buffer") {
  const std::size_t before = BufferRegistry::instance().size();
  BufferPtr buffer = qalloc(2);
  CHECK(buffer->size() == 2);
  CHECK(buffer->measurements().empty());
  CHECK(buffer->total_shots() == 0);
  CHECK(BufferRegistry::instance().size() == before + 1);
  CHECK(BufferRegistry::instance().find(buffer->name()) == buffer);

  // names follow the qrg_ + 6 alphanumerics convention
  const std::regex name_shape("qrg_[A-Za-z0-9]{6}");
  CHECK(std::regex_match(buffer->name(), name_shape));
}

TEST_CASE("qalloc(0) is rejected") {
  CHECK_THROWS_AS(qalloc(0), std::invalid_argument);
}

TEST_CASE("concurrent qalloc never loses an insert") {
  const std::size_t before = BufferRegistry::instance().size();
  constexpr int kWorkers = 8;
  constexpr int kAllocs = 100;
  std::vector<std::thread> pool;
  std::vector<std::vector<std::string>> names(kWorkers);
  for (int w = 0; w < kWorkers; ++w) {
    pool.emplace_back([&names, w] {
      for (int i = 0; i < kAllocs; ++i) names[w].push_back(qalloc(2)->name());
    });
  }
  for (std::thread& t : pool) t.join();

  CHECK(BufferRegistry::instance().size() == before + kWorkers * kAllocs);
  std::set<std::string> distinct;
  for (const auto& per_worker : names) distinct.insert(per_worker.begin(), per_worker.end());
  CHECK(distinct.size() == kWorkers * kAllocs);
}

TEST_CASE("get_accelerator returns independent instances") {
  AcceleratorPtr a = get_accelerator("statevector", {{"seed", 1}, {"shots", 512}});
  AcceleratorPtr b = get_accelerator("statevector", {{"seed", 1}, {"shots", 512}});
  CHECK(a != b);

  // advancing a's RNG (by executing) must not change what b samples next
  const Circuit bell = algo::bell_kernel();
  const Counts b_fresh = get_accelerator("statevector", {{"seed", 1}})->execute(bell, 256);
  (void)a->execute(bell, 256);
  (void)a->execute(bell, 256);
  const Counts b_after = b->execute(bell, 256);
  AcceleratorPtr c = get_accelerator("statevector", {{"seed", 1}});
  CHECK(b_after == c->execute(bell, 256));
  CHECK(b_after == b_fresh);
}

TEST_CASE("get_accelerator honors the shots default and rejects junk") {
  AcceleratorPtr acc = get_accelerator("statevector", {{"shots", 1024}});
  CHECK(acc->config().default_shots == 1024);
  CHECK_THROWS_AS(get_accelerator("bogus", {}), std::invalid_argument);
  CHECK_THROWS_AS(get_accelerator("statevector", {{"view", 1}}), std::invalid_argument);
}

TEST_CASE("repeat executions of one accelerator draw fresh randomness") {
  AcceleratorPtr acc = get_accelerator("statevector", {{"seed", 9}});
  const Circuit bell = algo::bell_kernel();
  const Counts first = acc->execute(bell, 1024);
  const Counts second = acc->execute(bell, 1024);
  CHECK(first != second);  // astronomically unlikely to tie at 1024 shots

  acc->reseed(9);
  CHECK(acc->execute(bell, 1024) == first);
}

TEST_CASE("execute requires an initialized worker") {
  auto handle = spawn([] {
    BufferPtr buffer = qalloc(2);
    CHECK_FALSE(worker_initialized());
    CHECK_THROWS_WITH_AS(execute(algo::bell_kernel(), *buffer, 16),
                         doctest::Contains("worker not initialized"), std::runtime_error);
    return 0;
  });
  handle.join();
}

TEST_CASE("execute merges counts additively and checks widths") {
  auto handle = spawn([] {
    initialize_worker("statevector", {{"seed", 4}});
    BufferPtr buffer = qalloc(2);
    execute(algo::bell_kernel(), *buffer, 1024);
    CHECK(buffer->total_shots() == 1024);

    execute(algo::bell_kernel(), *buffer, 1024);
    const Counts counts = buffer->measurements();
    std::uint64_t total = 0;
    for (const auto& [key, tally] : counts) {
      CHECK((key == "00" || key == "11"));
      total += tally;
    }
    CHECK(total == 2048);

    BufferPtr narrow = qalloc(1);
    CHECK_THROWS_AS(execute(algo::bell_kernel(), *narrow, 8), std::invalid_argument);
    return 0;
  });
  handle.join();
}

TEST_CASE("initialize_worker replaces the previous accelerator") {
  auto handle = spawn([] {
    initialize_worker("statevector", {{"shots", 128}});
    AcceleratorPtr first = QpuManager::instance().get();
    REQUIRE(first != nullptr);
    CHECK(first->config().default_shots == 128);

    initialize_worker("statevector", {{"shots", 4096}});
    AcceleratorPtr second = QpuManager::instance().get();
    REQUIRE(second != nullptr);
    CHECK(second != first);
    CHECK(second->config().default_shots == 4096);
    return 0;
  });
  handle.join();
}

TEST_CASE("QpuManager maps each worker to its own instance") {
  constexpr int kWorkers = 16;
  std::vector<std::thread> pool;
  std::atomic<int> mismatches{0};
  for (int w = 0; w < kWorkers; ++w) {
    pool.emplace_back([&mismatches] {
      for (int round = 0; round < 1000; ++round) {
        AcceleratorPtr mine = get_accelerator("statevector");
        QpuManager::instance().set(mine);
        if (QpuManager::instance().get() != mine) mismatches.fetch_add(1);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  CHECK(mismatches.load() == 0);
}

TEST_CASE("spawn/join carry values and propagate failures") {
  auto one = spawn([] { return 1; });
  CHECK(one.join() == 1);
  CHECK_THROWS_AS(one.join(), std::logic_error);

  auto boom = spawn([]() -> int { throw std::runtime_error("task failed"); });
  CHECK_THROWS_WITH_AS(boom.join(), "task failed", std::runtime_error);
}

TEST_CASE("two spawned Bell tasks fill two private buffers") {
  auto task = [] {
    initialize_worker("statevector");
    BufferPtr buffer = qalloc(2);
    execute(algo::bell_kernel(), *buffer, 1024);
    return buffer;
  };
  auto t0 = spawn(task);
  auto t1 = spawn(task);
  BufferPtr q0 = t0.join();
  BufferPtr q1 = t1.join();
  CHECK(q0->name() != q1->name());
  for (const BufferPtr& buffer : {q0, q1}) {
    CHECK(buffer->total_shots() == 1024);
    for (const auto& [key, tally] : buffer->measurements()) {
      CHECK((key == "00" || key == "11"));
      CHECK(tally >= 448);
      CHECK(tally <= 576);
    }
  }
}

TEST_CASE("24 spawned tasks match their serial execution oracle") {
  // oracle: the same 24 tasks run serially with the same per-task seeds
  const std::size_t before = BufferRegistry::instance().size();
  auto body = [](int index) {
    initialize_worker("statevector", {{"seed", 1000 + index}});
    BufferPtr buffer = qalloc(2);
    execute(algo::bell_kernel(), *buffer, 256);
    return buffer->measurements();
  };

  std::vector<Counts> serial(24);
  for (int i = 0; i < 24; ++i) {
    auto handle = spawn([&body, i] { return body(i); });
    serial[static_cast<std::size_t>(i)] = handle.join();
  }

  std::vector<TaskHandle<Counts>> handles;
  handles.reserve(24);
  for (int i = 0; i < 24; ++i) handles.push_back(spawn([&body, i] { return body(i); }));
  for (int i = 0; i < 24; ++i) {
    const Counts concurrent = handles[static_cast<std::size_t>(i)].join();
    CHECK(concurrent == serial[static_cast<std::size_t>(i)]);
    CHECK(total_shots(concurrent) == 256);
  }
  CHECK(BufferRegistry::instance().size() == before + 48);
}

TEST_CASE("interleaved executions on two workers match serial distributions") {
  // chi-square with p > 0.001: the concurrent histograms must be samples of
  // the same distribution as a serial run
  auto concurrent_task = [] {
    initialize_worker("statevector", {{"seed", 77}});
    BufferPtr buffer = qalloc(2);
    for (int round = 0; round < 10; ++round) execute(algo::bell_kernel(), *buffer, 1000);
    return buffer->measurements();
  };
  auto a = spawn(concurrent_task);
  auto b = spawn(concurrent_task);
  const Counts from_a = a.join();
  const Counts from_b = b.join();

  initialize_worker("statevector", {{"seed", 78}});
  BufferPtr serial = qalloc(2);
  for (int round = 0; round < 10; ++round) execute(algo::bell_kernel(), *serial, 1000);

  for (const Counts& sample : {from_a, from_b}) {
    CHECK(total_shots(sample) == 10000);
    std::size_t dof = 0;
    const double chi2 = oracle::chi_square_two_sample(sample, serial->measurements(), dof);
    CHECK(chi2 < oracle::chi_square_crit_p001(dof));
  }
}

TEST_CASE("buffer_to_json emits the print format") {
  AcceleratorBuffer fresh("qrg_AAAAAA", 2);
  CHECK(buffer_to_json(fresh) ==
        "\"AcceleratorBuffer\": {\n"
        "  \"name\": \"qrg_AAAAAA\",\n"
        "  \"size\": 2,\n"
        "  \"Information\": {},\n"
        "  \"Measurements\": {}\n"
        "}\n");

  AcceleratorBuffer used("qrg_bmQBh0", 2);
  used.merge_measurements({{"11", 5}, {"00", 3}});
  const std::string out = buffer_to_json(used);
  CHECK(out ==
        "\"AcceleratorBuffer\": {\n"
        "  \"name\": \"qrg_bmQBh0\",\n"
        "  \"size\": 2,\n"
        "  \"Information\": {},\n"
        "  \"Measurements\": {\n"
        "    \"00\": 3,\n"
        "    \"11\": 5\n"
        "  }\n"
        "}\n");
  CHECK(out.find("\"00\"") < out.find("\"11\""));  // sort rule

  used.set_information("shots", 8);
  const std::string with_info = buffer_to_json(used);
  CHECK(with_info.find("\"Information\": {\n    \"shots\": 8\n  },") != std::string::npos);
}

TEST_CASE("spawn_worker pre-initializes the task's accelerator") {
  auto handle = spawn_worker("statevector", {{"shots", 321}}, [] {
    REQUIRE(worker_initialized());
    return QpuManager::instance().get()->config().default_shots;
  });
  CHECK(handle.join() == 321);
}
