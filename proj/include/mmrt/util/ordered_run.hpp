#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace mmrt {

// Runs run(i) -> T on up to `parallelism` workers and hands results to
// commit(i, T&&) strictly in index order on the calling thread, as each
// becomes available. run() exceptions are rethrown (lowest index first) after
// all workers finish; a commit() exception stops further commits and is
// rethrown likewise.
template <typename T, typename RunFn, typename CommitFn>
void ordered_run(std::size_t n, int parallelism, RunFn&& run, CommitFn&& commit) {
  if (n == 0) return;
  const int workers = std::max(1, std::min<int>(parallelism, static_cast<int>(n)));

  std::vector<std::unique_ptr<T>> slots(n);
  std::vector<std::exception_ptr> failures(n);
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        std::unique_ptr<T> result;
        std::exception_ptr failure;
        try {
          result = std::make_unique<T>(run(i));
        } catch (...) {
          failure = std::current_exception();
        }
        std::lock_guard lock(mutex);
        slots[i] = std::move(result);
        failures[i] = failure;
        ready.notify_all();
      }
    });
  }

  std::exception_ptr abort;
  for (std::size_t i = 0; i < n; ++i) {
    std::unique_lock lock(mutex);
    ready.wait(lock, [&] { return slots[i] != nullptr || failures[i] != nullptr; });
    if (abort) continue;
    if (failures[i]) {
      abort = failures[i];
      continue;
    }
    std::unique_ptr<T> value = std::move(slots[i]);
    lock.unlock();
    try {
      commit(i, std::move(*value));
    } catch (...) {
      abort = std::current_exception();
    }
  }
  for (auto& t : pool) t.join();
  if (abort) std::rethrow_exception(abort);
}

}  // namespace mmrt
