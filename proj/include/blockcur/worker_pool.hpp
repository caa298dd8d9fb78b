#pragma once

#include "blockcur/types.hpp"

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace blockcur {

/// Fixed-size pool for the phase-parallel selection kernels. run() executes
/// task(0..count-1) with a static stride assignment (participant w takes
/// indices w, w+T, w+2T, ...) and returns once every worker has checked in,
/// which doubles as the phase barrier. The calling thread participates, so a
/// pool of size 1 spawns no threads at all. Which participant executes a task
/// never affects results: tasks must write to disjoint slots.
class WorkerPool {
 public:
  explicit WorkerPool(int threadCount) : threads_(threadCount < 1 ? 1 : threadCount) {
    workers_.reserve(static_cast<std::size_t>(threads_ - 1));
    for (int w = 0; w + 1 < threads_; ++w) {
      workers_.emplace_back([this, w] { worker_loop(w); });
    }
  }

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  ~WorkerPool() {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      stop_ = true;
    }
    wake_.notify_all();
    for (auto& t : workers_) {
      t.join();
    }
  }

  int thread_count() const noexcept { return threads_; }

  void run(Index count, const std::function<void(Index)>& task) {
    if (count <= 0) {
      return;
    }
    if (workers_.empty()) {
      for (Index i = 0; i < count; ++i) {
        task(i);
      }
      return;
    }
    {
      std::lock_guard<std::mutex> lock(mutex_);
      task_ = &task;
      count_ = count;
      finished_ = 0;
      ++generation_;
    }
    wake_.notify_all();
    // The caller is participant threads_-1.
    for (Index i = threads_ - 1; i < count; i += threads_) {
      task(i);
    }
    std::unique_lock<std::mutex> lock(mutex_);
    done_.wait(lock, [this] { return finished_ == static_cast<int>(workers_.size()); });
    task_ = nullptr;
  }

  static int hardware_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }

 private:
  void worker_loop(int id) {
    std::uint64_t seen = 0;
    std::unique_lock<std::mutex> lock(mutex_);
    for (;;) {
      wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) {
        return;
      }
      seen = generation_;
      const auto* task = task_;
      const Index count = count_;
      lock.unlock();
      for (Index i = id; i < count; i += threads_) {
        (*task)(i);
      }
      lock.lock();
      if (++finished_ == static_cast<int>(workers_.size())) {
        done_.notify_one();
      }
    }
  }

  const int threads_;
  std::vector<std::thread> workers_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(Index)>* task_ = nullptr;
  Index count_ = 0;
  int finished_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

}  // namespace blockcur
