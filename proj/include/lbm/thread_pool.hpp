#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <string_view>
#include <thread>
#include <vector>

namespace lbm {

enum class Schedule { Dynamic, Static };

const char* to_string(Schedule s);
Schedule schedule_from_string(std::string_view name);  // throws std::invalid_argument

/// Persistent worker pool for index-range parallelism. Dynamic scheduling
/// hands out one index at a time from an atomic counter; static scheduling
/// assigns contiguous blocks. The calling thread participates, so
/// ThreadPool(1) runs everything inline.
class ThreadPool {
  public:
    explicit ThreadPool(int workers);
    ~ThreadPool();
    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    int workers() const { return workers_; }

    /// Runs body(i) for every i in [begin, end). Blocks until done.
    /// The first exception thrown by any body is rethrown here.
    void parallel_for(int begin, int end, Schedule schedule,
                      const std::function<void(int)>& body);

  private:
    void worker_loop(int tid);
    void participate(int tid);

    int workers_;
    std::vector<std::thread> threads_;

    std::mutex mutex_;
    std::condition_variable start_cv_;
    std::condition_variable done_cv_;
    std::uint64_t generation_ = 0;
    bool stopping_ = false;

    // Current job; valid while running_ > 0.
    const std::function<void(int)>* body_ = nullptr;
    int begin_ = 0;
    int end_ = 0;
    Schedule schedule_ = Schedule::Dynamic;
    std::atomic<int> next_{0};
    int running_ = 0;
    std::exception_ptr error_;
};

}  // namespace lbm
