#include "lbm/thread_pool.hpp"

#include <stdexcept>
#include <string>

namespace lbm {

const char* to_string(Schedule s) { return s == Schedule::Dynamic ? "dynamic" : "static"; }

Schedule schedule_from_string(std::string_view name) {
    if (name == "dynamic") return Schedule::Dynamic;
    if (name == "static") return Schedule::Static;
    throw std::invalid_argument("unknown schedule: " + std::string(name));
}

ThreadPool::ThreadPool(int workers) : workers_(workers) {
    if (workers < 1) throw std::invalid_argument("worker count must be >= 1");
    threads_.reserve(workers - 1);
    for (int t = 1; t < workers; ++t) threads_.emplace_back([this, t] { worker_loop(t); });
}

ThreadPool::~ThreadPool() {
    {
        std::lock_guard lock(mutex_);
        stopping_ = true;
    }
    start_cv_.notify_all();
    for (std::thread& t : threads_) t.join();
}

void ThreadPool::participate(int tid) {
    try {
        if (schedule_ == Schedule::Dynamic) {
            int i;
            while ((i = next_.fetch_add(1, std::memory_order_relaxed)) < end_) (*body_)(i);
        } else {
            const long n = end_ - begin_;
            const int lo = begin_ + int(n * tid / workers_);
            const int hi = begin_ + int(n * (tid + 1) / workers_);
            for (int i = lo; i < hi; ++i) (*body_)(i);
        }
    } catch (...) {
        std::lock_guard lock(mutex_);
        if (!error_) error_ = std::current_exception();
    }
}

void ThreadPool::worker_loop(int tid) {
    std::uint64_t seen = 0;
    for (;;) {
        {
            std::unique_lock lock(mutex_);
            start_cv_.wait(lock, [&] { return stopping_ || generation_ != seen; });
            if (stopping_) return;
            seen = generation_;
        }
        participate(tid);
        {
            std::lock_guard lock(mutex_);
            if (--running_ == 0) done_cv_.notify_all();
        }
    }
}

void ThreadPool::parallel_for(int begin, int end, Schedule schedule,
                              const std::function<void(int)>& body) {
    if (end <= begin) return;
    if (workers_ == 1) {
        for (int i = begin; i < end; ++i) body(i);
        return;
    }
    {
        std::lock_guard lock(mutex_);
        body_ = &body;
        begin_ = begin;
        end_ = end;
        schedule_ = schedule;
        next_.store(begin, std::memory_order_relaxed);
        running_ = workers_;
        error_ = nullptr;
        ++generation_;
    }
    start_cv_.notify_all();
    participate(0);
    std::unique_lock lock(mutex_);
    --running_;
    done_cv_.wait(lock, [&] { return running_ == 0; });
    body_ = nullptr;
    if (error_) std::rethrow_exception(error_);
}

}  // namespace lbm
