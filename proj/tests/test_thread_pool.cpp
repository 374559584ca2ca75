#include <doctest.h>

#include <atomic>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lbm/thread_pool.hpp"

using namespace lbm;

TEST_CASE("parallel_for covers every index exactly once") {
    for (const int workers : {1, 2, 7}) {
        ThreadPool pool(workers);
        for (const Schedule sched : {Schedule::Dynamic, Schedule::Static}) {
            std::vector<std::atomic<int>> hits(1000);
            pool.parallel_for(0, 1000, sched, [&](int i) { hits[i].fetch_add(1); });
            for (const auto& h : hits) CHECK(h.load() == 1);
        }
    }
}

TEST_CASE("parallel_for handles empty and offset ranges") {
    ThreadPool pool(4);
    int calls = 0;
    pool.parallel_for(5, 5, Schedule::Dynamic, [&](int) { ++calls; });
    CHECK(calls == 0);

    std::atomic<long> sum{0};
    pool.parallel_for(10, 20, Schedule::Static, [&](int i) { sum.fetch_add(i); });
    CHECK(sum.load() == 145);
}

TEST_CASE("pool is reusable across many launches") {
    ThreadPool pool(3);
    for (int round = 0; round < 50; ++round) {
        std::atomic<long> sum{0};
        pool.parallel_for(0, 64, round % 2 ? Schedule::Dynamic : Schedule::Static,
                          [&](int i) { sum.fetch_add(i); });
        CHECK(sum.load() == 64 * 63 / 2);
    }
}

TEST_CASE("exceptions from workers are rethrown to the caller") {
    ThreadPool pool(4);
    CHECK_THROWS_AS(pool.parallel_for(0, 100, Schedule::Dynamic,
                                      [](int i) {
                                          if (i == 37) throw std::runtime_error("boom");
                                      }),
                    std::runtime_error);
    // Pool remains usable afterwards.
    std::atomic<int> n{0};
    pool.parallel_for(0, 8, Schedule::Dynamic, [&](int) { n.fetch_add(1); });
    CHECK(n.load() == 8);
}

TEST_CASE("invalid worker count is rejected") {
    CHECK_THROWS_AS(ThreadPool(0), std::invalid_argument);
}

TEST_CASE("schedule names round trip") {
    CHECK(schedule_from_string("dynamic") == Schedule::Dynamic);
    CHECK(schedule_from_string("static") == Schedule::Static);
    CHECK_THROWS_AS((void)schedule_from_string("guided"), std::invalid_argument);
}
