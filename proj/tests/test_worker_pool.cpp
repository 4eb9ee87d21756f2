#include <doctest.h>

#include <atomic>
#include <stdexcept>

#include "discflux/worker_pool.hpp"

using namespace discflux;

TEST_CASE("every task runs once for any job count") {
  for (std::size_t jobs : {0, 1, 2, 3, 16}) {
    std::vector<int> hits(37, 0);
    std::vector<std::function<void()>> tasks;
    for (std::size_t i = 0; i < hits.size(); ++i) tasks.push_back([&, i] { ++hits[i]; });
    run_parallel(tasks, jobs);
    for (int h : hits) CHECK(h == 1);
  }
  run_parallel({}, 4);
}

TEST_CASE("the first failing task in order is rethrown") {
  std::atomic<int> done{0};
  std::vector<std::function<void()>> tasks{
      [&] { ++done; },
      [] { throw std::runtime_error("second"); },
      [] { throw std::logic_error("third"); },
      [&] { ++done; }};
  for (std::size_t jobs : {1, 4}) {
    try {
      run_parallel(tasks, jobs);
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "second");
    }
  }
}
