#include <doctest.h>

#include <atomic>
#include <stdexcept>
#include <vector>

#include "cenfrac/parallel.hpp"

using namespace cenfrac;

TEST_SUITE("parallel") {

TEST_CASE("every index runs once") {
  const int saved = thread_cap();
  for (int cap : {1, 3}) {
    set_thread_cap(cap);
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
  }
  set_thread_cap(saved);
}

TEST_CASE("exceptions propagate") {
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

}
