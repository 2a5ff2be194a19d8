#include "cenfrac/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace cenfrac {

namespace {

int default_cap() {
  if (const char* env = std::getenv("CENFRAC_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::atomic<int> g_cap{0};

}  // namespace

void set_thread_cap(int n) { g_cap.store(n >= 1 ? n : default_cap()); }

int thread_cap() {
  int n = g_cap.load();
  if (n < 1) {
    n = default_cap();
    g_cap.store(n);
  }
  return n;
}

}  // namespace cenfrac
