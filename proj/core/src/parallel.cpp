#include "segre/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace segre {

namespace {
std::atomic<unsigned> g_threads{0};
}

unsigned default_threads() {
  unsigned t = g_threads.load();
  if (t == 0) {
    t = std::thread::hardware_concurrency();
    if (t == 0) t = 1;
  }
  return t;
}

void set_default_threads(unsigned n) { g_threads.store(n); }

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t, unsigned)>& fn,
                  unsigned threads) {
  if (n == 0) return;
  unsigned t = threads ? threads : default_threads();
  t = static_cast<unsigned>(std::min<std::size_t>(t, n));
  if (t <= 1) {
    fn(0, n, 0);
    return;
  }
  std::size_t chunk = (n + t - 1) / t;
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(t);
  for (unsigned i = 0; i < t; ++i) {
    std::size_t begin = std::min(n, i * chunk);
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    workers.emplace_back([=, &fn, &error, &error_mutex] {
      try {
        fn(begin, end, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace segre
