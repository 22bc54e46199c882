#include "qsde/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qsde {

int worker_thread_count() {
  if (const char* env = std::getenv("QSDE_SIM_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

int parallel_chunk_count(std::int64_t n) {
  if (n <= 0) return 0;
  return int(std::min<std::int64_t>(worker_thread_count(), n));
}

void parallel_chunks(std::int64_t n,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
  const int chunks = parallel_chunk_count(n);
  if (chunks == 0) return;
  if (chunks == 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(std::size_t(chunks));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
  for (int c = 0; c < chunks; ++c) {
    const std::int64_t begin = n * c / chunks;
    const std::int64_t end = n * (c + 1) / chunks;
    workers.emplace_back([&, c, begin, end] {
      try {
        fn(c, begin, end);
      } catch (...) {
        errors[std::size_t(c)] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace qsde
