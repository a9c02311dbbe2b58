#ifndef IRIS_AGING_PARALLEL_HPP
#define IRIS_AGING_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace iris_aging {

/// Static partition of [0, n) across at most `jobs` workers. Results must be
/// written to index-addressed slots so output order stays deterministic.
/// The first worker exception is rethrown on the caller thread.
inline void parallelFor(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
  if (jobs < 1) jobs = 1;
  const std::size_t workers = std::min<std::size_t>(std::size_t(jobs), n ? n : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace iris_aging

#endif
