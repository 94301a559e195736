#ifndef RESIDUAL_PARALLEL_HPP
#define RESIDUAL_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace residual {

// Worker cap from RESIDUAL_TRACE_THREADS (0 or unset: hardware concurrency).
inline unsigned thread_limit() {
  unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  const char* env = std::getenv("RESIDUAL_TRACE_THREADS");
  if (!env || !*env)
    return hw;
  try {
    long v = std::stol(env);
    return v <= 0 ? hw : static_cast<unsigned>(v);
  } catch (const std::exception&) {
    return hw;
  }
}

// Calls body(i) for i in [0, count). Each index writes only its own output
// slot, so results do not depend on scheduling. If several bodies throw, the
// exception of the lowest index is rethrown.
template <typename Body>
void parallel_for(std::size_t count, Body body) {
  unsigned workers = std::min<std::size_t>(thread_limit(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w)
    pool.emplace_back(run);
  run();
  for (auto& t : pool)
    t.join();
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace residual

#endif
