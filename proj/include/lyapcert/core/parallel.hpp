#pragma once

// Order-preserving parallel map over indices. The worker count comes from
// LYAPCERT_WORKERS when set, else the hardware concurrency. A map issued
// from inside a worker runs serially, so nested maps do not oversubscribe.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace lyapcert {

namespace parallel_detail {
inline thread_local bool in_worker = false;
}

inline std::size_t worker_count() {
  if (const char* env = std::getenv("LYAPCERT_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// out[i] = f(i) for i < n. If any call throws, the exception of the
// smallest failing index is rethrown after all workers stop.
template <class F>
auto parallel_map(std::size_t n, F f, std::size_t workers = 0) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t w = parallel_detail::in_worker ? 1 : std::min(n, workers ? workers : worker_count());
  if (w <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < w; ++t)
      pool.emplace_back([&] {
        parallel_detail::in_worker = true;
        run();
      });
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace lyapcert
