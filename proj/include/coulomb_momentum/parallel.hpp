#pragma once

// Order-preserving parallel map for verification sweeps. Results land at the
// index of their input, so aggregation never depends on scheduling.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <string_view>
#include <thread>
#include <type_traits>
#include <vector>

namespace coulomb_momentum::parallel {

inline constexpr const char* kThreadsEnv = "COULOMB_MOMENTUM_THREADS";

/// Hardware concurrency, capped by COULOMB_MOMENTUM_THREADS when that holds
/// a positive integer.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv(kThreadsEnv)) {
    std::string_view s(env);
    unsigned cap = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && ptr == s.data() + s.size() && cap > 0) n = std::min(n, cap);
  }
  return n;
}

/// out[i] = f(i) for i in [0, count). If any call throws, the exception of
/// the lowest failing index is rethrown after all workers stop.
template <class F>
auto map_indexed(std::size_t count, F&& f, unsigned workers = worker_count()) {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<R> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), count));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace coulomb_momentum::parallel
