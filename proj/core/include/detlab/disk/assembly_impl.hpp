#pragma once

#include <algorithm>
#include <exception>
#include <thread>

namespace detlab {

template <class T, class Fn>
std::vector<T> map_modes(int l_max, std::size_t threads, Fn fn) {
  const std::size_t n = static_cast<std::size_t>(l_max) + 1;
  std::vector<T> out(n);
  threads = std::clamp<std::size_t>(threads, 1, n);
  if (threads == 1) {
    for (std::size_t l = 0; l < n; ++l) out[l] = fn(static_cast<int>(l));
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t l = t; l < n; l += threads) out[l] = fn(static_cast<int>(l));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace detlab
