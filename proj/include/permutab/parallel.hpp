#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace permutab {

/// Runs fn(0) .. fn(tasks-1) on up to `workers` threads and returns the
/// results in task order, so the output never depends on the worker count.
/// If any task throws, the exception of the lowest-numbered failing task is
/// rethrown after all threads join.
template <class Fn>
auto parallel_map(std::size_t tasks, unsigned workers, Fn fn)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t>> {
  using R = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<R>> slots(tasks);
  std::vector<std::exception_ptr> errors(tasks);
  const std::size_t threads =
      std::max<std::size_t>(1, std::min<std::size_t>(workers, tasks));

  auto body = [&](std::size_t w) {
    for (std::size_t i = w; i < tasks; i += threads) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(tasks);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace permutab
