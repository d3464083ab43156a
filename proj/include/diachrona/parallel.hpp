#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace diachrona {

/// Upper bound on worker threads. 0 restores the default, which honours
/// DIACHRONA_THREADS (0 or unset = hardware concurrency).
void set_max_workers(unsigned n) noexcept;
unsigned max_workers() noexcept;

/// Splits [0, n) into contiguous shards, runs `work(state, begin, end)` on
/// each shard's private state, then folds shard states left to right with
/// `merge(acc, std::move(shard))`. Results are independent of the shard
/// count whenever `merge` is associative.
template <typename State, typename Init, typename Work, typename Merge>
State sharded_reduce(std::size_t n, Init init, Work work, Merge merge) {
  std::size_t shards = std::min<std::size_t>(max_workers(), n);
  if (shards <= 1) {
    State s = init();
    work(s, std::size_t{0}, n);
    return s;
  }
  std::vector<State> states;
  states.reserve(shards);
  for (std::size_t i = 0; i < shards; ++i) states.push_back(init());
  std::vector<std::exception_ptr> errors(shards);
  std::vector<std::thread> threads;
  auto run = [&](std::size_t i) {
    try {
      work(states[i], n * i / shards, n * (i + 1) / shards);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  for (std::size_t i = 1; i < shards; ++i) threads.emplace_back(run, i);
  run(0);
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  State acc = std::move(states[0]);
  for (std::size_t i = 1; i < shards; ++i) merge(acc, std::move(states[i]));
  return acc;
}

}  // namespace diachrona
