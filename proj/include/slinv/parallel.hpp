#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace slinv {

/// Index-parallel map with deterministic, index-ordered results. Work items
/// are claimed from a shared counter; if several items throw, the exception
/// of the lowest index is rethrown.
class Executor {
 public:
  explicit Executor(int threads = 1) : threads_(std::max(1, threads)) {}

  int threads() const noexcept { return threads_; }

  template <class F>
  void for_each_index(std::size_t count, F&& f) const {
    if (count == 0) return;
    const std::size_t workers = std::min<std::size_t>(threads_, count);
    if (workers == 1) {
      for (std::size_t i = 0; i < count; ++i) f(i);
      return;
    }
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto body = [&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  template <class R, class F>
  std::vector<R> map(std::size_t count, F&& f) const {
    std::vector<R> out(count);
    for_each_index(count, [&](std::size_t i) { out[i] = f(i); });
    return out;
  }

 private:
  int threads_;
};

}  // namespace slinv
