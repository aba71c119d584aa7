#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qbic/errors.hpp"

namespace qbic {

// Explicit request, else QBIC_JOBS, else 1.
inline std::size_t resolve_jobs(std::optional<std::size_t> requested = std::nullopt) {
  if (requested) {
    if (*requested == 0) throw InputError("--jobs must be positive");
    return *requested;
  }
  if (const char* env = std::getenv("QBIC_JOBS")) {
    try {
      std::size_t used = 0;
      const long v = std::stol(env, &used);
      if (used == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw InputError(std::string("QBIC_JOBS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

// Splits [0, count) into at most `jobs` contiguous ranges and returns
// fn(begin, end) for each, in range order.
template <class Fn>
auto map_ranges(std::size_t count, std::size_t jobs, Fn fn) {
  using R = decltype(fn(std::size_t{}, std::size_t{}));
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::vector<R> out(jobs);
  if (jobs == 1) {
    out[0] = fn(0, count);
    return out;
  }
  std::vector<std::exception_ptr> errors(jobs);
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j) {
      const std::size_t lo = count * j / jobs, hi = count * (j + 1) / jobs;
      workers.emplace_back([&, j, lo, hi] {
        try {
          out[j] = fn(lo, hi);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace qbic
