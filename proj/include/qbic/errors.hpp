#pragma once

#include <stdexcept>
#include <string>

namespace qbic {

// Malformed input or violated preconditions on user data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation refused because it would exceed a configured size bound.
class CostGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InternalError(what);
}

}  // namespace qbic
