#pragma once

#include <stdexcept>
#include <string>

namespace endow {

// Error categories the CLI maps onto exit codes: parse_error -> 2,
// class_error -> 3, guard_error -> 4.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class class_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[noreturn]] void assert_fail(const char* expr, const char* file, int line);

// Always-on invariant check; violations throw std::logic_error so tests can
// observe them regardless of build type.
#define ENDOW_ASSERT(expr) \
  ((expr) ? (void)0 : ::endow::assert_fail(#expr, __FILE__, __LINE__))

}  // namespace endow
