#pragma once

#include <cstdint>
#include <stdexcept>

namespace tlab {

using Int = std::int64_t;

// Subscripts and exponents are 64-bit; every arithmetic step on them goes
// through these helpers so that overflow raises instead of wrapping.
inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

inline Int neg(Int a) { return sub(0, a); }

inline Int iabs(Int a) { return a < 0 ? neg(a) : a; }

inline bool is_odd(Int a) { return (a % 2) != 0; }

}  // namespace tlab
