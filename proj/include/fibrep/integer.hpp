#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>

namespace fibrep {

using BigInt = boost::multiprecision::cpp_int;

struct Overflow : std::overflow_error {
  Overflow() : std::overflow_error("int64 overflow") {}
};

// Arithmetic used by the exact linear algebra, templated on the coefficient
// type: int64 throws Overflow, BigInt never does.
inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow();
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow();
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow();
  return r;
}
inline std::int64_t neg(std::int64_t a) { return sub(0, a); }
inline std::int64_t abs_value(std::int64_t a) { return a < 0 ? neg(a) : a; }

inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt neg(const BigInt& a) { return -a; }
inline BigInt abs_value(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

// Floor division with remainder in [0, |b|).
template <class Int>
inline void floor_divmod(const Int& a, const Int& b, Int& q, Int& r) {
  q = a / b;
  r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) {
    q = sub(q, Int(1));
    r = add(r, b);
  }
  if (r < 0) {  // b < 0 case normalisation
    r = sub(r, b);
    q = add(q, Int(1));
  }
}

}  // namespace fibrep
