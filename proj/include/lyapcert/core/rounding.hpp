#pragma once

// Directed rounding without touching the FPU mode. Each operation is
// evaluated in round-to-nearest, the exact error is recovered with an
// error-free transformation, and the result is stepped by one ulp only when
// the error has the wrong sign. Near the underflow threshold the error terms
// stop being exact; there we simply step outward unconditionally.

#include <cmath>
#include <limits>

#include "lyapcert/core/errors.hpp"

namespace lyapcert::rounding {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kTiny = 0x1p-969;

inline double next_up(double x) { return std::nextafter(x, kInf); }
inline double next_down(double x) { return std::nextafter(x, -kInf); }

inline double checked(double r) {
  if (!std::isfinite(r)) throw DomainError("interval endpoint overflowed or became NaN");
  return r;
}

inline double two_sum_err(double a, double b, double s) {
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

inline double add_down(double a, double b) {
  const double s = checked(a + b);
  return two_sum_err(a, b, s) < 0.0 ? next_down(s) : s;
}
inline double add_up(double a, double b) {
  const double s = checked(a + b);
  return two_sum_err(a, b, s) > 0.0 ? next_up(s) : s;
}
inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b) {
  const double p = checked(a * b);
  if (a == 0.0 || b == 0.0) return 0.0;
  if (std::fabs(p) < kTiny) return next_down(p);
  return std::fma(a, b, -p) < 0.0 ? next_down(p) : p;
}
inline double mul_up(double a, double b) {
  const double p = checked(a * b);
  if (a == 0.0 || b == 0.0) return 0.0;
  if (std::fabs(p) < kTiny) return next_up(p);
  return std::fma(a, b, -p) > 0.0 ? next_up(p) : p;
}

// Sign of (a/b - q) from the exact remainder a - q*b.
inline int div_err_sign(double a, double b, double q) {
  const double r = std::fma(-q, b, a);
  if (r == 0.0) return 0;
  return ((r < 0.0) == (b < 0.0)) ? 1 : -1;
}

inline double div_down(double a, double b) {
  if (b == 0.0) throw DomainError("division by an interval containing zero");
  const double q = checked(a / b);
  if (a == 0.0) return 0.0;
  if (std::fabs(q) < kTiny || std::fabs(b) < kTiny || std::fabs(a) < kTiny) return next_down(q);
  return div_err_sign(a, b, q) < 0 ? next_down(q) : q;
}
inline double div_up(double a, double b) {
  if (b == 0.0) throw DomainError("division by an interval containing zero");
  const double q = checked(a / b);
  if (a == 0.0) return 0.0;
  if (std::fabs(q) < kTiny || std::fabs(b) < kTiny || std::fabs(a) < kTiny) return next_up(q);
  return div_err_sign(a, b, q) > 0 ? next_up(q) : q;
}

inline double sqrt_down(double x) {
  if (x <= 0.0) return 0.0;
  const double s = std::sqrt(x);
  if (x < kTiny) return next_down(s);
  return std::fma(-s, s, x) < 0.0 ? next_down(s) : s;
}
inline double sqrt_up(double x) {
  if (x <= 0.0) return 0.0;
  const double s = std::sqrt(x);
  if (x < kTiny) return next_up(s);
  return std::fma(-s, s, x) > 0.0 ? next_up(s) : s;
}

// libm functions are trusted to within one ulp; pad by two.
inline double pad_down(double x) { return next_down(next_down(x)); }
inline double pad_up(double x) { return next_up(next_up(x)); }

}  // namespace lyapcert::rounding
