#pragma once

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "lyapcert/core/errors.hpp"
#include "lyapcert/core/rounding.hpp"

namespace lyapcert {

class Interval {
 public:
  constexpr Interval() = default;
  Interval(double x) : lo_(x), hi_(x) {  // NOLINT: point intervals convert implicitly
    if (!std::isfinite(x)) throw DomainError("non-finite point interval");
  }
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw DomainError("empty interval: lo > hi or NaN endpoint");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("unbounded interval");
  }

  // Smallest double interval containing the decimal literal. Accepts
  // [+-]digits[.digits][(e|E)[+-]digits] and nothing else.
  static Interval from_decimal(std::string_view text);

  static Interval hull(double a, double b) { return a <= b ? Interval(a, b) : Interval(b, a); }
  static Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
  }
  // rad >= 0 is an absolute radius around a point.
  static Interval around(double c, double rad) {
    return {rounding::sub_down(c, rad), rounding::add_up(c, rad)};
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double mid() const {
    if (lo_ == hi_) return lo_;
    return 0.5 * lo_ + 0.5 * hi_;
  }
  // Upper bound on the distance from mid() to either endpoint.
  double rad() const {
    const double m = mid();
    return std::max(rounding::sub_up(hi_, m), rounding::sub_up(m, lo_));
  }
  double width() const { return rounding::sub_up(hi_, lo_); }
  double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
  double mig() const {
    if (lo_ > 0.0) return lo_;
    if (hi_ < 0.0) return -hi_;
    return 0.0;
  }
  bool is_point() const { return lo_ == hi_; }
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool subset_of(const Interval& o) const { return o.contains(*this); }
  bool intersects(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }
  bool certainly_positive() const { return lo_ > 0.0; }
  bool certainly_negative() const { return hi_ < 0.0; }
  bool certainly_less(const Interval& o) const { return hi_ < o.lo_; }

  Interval operator-() const { return {-hi_, -lo_, Raw{}}; }

  friend Interval operator+(const Interval& x, const Interval& y) {
    return {rounding::add_down(x.lo_, y.lo_), rounding::add_up(x.hi_, y.hi_), Raw{}};
  }
  friend Interval operator-(const Interval& x, const Interval& y) {
    return {rounding::sub_down(x.lo_, y.hi_), rounding::sub_up(x.hi_, y.lo_), Raw{}};
  }
  friend Interval operator*(const Interval& x, const Interval& y) {
    using namespace rounding;
    const double a = x.lo_, b = x.hi_, c = y.lo_, d = y.hi_;
    if (a >= 0.0) {
      if (c >= 0.0) return {mul_down(a, c), mul_up(b, d), Raw{}};
      if (d <= 0.0) return {mul_down(b, c), mul_up(a, d), Raw{}};
      return {mul_down(b, c), mul_up(b, d), Raw{}};
    }
    if (b <= 0.0) {
      if (c >= 0.0) return {mul_down(a, d), mul_up(b, c), Raw{}};
      if (d <= 0.0) return {mul_down(b, d), mul_up(a, c), Raw{}};
      return {mul_down(a, d), mul_up(a, c), Raw{}};
    }
    if (c >= 0.0) return {mul_down(a, d), mul_up(b, d), Raw{}};
    if (d <= 0.0) return {mul_down(b, c), mul_up(a, c), Raw{}};
    return {std::min(mul_down(a, d), mul_down(b, c)), std::max(mul_up(a, c), mul_up(b, d)), Raw{}};
  }
  friend Interval operator/(const Interval& x, const Interval& y) {
    using namespace rounding;
    const double a = x.lo_, b = x.hi_, c = y.lo_, d = y.hi_;
    if (c <= 0.0 && d >= 0.0) throw DomainError("division by an interval containing zero");
    if (c > 0.0) {
      if (a >= 0.0) return {div_down(a, d), div_up(b, c), Raw{}};
      if (b <= 0.0) return {div_down(a, c), div_up(b, d), Raw{}};
      return {div_down(a, c), div_up(b, c), Raw{}};
    }
    if (a >= 0.0) return {div_down(b, d), div_up(a, c), Raw{}};
    if (b <= 0.0) return {div_down(b, c), div_up(a, d), Raw{}};
    return {div_down(b, d), div_up(a, d), Raw{}};
  }

  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  friend bool operator==(const Interval& x, const Interval& y) { return x.lo_ == y.lo_ && x.hi_ == y.hi_; }

 private:
  struct Raw {};
  Interval(double lo, double hi, Raw) : lo_(lo), hi_(hi) {}
  friend Interval sqr(const Interval& x);
  friend Interval sqrt(const Interval& x);
  friend Interval exp(const Interval& x);
  friend Interval log(const Interval& x);
  friend Interval sin(const Interval& x);
  friend Interval cos(const Interval& x);
  friend Interval acos(const Interval& x);
  friend Interval abs(const Interval& x);
  friend Interval pow(const Interval& x, int n);
  friend Interval intersect(const Interval& x, const Interval& y);

  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline Interval sqr(const Interval& x) {
  using namespace rounding;
  if (x.lo_ >= 0.0) return {mul_down(x.lo_, x.lo_), mul_up(x.hi_, x.hi_), Interval::Raw{}};
  if (x.hi_ <= 0.0) return {mul_down(x.hi_, x.hi_), mul_up(x.lo_, x.lo_), Interval::Raw{}};
  const double m = x.mag();
  return {0.0, mul_up(m, m), Interval::Raw{}};
}

inline Interval sqrt(const Interval& x) {
  if (x.lo_ < 0.0) throw DomainError("sqrt of an interval with negative part");
  return {rounding::sqrt_down(x.lo_), rounding::sqrt_up(x.hi_), Interval::Raw{}};
}

namespace detail {
inline double exp_down(double x) { return x == 0.0 ? 1.0 : std::max(0.0, rounding::pad_down(std::exp(x))); }
inline double exp_up(double x) { return x == 0.0 ? 1.0 : rounding::checked(rounding::pad_up(std::exp(x))); }
inline double log_down(double x) { return x == 1.0 ? 0.0 : rounding::pad_down(std::log(x)); }
inline double log_up(double x) { return x == 1.0 ? 0.0 : rounding::pad_up(std::log(x)); }

inline double pos_pow_down(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r = rounding::mul_down(r, x);
  return r;
}
inline double pos_pow_up(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r = rounding::mul_up(r, x);
  return r;
}

// Enclosure of pi: the double nearest pi lies below it.
inline constexpr double kPiLo = 0x1.921fb54442d18p+1;
inline constexpr double kPiHi = 0x1.921fb54442d19p+1;

// True if some point offset + period*k (k integer) may lie in [lo, hi].
// Errs on the side of reporting a hit.
inline bool may_contain_lattice(double lo, double hi, double offset_lo, double offset_hi) {
  using namespace rounding;
  const double two_pi_lo = 2.0 * kPiLo, two_pi_hi = 2.0 * kPiHi;
  // k >= (lo - offset)/(2 pi) and k <= (hi - offset)/(2 pi)
  const double num_lo = sub_down(lo, offset_hi);
  const double kmin = num_lo >= 0.0 ? div_down(num_lo, two_pi_hi) : div_down(num_lo, two_pi_lo);
  const double num_hi = sub_up(hi, offset_lo);
  const double kmax = num_hi >= 0.0 ? div_up(num_hi, two_pi_lo) : div_up(num_hi, two_pi_hi);
  return std::ceil(kmin) <= std::floor(kmax);
}
}  // namespace detail

inline Interval exp(const Interval& x) {
  return {detail::exp_down(x.lo_), detail::exp_up(x.hi_), Interval::Raw{}};
}

inline Interval log(const Interval& x) {
  if (!(x.lo_ > 0.0)) throw DomainError("log of an interval that is not strictly positive");
  return {detail::log_down(x.lo_), detail::log_up(x.hi_), Interval::Raw{}};
}

inline Interval sin(const Interval& x) {
  using namespace detail;
  if (x.width() >= 2.0 * kPiLo) return {-1.0, 1.0, Interval::Raw{}};
  const double half_pi_lo = kPiLo / 2, half_pi_hi = kPiHi / 2;
  const bool has_max = may_contain_lattice(x.lo_, x.hi_, half_pi_lo, half_pi_hi);
  const bool has_min = may_contain_lattice(x.lo_, x.hi_, -half_pi_hi, -half_pi_lo);
  const double s1 = std::sin(x.lo_), s2 = std::sin(x.hi_);
  const double lo = has_min ? -1.0 : std::max(-1.0, rounding::pad_down(std::min(s1, s2)));
  const double hi = has_max ? 1.0 : std::min(1.0, rounding::pad_up(std::max(s1, s2)));
  return {lo, hi, Interval::Raw{}};
}

inline Interval cos(const Interval& x) {
  using namespace detail;
  if (x.width() >= 2.0 * kPiLo) return {-1.0, 1.0, Interval::Raw{}};
  const bool has_max = may_contain_lattice(x.lo_, x.hi_, 0.0, 0.0);
  const bool has_min = may_contain_lattice(x.lo_, x.hi_, kPiLo, kPiHi);
  const double c1 = std::cos(x.lo_), c2 = std::cos(x.hi_);
  const double lo = has_min ? -1.0 : std::max(-1.0, rounding::pad_down(std::min(c1, c2)));
  const double hi = has_max ? 1.0 : std::min(1.0, rounding::pad_up(std::max(c1, c2)));
  return {lo, hi, Interval::Raw{}};
}

// acos on [-1, 1]: float acos widened by doubling steps until the
// monotone cos enclosure confirms the bound.
inline Interval acos(const Interval& x) {
  if (!(x.lo() >= -1.0 && x.hi() <= 1.0)) throw DomainError("acos of an interval outside [-1, 1]");
  auto down = [](double v) {
    const double t0 = std::acos(v);
    for (double d = 0x1p-60; d < 1.0; d *= 2.0) {
      const double t = rounding::sub_down(t0, d);
      if (t <= 0.0) return 0.0;
      if (cos(Interval(t)).lo() >= v) return t;
    }
    return 0.0;
  };
  auto up = [](double v) {
    const double t0 = std::acos(v);
    for (double d = 0x1p-60; d < 1.0; d *= 2.0) {
      const double t = rounding::add_up(t0, d);
      if (t >= detail::kPiHi) return detail::kPiHi;
      if (cos(Interval(t)).hi() <= v) return t;
    }
    return detail::kPiHi;
  };
  return {down(x.hi()), up(x.lo()), Interval::Raw{}};
}

inline Interval abs(const Interval& x) { return {x.mig(), x.mag(), Interval::Raw{}}; }

inline Interval pow(const Interval& x, int n) {
  using namespace detail;
  if (n < 0) return Interval(1.0) / pow(x, -n);
  if (n == 0) return Interval(1.0);
  if (n % 2 == 0) return {pos_pow_down(x.mig(), n), rounding::checked(pos_pow_up(x.mag(), n)), Interval::Raw{}};
  auto odd_down = [n](double v) { return v >= 0.0 ? pos_pow_down(v, n) : -pos_pow_up(-v, n); };
  auto odd_up = [n](double v) { return v >= 0.0 ? pos_pow_up(v, n) : -pos_pow_down(-v, n); };
  return {odd_down(x.lo_), rounding::checked(odd_up(x.hi_)), Interval::Raw{}};
}

inline Interval intersect(const Interval& x, const Interval& y) {
  if (!x.intersects(y)) throw DomainError("empty intersection");
  return {std::max(x.lo_, y.lo_), std::min(x.hi_, y.hi_), Interval::Raw{}};
}

inline Interval hull(const Interval& x, const Interval& y) { return Interval::hull(x, y); }

// Named constants as enclosures.
inline Interval pi_interval() { return {detail::kPiLo, detail::kPiHi}; }

// ---------------------------------------------------------------------------
// Decimal input and output.

namespace decimal {

struct Parsed {
  bool negative = false;
  std::string digits;  // no leading zeros, may be empty for zero
  long exponent = 0;   // value = digits * 10^exponent
};

inline Parsed parse(std::string_view s) {
  Parsed out;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) out.negative = s[i++] == '-';
  std::string digits;
  std::size_t int_digits = 0, frac_digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits.push_back(s[i++]);
    ++int_digits;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits.push_back(s[i++]);
      ++frac_digits;
    }
  }
  if (int_digits + frac_digits == 0) throw DomainError("malformed decimal: '" + std::string(s) + "'");
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    std::size_t start = i;
    long e = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      if (e < 100000) e = e * 10 + (s[i] - '0');
      ++i;
    }
    if (i == start) throw DomainError("malformed decimal exponent: '" + std::string(s) + "'");
    exp10 = eneg ? -e : e;
  }
  if (i != s.size()) throw DomainError("malformed decimal: '" + std::string(s) + "'");
  std::size_t nz = digits.find_first_not_of('0');
  out.digits = nz == std::string::npos ? std::string() : digits.substr(nz);
  out.exponent = exp10 - static_cast<long>(frac_digits);
  return out;
}

// Sign of |decimal| - |x| for finite x, compared exactly.
inline int compare_magnitude(const Parsed& d, double x) {
  using boost::multiprecision::cpp_int;
  x = std::fabs(x);
  if (d.digits.empty()) return x == 0.0 ? 0 : -1;
  if (x == 0.0) return 1;
  int e2 = 0;
  const double frac = std::frexp(x, &e2);  // x = frac * 2^e2, frac in [0.5,1)
  const auto m = static_cast<long long>(std::ldexp(frac, 53));
  e2 -= 53;
  cpp_int lhs(d.digits);
  cpp_int rhs(m);
  if (d.exponent >= 0)
    lhs *= boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(d.exponent));
  else
    rhs *= boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(-d.exponent));
  if (e2 >= 0)
    rhs <<= e2;
  else
    lhs <<= -e2;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

// Sign of (decimal - x).
inline int compare(const Parsed& d, double x) {
  const bool dzero = d.digits.empty();
  const bool dneg = d.negative && !dzero;
  if (x == 0.0) return dzero ? 0 : (dneg ? -1 : 1);
  if (dzero) return x > 0 ? -1 : 1;
  if (dneg != (x < 0.0)) return dneg ? -1 : 1;
  const int c = compare_magnitude(d, x);
  return dneg ? -c : c;
}

inline Interval enclose(std::string_view text) {
  const Parsed p = parse(text);
  const std::string s(text);
  errno = 0;
  const double d = std::strtod(s.c_str(), nullptr);
  if (!std::isfinite(d)) throw DomainError("decimal out of double range: '" + s + "'");
  const int c = compare(p, d);
  if (c == 0) return Interval(d);
  if (c > 0) return {d, rounding::next_up(d)};
  return {rounding::next_down(d), d};
}

// 17 significant digits, rounded toward -inf (down) or +inf.
inline std::string format_directed(double x, bool upward) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  const int c = compare(parse(buf), x);
  if (c == 0 || (upward ? c > 0 : c < 0)) return buf;
  std::snprintf(buf, sizeof buf, "%.16e", upward ? rounding::next_up(x) : rounding::next_down(x));
  return buf;
}

inline std::string hex(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

}  // namespace decimal

inline Interval Interval::from_decimal(std::string_view text) { return decimal::enclose(text); }

inline std::string to_string(const Interval& x) {
  return "[" + decimal::format_directed(x.lo(), false) + ", " + decimal::format_directed(x.hi(), true) + "]";
}

inline std::ostream& operator<<(std::ostream& os, const Interval& x) { return os << to_string(x); }

}  // namespace lyapcert
