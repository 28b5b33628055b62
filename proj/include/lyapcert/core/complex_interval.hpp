#pragma once

#include <complex>

#include "lyapcert/core/interval.hpp"

namespace lyapcert {

// Rectangular complex interval.
class ComplexInterval {
 public:
  ComplexInterval() = default;
  ComplexInterval(const Interval& re) : re_(re) {}  // NOLINT
  ComplexInterval(double re) : re_(re) {}           // NOLINT
  ComplexInterval(const Interval& re, const Interval& im) : re_(re), im_(im) {}
  explicit ComplexInterval(std::complex<double> z) : re_(z.real()), im_(z.imag()) {}

  const Interval& re() const { return re_; }
  const Interval& im() const { return im_; }
  std::complex<double> mid() const { return {re_.mid(), im_.mid()}; }

  // Upper bound on |z| over the rectangle.
  double mag() const {
    const double a = re_.mag(), b = im_.mag();
    return rounding::sqrt_up(rounding::add_up(rounding::mul_up(a, a), rounding::mul_up(b, b)));
  }
  // Enclosure of |z| over the rectangle.
  Interval abs() const { return sqrt(sqr(re_) + sqr(im_)); }
  bool contains(std::complex<double> z) const { return re_.contains(z.real()) && im_.contains(z.imag()); }

  ComplexInterval conj() const { return {re_, -im_}; }
  ComplexInterval times_i() const { return {-im_, re_}; }

  ComplexInterval operator-() const { return {-re_, -im_}; }
  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend ComplexInterval operator*(const Interval& s, const ComplexInterval& b) { return {s * b.re_, s * b.im_}; }
  friend ComplexInterval operator*(const ComplexInterval& b, const Interval& s) { return {s * b.re_, s * b.im_}; }
  friend ComplexInterval operator/(const ComplexInterval& b, const Interval& s) { return {b.re_ / s, b.im_ / s}; }
  friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
    const Interval den = sqr(b.re_) + sqr(b.im_);
    return (a * b.conj()) / den;
  }
  ComplexInterval& operator+=(const ComplexInterval& o) { return *this = *this + o; }
  ComplexInterval& operator-=(const ComplexInterval& o) { return *this = *this - o; }
  ComplexInterval& operator*=(const ComplexInterval& o) { return *this = *this * o; }

 private:
  Interval re_;
  Interval im_;
};

inline ComplexInterval conj(const ComplexInterval& z) { return z.conj(); }
inline double mag(const ComplexInterval& z) { return z.mag(); }
inline double mag(const Interval& x) { return x.mag(); }

inline ComplexInterval hull(const ComplexInterval& a, const ComplexInterval& b) {
  return {hull(a.re(), b.re()), hull(a.im(), b.im())};
}

}  // namespace lyapcert
