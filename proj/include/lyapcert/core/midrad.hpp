#pragma once

// Midpoint-radius accumulation of complex dot products. Midpoints are
// summed in plain round-to-nearest and the accumulated rounding error is
// bounded a posteriori with the classical estimate
//   |fl(sum x_i y_i) - sum x_i y_i| <= gamma_n sum |x_i y_i| + n eta,
// gamma_n = n u / (1 - n u). This is much faster than endpoint interval
// arithmetic for the long sums in the Newton-Kantorovich bounds.

#include <cmath>
#include <complex>
#include <vector>

#include "lyapcert/core/complex_interval.hpp"
#include "lyapcert/core/rounding.hpp"

namespace lyapcert {

// z = (re +- rre) + i (im +- rim).
struct MidRad {
  double re = 0.0, im = 0.0, rre = 0.0, rim = 0.0;
};

inline MidRad to_midrad(const Interval& re, const Interval& im) {
  MidRad m;
  m.re = re.mid();
  m.im = im.mid();
  m.rre = std::max(rounding::sub_up(re.hi(), m.re), rounding::sub_up(m.re, re.lo()));
  m.rim = std::max(rounding::sub_up(im.hi(), m.im), rounding::sub_up(m.im, im.lo()));
  return m;
}
inline MidRad to_midrad(const ComplexInterval& z) { return to_midrad(z.re(), z.im()); }
inline MidRad to_midrad(std::complex<double> z) { return {z.real(), z.imag(), 0.0, 0.0}; }

namespace midrad_detail {
inline constexpr double kUnit = 0x1p-53;
inline constexpr double kEta = 0x1p-1074;

// Upper bound of gamma_n.
inline double gamma_up(double n) {
  const double nu = rounding::mul_up(n, kUnit);
  return rounding::div_up(nu, rounding::sub_down(1.0, nu));
}

// Enclosure of a real sum given the float midpoint sum s, the float sum t of
// |midpoint products| and the float sum r of radius contributions, each over
// n products (each radius term costs at most 5 further operations).
inline Interval finish(double s, double t, double r, double n) {
  if (n == 0.0) return Interval(0.0);
  const double g = gamma_up(n);
  const double g5 = gamma_up(n + 5.0);
  const double tt = rounding::div_up(t, rounding::sub_down(1.0, g));
  const double rr = rounding::div_up(r, rounding::sub_down(1.0, g5));
  double rad = rounding::add_up(rounding::mul_up(g, tt), rr);
  rad = rounding::add_up(rad, rounding::mul_up(rounding::mul_up(6.0, n), kEta));
  return Interval(rounding::sub_down(s, rad), rounding::add_up(s, rad));
}
}  // namespace midrad_detail

// Accumulates sum_j a_j * b_j for complex midpoint-radius operands.
struct MidRadSum {
  double s_re = 0.0, s_im = 0.0;
  double t_re = 0.0, t_im = 0.0;
  double r_re = 0.0, r_im = 0.0;
  double n = 0.0;

  void add_product(const MidRad& a, const MidRad& b) {
    const double p1 = a.re * b.re, p2 = a.im * b.im, p3 = a.re * b.im, p4 = a.im * b.re;
    s_re += p1;
    s_re -= p2;
    s_im += p3;
    s_im += p4;
    t_re += std::fabs(p1) + std::fabs(p2);
    t_im += std::fabs(p3) + std::fabs(p4);
    const double ar = std::fabs(a.re), ai = std::fabs(a.im), br = std::fabs(b.re), bi = std::fabs(b.im);
    r_re += (ar * b.rre + a.rre * br + a.rre * b.rre) + (ai * b.rim + a.rim * bi + a.rim * b.rim);
    r_im += (ar * b.rim + a.rre * bi + a.rre * b.rim) + (ai * b.rre + a.rim * br + a.rim * b.rre);
    n += 4.0;
  }
  // a point-valued (zero radius).
  void add_point_product(const MidRad& a, const MidRad& b) {
    const double p1 = a.re * b.re, p2 = a.im * b.im, p3 = a.re * b.im, p4 = a.im * b.re;
    s_re += p1;
    s_re -= p2;
    s_im += p3;
    s_im += p4;
    t_re += std::fabs(p1) + std::fabs(p2);
    t_im += std::fabs(p3) + std::fabs(p4);
    const double ar = std::fabs(a.re), ai = std::fabs(a.im);
    r_re += ar * b.rre + ai * b.rim;
    r_im += ar * b.rim + ai * b.rre;
    n += 4.0;
  }
  ComplexInterval result() const {
    return {midrad_detail::finish(s_re, t_re, r_re, n), midrad_detail::finish(s_im, t_im, r_im, n)};
  }
};

}  // namespace lyapcert
