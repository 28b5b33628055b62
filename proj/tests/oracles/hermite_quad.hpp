#pragma once

// 50-digit quadrature oracle for Hermite-function inner products. Hermite
// functions come from the three-term recurrence in x-space, independent of
// the coefficient-space ladder code under test.

#include <cmath>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace lyapcert::oracles {

using mpq = boost::multiprecision::cpp_bin_float_50;

// h_0..h_n at x (unit scale).
inline std::vector<mpq> hermite_functions(const mpq& x, std::size_t n) {
  std::vector<mpq> h(n + 1);
  h[0] = exp(-x * x / 2) / sqrt(sqrt(boost::math::constants::pi<mpq>()));
  if (n >= 1) h[1] = sqrt(mpq(2)) * x * h[0];
  for (std::size_t k = 1; k < n; ++k)
    h[k + 1] = sqrt(mpq(2) / mpq(k + 1)) * x * h[k] - sqrt(mpq(k) / mpq(k + 1)) * h[k - 1];
  return h;
}

// int_{-L}^{L} f; the integrands used here carry exp(-x^2), so L = 14
// leaves a tail below 1e-80.
template <class F>
mpq integrate(F f, double L = 14.0) {
  static boost::math::quadrature::tanh_sinh<mpq> q(12);
  return q.integrate([&](const mpq& x) -> mpq { return f(x); }, mpq(-L), mpq(L), mpq("1e-40"));
}

}  // namespace lyapcert::oracles
