#pragma once

// Orthonormal Hermite functions phi_n(x) = beta^{1/2} h_n(beta x), with h_n
// the standard Hermite functions. Multiplication by x and differentiation
// act by three-term ladders:
//   x phi_n   = (sqrt((n+1)/2) phi_{n+1} + sqrt(n/2) phi_{n-1}) / beta
//   phi_n'    = beta (sqrt(n/2) phi_{n-1} - sqrt((n+1)/2) phi_{n+1})
// so polynomial multiplication and -d^2/dx^2 map finite expansions to finite
// expansions and every inner product is a finite coefficient sum.

#include <cmath>
#include <vector>

#include "lyapcert/core/errors.hpp"
#include "lyapcert/core/interval.hpp"
#include "lyapcert/pitchfork/polynomial.hpp"

namespace lyapcert {

namespace hermite_detail {
inline double half_root(std::size_t n, double) { return std::sqrt(0.5 * static_cast<double>(n)); }
inline Interval half_root(std::size_t n, const Interval&) { return sqrt(Interval(0.5 * static_cast<double>(n))); }
inline double to_scalar(const Interval& v, double) { return v.mid(); }
inline Interval to_scalar(const Interval& v, const Interval&) { return v; }
}  // namespace hermite_detail

template <class T>
struct HermiteSeries {
  T scale{1.0};
  std::vector<T> coeffs;

  HermiteSeries() = default;
  HermiteSeries(T beta, std::vector<T> c) : scale(beta), coeffs(std::move(c)) {}
  static HermiteSeries basis(T beta, std::size_t n) {
    std::vector<T> c(n + 1, T(0.0));
    c[n] = T(1.0);
    return {beta, std::move(c)};
  }
  std::size_t size() const { return coeffs.size(); }
};

using HermiteExpansion = HermiteSeries<Interval>;

inline bool same_scale(const Interval& a, const Interval& b) { return a == b; }
inline bool same_scale(double a, double b) { return a == b; }

template <class T>
void require_same_scale(const HermiteSeries<T>& a, const HermiteSeries<T>& b) {
  if (!same_scale(a.scale, b.scale)) throw UsageError("Hermite expansions with different basis scales");
}

template <class T>
HermiteSeries<T> mul_x(const HermiteSeries<T>& f) {
  const std::size_t n = f.size();
  std::vector<T> out(n + 1, T(0.0));
  const T inv = T(1.0) / f.scale;
  for (std::size_t k = 0; k < n; ++k) {
    if (k + 1 <= n) out[k + 1] += hermite_detail::half_root(k + 1, T()) * f.coeffs[k];
    if (k >= 1) out[k - 1] += hermite_detail::half_root(k, T()) * f.coeffs[k];
  }
  for (auto& v : out) v = v * inv;
  return {f.scale, std::move(out)};
}

template <class T>
HermiteSeries<T> derivative(const HermiteSeries<T>& f) {
  const std::size_t n = f.size();
  std::vector<T> out(n + 1, T(0.0));
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= 1) out[k - 1] += hermite_detail::half_root(k, T()) * f.coeffs[k];
    out[k + 1] -= hermite_detail::half_root(k + 1, T()) * f.coeffs[k];
  }
  for (auto& v : out) v = v * f.scale;
  return {f.scale, std::move(out)};
}

template <class T>
HermiteSeries<T> operator+(const HermiteSeries<T>& a, const HermiteSeries<T>& b) {
  require_same_scale(a, b);
  std::vector<T> out(std::max(a.size(), b.size()), T(0.0));
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a.coeffs[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b.coeffs[k];
  return {a.scale, std::move(out)};
}

template <class T>
HermiteSeries<T> scaled(const T& s, const HermiteSeries<T>& a) {
  HermiteSeries<T> r = a;
  for (auto& v : r.coeffs) v = s * v;
  return r;
}

// P(x) f by Horner in operator form.
template <class T>
HermiteSeries<T> apply_polynomial(const Polynomial& p, const HermiteSeries<T>& f) {
  const int d = p.degree();
  if (d < 0) return {f.scale, std::vector<T>(f.size(), T(0.0))};
  HermiteSeries<T> g = scaled(hermite_detail::to_scalar(p.c[d], T()), f);
  for (int k = d - 1; k >= 0; --k) {
    g = mul_x(g);
    const T ck = hermite_detail::to_scalar(p.c[k], T());
    for (std::size_t i = 0; i < f.size(); ++i) g.coeffs[i] += ck * f.coeffs[i];
  }
  return g;
}

template <class T>
HermiteSeries<T> minus_second_derivative(const HermiteSeries<T>& f) {
  HermiteSeries<T> g = derivative(derivative(f));
  for (auto& v : g.coeffs) v = -v;
  return g;
}

template <class T>
T inner(const HermiteSeries<T>& a, const HermiteSeries<T>& b) {
  require_same_scale(a, b);
  T s(0.0);
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) s += a.coeffs[k] * b.coeffs[k];
  return s;
}

}  // namespace lyapcert
