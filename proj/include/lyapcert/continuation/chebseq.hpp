#pragma once

// Chebyshev series u(p) = u_0 + 2 sum_{k>=1} u_k T_k(x(p)) on a parameter
// interval [p_lo, p_hi], x(p) = (2p - (p_hi + p_lo)) / (p_hi - p_lo), with
// the weighted norm |u_0| + 2 sum |u_k| eta^k. Products are exact (the
// degree grows) and form a Banach algebra for this norm.

#include <cmath>
#include <complex>
#include <vector>

#include "lyapcert/core/complex_interval.hpp"
#include "lyapcert/core/errors.hpp"
#include "lyapcert/core/midrad.hpp"

namespace lyapcert {

// Enclosures of T_0(x), ..., T_K(x) over x in [-1, 1] as cos(k acos x);
// unlike interval Clenshaw this does not amplify radii with K.
inline std::vector<Interval> chebyshev_T(const Interval& x, std::size_t K) {
  const Interval theta = acos(intersect(x, Interval(-1.0, 1.0)));
  std::vector<Interval> T(K + 1);
  T[0] = Interval(1.0);
  for (std::size_t k = 1; k <= K; ++k) T[k] = cos(Interval(static_cast<double>(k)) * theta);
  return T;
}

class ChebSeq {
 public:
  ChebSeq() = default;
  ChebSeq(std::vector<ComplexInterval> coeffs, double eta, double p_lo, double p_hi)
      : c_(std::move(coeffs)), eta_(eta), p_lo_(p_lo), p_hi_(p_hi) {
    if (c_.empty()) c_.emplace_back(0.0);
    if (!(eta >= 1.0)) throw UsageError("ChebSeq: eta must be >= 1");
    if (!(p_lo <= p_hi)) throw UsageError("ChebSeq: empty domain");
  }
  static ChebSeq constant(const ComplexInterval& v, double eta, double p_lo, double p_hi) {
    return ChebSeq({v}, eta, p_lo, p_hi);
  }
  // The identity map p -> p on the domain: (p_hi + p_lo)/2 + (p_hi - p_lo)/2 T_1.
  static ChebSeq identity(double eta, double p_lo, double p_hi) {
    const Interval c = (Interval(p_lo) + Interval(p_hi)) / Interval(2.0);
    const Interval h = (Interval(p_hi) - Interval(p_lo)) / Interval(4.0);
    if (p_lo == p_hi) return constant(c, eta, p_lo, p_hi);
    return ChebSeq({c, h}, eta, p_lo, p_hi);
  }
  ChebSeq like(std::vector<ComplexInterval> coeffs) const { return ChebSeq(std::move(coeffs), eta_, p_lo_, p_hi_); }
  ChebSeq like_constant(const ComplexInterval& v) const { return like({v}); }

  std::size_t degree() const { return c_.size() - 1; }
  const std::vector<ComplexInterval>& coeffs() const { return c_; }
  const ComplexInterval& operator[](std::size_t k) const { return c_[k]; }
  ComplexInterval coeff(std::size_t k) const { return k < c_.size() ? c_[k] : ComplexInterval(0.0); }
  double eta() const { return eta_; }
  double p_lo() const { return p_lo_; }
  double p_hi() const { return p_hi_; }

  // Upper bound of the weighted norm.
  double norm() const {
    double s = c_[0].mag(), w = 1.0;
    for (std::size_t k = 1; k < c_.size(); ++k) {
      w = rounding::mul_up(w, eta_);
      s = rounding::add_up(s, rounding::mul_up(2.0, rounding::mul_up(c_[k].mag(), w)));
    }
    return s;
  }
  Interval norm_interval() const {
    Interval s = c_[0].abs(), w(1.0);
    for (std::size_t k = 1; k < c_.size(); ++k) {
      w = w * Interval(eta_);
      s = s + Interval(2.0) * c_[k].abs() * w;
    }
    return s;
  }

  bool is_real() const {
    for (const auto& z : c_)
      if (!(z.im().lo() == 0.0 && z.im().hi() == 0.0)) return false;
    return true;
  }

  // Rescaled variable x(p) for p inside the domain.
  Interval to_unit(const Interval& p) const {
    if (!(p_lo_ <= p.lo() && p.hi() <= p_hi_)) throw UsageError("ChebSeq: evaluation point outside the domain");
    if (p_lo_ == p_hi_) return Interval(0.0);
    const Interval x = (Interval(2.0) * p - (Interval(p_lo_) + Interval(p_hi_))) / (Interval(p_hi_) - Interval(p_lo_));
    return intersect(x, Interval(-1.0, 1.0));
  }

  // Evaluation in the unit variable via T_k(x) = cos(k acos x).
  ComplexInterval eval_unit(const Interval& x) const { return eval_with(chebyshev_T(x, degree())); }
  // sum_k w_k u_k T_k(x) given enclosures T[k] of T_k(x).
  ComplexInterval eval_with(const std::vector<Interval>& T) const {
    ComplexInterval s = c_[0];
    for (std::size_t k = 1; k < c_.size(); ++k) s = s + (Interval(2.0) * T[k]) * c_[k];
    return s;
  }

  // Enclosure of u(p). For non-degenerate p the direct value is
  // intersected with the mean-value form.
  ComplexInterval eval(const Interval& p) const {
    const Interval x = to_unit(p);
    ComplexInterval direct = eval_unit(x);
    if (x.is_point() || c_.size() == 1) return direct;
    const Interval xm(x.mid());
    const ComplexInterval centered = eval_unit(xm) + derivative_unit().eval_unit(x) * (x - xm);
    return {intersect(direct.re(), centered.re()), intersect(direct.im(), centered.im())};
  }

  // d/dx of the series, in the same representation.
  ChebSeq derivative_unit() const {
    const std::size_t n = c_.size();
    if (n == 1) return like_constant(0.0);
    // a_k = 2 u_k (k >= 1), a_0 = u_0; derivative coefficients satisfy
    // a'_{k-1} = a'_{k+1} + 2 k a_k with a'_{n-1} = a'_n = 0.
    std::vector<ComplexInterval> d(n + 1, ComplexInterval(0.0));
    for (std::size_t k = n - 1; k >= 1; --k) {
      const ComplexInterval ak = Interval(2.0) * c_[k];
      d[k - 1] = d[k + 1] + Interval(2.0 * static_cast<double>(k)) * ak;
    }
    std::vector<ComplexInterval> u(n - 1);
    u[0] = d[0] / Interval(2.0);
    for (std::size_t k = 1; k + 1 < n; ++k) u[k] = d[k] / Interval(2.0);
    return like(std::move(u));
  }
  // d/dp: derivative_unit times 2 / (p_hi - p_lo).
  ChebSeq derivative() const {
    if (p_lo_ == p_hi_) throw UsageError("ChebSeq: derivative on a degenerate domain");
    const Interval scale = Interval(2.0) / (Interval(p_hi_) - Interval(p_lo_));
    return scale * derivative_unit();
  }

  ChebSeq conj() const {
    ChebSeq r = *this;
    for (auto& z : r.c_) z = z.conj();
    return r;
  }
  ChebSeq truncated(std::size_t degree) const {
    std::vector<ComplexInterval> c(c_.begin(), c_.begin() + std::min(c_.size(), degree + 1));
    return like(std::move(c));
  }

  friend ChebSeq operator+(const ChebSeq& a, const ChebSeq& b) {
    a.require_compatible(b);
    std::vector<ComplexInterval> c(std::max(a.c_.size(), b.c_.size()), ComplexInterval(0.0));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
    return a.like(std::move(c));
  }
  friend ChebSeq operator-(const ChebSeq& a, const ChebSeq& b) {
    a.require_compatible(b);
    std::vector<ComplexInterval> c(std::max(a.c_.size(), b.c_.size()), ComplexInterval(0.0));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
    return a.like(std::move(c));
  }
  ChebSeq operator-() const {
    ChebSeq r = *this;
    for (auto& z : r.c_) z = -z;
    return r;
  }
  friend ChebSeq operator+(const ChebSeq& a, const ComplexInterval& s) {
    ChebSeq r = a;
    r.c_[0] += s;
    return r;
  }
  friend ChebSeq operator*(const ComplexInterval& s, const ChebSeq& a) {
    ChebSeq r = a;
    for (auto& z : r.c_) z = s * z;
    return r;
  }
  friend ChebSeq operator*(const Interval& s, const ChebSeq& a) { return ComplexInterval(s) * a; }
  friend ChebSeq operator*(const ChebSeq& a, const ChebSeq& b);

  void require_compatible(const ChebSeq& o) const {
    if (eta_ != o.eta_ || p_lo_ != o.p_lo_ || p_hi_ != o.p_hi_)
      throw UsageError("ChebSeq: operands live on different domains or weights");
  }

 private:
  std::vector<ComplexInterval> c_{ComplexInterval(0.0)};
  double eta_ = 1.0;
  double p_lo_ = 0.0, p_hi_ = 0.0;
};

// Midpoint-radius images used by the convolution kernels.
inline std::vector<MidRad> to_midrad(const ChebSeq& u) {
  std::vector<MidRad> out(u.degree() + 1);
  for (std::size_t k = 0; k <= u.degree(); ++k) out[k] = to_midrad(u[k]);
  return out;
}

// Accumulator for sums of Chebyshev products sum_j a_j b_j, coefficient by
// coefficient; (ab)_k = sum_{l in Z} a_|l| b_|k-l|.
class ChebProductSum {
 public:
  explicit ChebProductSum(std::size_t degree) : acc_(degree + 1) {}

  // a (degree da) and b (degree db) as midpoint-radius arrays; a_point
  // means a has zero radius.
  void add(const MidRad* a, std::size_t da, const MidRad* b, std::size_t db, bool a_point = false) {
    if (acc_.size() < da + db + 1) acc_.resize(da + db + 1);
    const long la = static_cast<long>(da), lb = static_cast<long>(db);
    for (long k = 0; k <= la + lb; ++k) {
      MidRadSum& s = acc_[k];
      const long lmin = std::max(-la, k - lb), lmax = std::min(la, k + lb);
      if (a_point) {
        for (long l = lmin; l <= lmax; ++l) s.add_point_product(a[std::labs(l)], b[std::labs(k - l)]);
      } else {
        for (long l = lmin; l <= lmax; ++l) s.add_product(a[std::labs(l)], b[std::labs(k - l)]);
      }
    }
  }
  void add(const ChebSeq& a, const ChebSeq& b) {
    const auto ma = to_midrad(a), mb = to_midrad(b);
    add(ma.data(), a.degree(), mb.data(), b.degree());
  }

  ChebSeq result(const ChebSeq& like) const {
    std::vector<ComplexInterval> c(acc_.size());
    for (std::size_t k = 0; k < acc_.size(); ++k) c[k] = acc_[k].result();
    return like.like(std::move(c));
  }

 private:
  std::vector<MidRadSum> acc_;
};

inline ChebSeq operator*(const ChebSeq& a, const ChebSeq& b) {
  a.require_compatible(b);
  ChebProductSum s(a.degree() + b.degree());
  s.add(a, b);
  return s.result(a);
}

// Chebyshev points of the first kind x_j = cos(pi (j + 1/2) / (K + 1)) and
// the map from values at those points to coefficients u_k in the u_0 + 2
// sum u_k T_k convention (floating point, used for approximate data only).
inline std::vector<double> chebyshev_nodes(std::size_t K) {
  std::vector<double> x(K + 1);
  const double pi = std::acos(-1.0);
  for (std::size_t j = 0; j <= K; ++j) x[j] = std::cos(pi * (static_cast<double>(j) + 0.5) / static_cast<double>(K + 1));
  return x;
}

template <class V>
std::vector<V> chebyshev_coefficients(const std::vector<V>& values) {
  const std::size_t n = values.size();
  const double pi = std::acos(-1.0);
  std::vector<V> u(n, V(0.0));
  for (std::size_t k = 0; k < n; ++k) {
    V s(0.0);
    for (std::size_t j = 0; j < n; ++j)
      s += values[j] * std::cos(pi * static_cast<double>(k) * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
    u[k] = s / static_cast<double>(n);
  }
  return u;
}

// Floating-point evaluation of a midpoint coefficient vector at x in [-1, 1].
inline std::complex<double> chebyshev_eval_mid(const std::vector<std::complex<double>>& u, double x) {
  std::complex<double> b1 = 0.0, b2 = 0.0;
  for (std::size_t k = u.size() - 1; k >= 1; --k) {
    const std::complex<double> b0 = 2.0 * u[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return u[0] + x * b1 - b2;
}

}  // namespace lyapcert
