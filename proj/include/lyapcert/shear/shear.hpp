#pragma once

// Tilted generator of the linear shear model on [0, 2 pi]-periodic functions,
//   L_p f = 2 sigma^2 f'' + b (1 + cos phi) f' + (p/2)(b sin phi - 2 alpha) f,
// acting on Fourier coefficients f(phi) = sum_n f_n e^{i n phi} by
//   (L_p f)_n = (-2 sigma^2 n^2 + i b n - alpha p) f_n
//             + i (b (n+1)/2 + p b/4) f_{n+1} + i (b (n-1)/2 - p b/4) f_{n-1}.
// Everything here works on Fourier sequences whose coefficients are
// Chebyshev series in p; a fixed p (or a p interval) is the degree-0 case.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <vector>

#include "lyapcert/continuation/chebseq.hpp"
#include "lyapcert/core/errors.hpp"

namespace lyapcert {

struct ShearParams {
  Interval alpha{1.0};
  Interval b{0.0};
  Interval sigma{1.0};
  Interval p{0.0};

  void validate() const {
    if (!(sigma.lo() > 0.0)) throw DomainError("shear: sigma must be positive");
  }
};

// Model parameters with p given as a Chebyshev series on a domain.
struct ShearSystem {
  Interval alpha, b, sigma;
  ChebSeq p;

  static ShearSystem at(const ShearParams& prm) {
    prm.validate();
    return {prm.alpha, prm.b, prm.sigma, ChebSeq::constant(prm.p, 1.0, 0.0, 0.0)};
  }
  static ShearSystem over(const ShearParams& prm, double p_lo, double p_hi, double eta) {
    prm.validate();
    return {prm.alpha, prm.b, prm.sigma, ChebSeq::identity(eta, p_lo, p_hi)};
  }
  ChebSeq constant(const ComplexInterval& v) const { return p.like_constant(v); }
  ChebSeq zero() const { return constant(0.0); }
};

// Coefficients f_n for |n| <= N, each a Chebyshev series in p.
struct FourierChebSeq {
  int N = 0;
  std::vector<ChebSeq> f;  // f[n + N]
  bool real = false;       // f_{-n} = conj(f_n)

  const ChebSeq& at(int n) const { return f[static_cast<std::size_t>(n + N)]; }
  ChebSeq& at(int n) { return f[static_cast<std::size_t>(n + N)]; }
  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& c : f) d = std::max(d, c.degree());
    return d;
  }
  double norm() const {
    double s = 0.0;
    for (const auto& c : f) s = rounding::add_up(s, c.norm());
    return s;
  }
};

inline ComplexInterval times_i(const Interval& x) { return {Interval(0.0), x}; }

// Row n of L_p: L_p f_n = diag_n f_n + up_n f_{n+1} + dn_n f_{n-1}.
struct LpRow {
  ChebSeq diag, up, dn;
};

inline LpRow lp_row(const ShearSystem& s, int n) {
  const Interval nn(static_cast<double>(n));
  const Interval two_s2 = Interval(2.0) * sqr(s.sigma);
  const ComplexInterval d0(-(two_s2 * sqr(nn)), s.b * nn);
  const Interval b4 = s.b / Interval(4.0);
  LpRow r;
  r.diag = s.constant(d0) - s.alpha * s.p;
  r.up = s.constant(times_i(s.b * (nn + Interval(1.0)) / Interval(2.0))) + times_i(b4) * s.p;
  r.dn = s.constant(times_i(s.b * (nn - Interval(1.0)) / Interval(2.0))) - times_i(b4) * s.p;
  return r;
}

// L_p f, truncated at N + 1 (the exact image of a degree-N sequence).
inline FourierChebSeq apply_Lp(const FourierChebSeq& f, const ShearSystem& s) {
  FourierChebSeq out;
  out.N = f.N + 1;
  out.f.assign(2 * out.N + 1, s.zero());
  for (int n = -out.N; n <= out.N; ++n) {
    const LpRow row = lp_row(s, n);
    ChebSeq acc = s.zero();
    if (std::abs(n) <= f.N) acc = acc + row.diag * f.at(n);
    if (std::abs(n + 1) <= f.N) acc = acc + row.up * f.at(n + 1);
    if (std::abs(n - 1) <= f.N) acc = acc + row.dn * f.at(n - 1);
    out.at(n) = acc;
  }
  out.real = f.real && s.p.is_real();
  return out;
}

// <f, g> = sum_n f_n conj(g_n).
inline ChebSeq l2_inner(const FourierChebSeq& f, const FourierChebSeq& g, const ShearSystem& s) {
  ChebProductSum acc(0);
  const int N = std::min(f.N, g.N);
  for (int n = -N; n <= N; ++n) {
    const auto a = to_midrad(f.at(n)), b = to_midrad(g.at(n).conj());
    acc.add(a.data(), f.at(n).degree(), b.data(), g.at(n).degree());
  }
  return acc.result(s.p);
}

struct FpValue {
  FourierChebSeq g;  // L_p f - lambda f, up to N + 1
  ChebSeq mu;        // <f, fbar> - 1
};

inline FpValue eval_Fp(const FourierChebSeq& f, const ChebSeq& lambda, const FourierChebSeq& fbar,
                       const ShearSystem& s) {
  FpValue out;
  out.g = apply_Lp(f, s);
  for (int n = -f.N; n <= f.N; ++n) out.g.at(n) = out.g.at(n) - lambda * f.at(n);
  out.mu = l2_inner(f, fbar, s) + ComplexInterval(-1.0);
  return out;
}

// ---- floating-point side: truncated matrices and Newton iteration ----

struct PointParams {
  double alpha, b, sigma, p;
};

inline PointParams mid_params(const ShearSystem& s, double p) { return {s.alpha.mid(), s.b.mid(), s.sigma.mid(), p}; }

// Truncated L_p on |n| <= N.
inline Eigen::MatrixXcd lp_matrix(const PointParams& q, int N) {
  const int d = 2 * N + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  const std::complex<double> I(0.0, 1.0);
  for (int n = -N; n <= N; ++n) {
    const int i = n + N;
    m(i, i) = -2.0 * q.sigma * q.sigma * n * n + I * (q.b * n) - q.alpha * q.p;
    if (n + 1 <= N) m(i, i + 1) = I * (q.b * (n + 1) / 2.0 + q.p * q.b / 4.0);
    if (n - 1 >= -N) m(i, i - 1) = I * (q.b * (n - 1) / 2.0 - q.p * q.b / 4.0);
  }
  return m;
}

// Jacobian of the truncated zero-finding map at (f, lambda) with
// normalization against fhat; unknowns (f_{-N..N}, lambda).
inline Eigen::MatrixXcd fp_jacobian(const PointParams& q, int N, const Eigen::VectorXcd& f, std::complex<double> lambda,
                                    const Eigen::VectorXcd& fhat) {
  const int d = 2 * N + 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d + 1, d + 1);
  m.topLeftCorner(d, d) = lp_matrix(q, N) - lambda * Eigen::MatrixXcd::Identity(d, d);
  m.topRightCorner(d, 1) = -f;
  m.bottomLeftCorner(1, d) = fhat.adjoint();
  return m;
}

struct PointEigenpair {
  Eigen::VectorXcd f;
  std::complex<double> lambda;
  double residual = 0.0;
};

inline void normalize_eigenvector(Eigen::VectorXcd& f, int N) {
  const std::complex<double> f0 = f(N);
  if (std::abs(f0) == 0.0) throw ApproxFailure("shear Newton: eigenvector has zero mean");
  f *= std::conj(f0) / std::abs(f0);
  f /= f.norm();
}

inline double truncated_residual(const PointParams& q, int N, const Eigen::VectorXcd& f, std::complex<double> lambda) {
  return (lp_matrix(q, N) * f - lambda * f).cwiseAbs().sum();
}

// Dominant eigenpair of the truncated L_p polished by Newton's method.
inline PointEigenpair dominant_eigenpair(const PointParams& q, int N) {
  const Eigen::MatrixXcd L = lp_matrix(q, N);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(L);
  if (es.info() != Eigen::Success) throw ApproxFailure("shear: dense eigensolver failed");
  Eigen::Index k = 0;
  for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i).real() > es.eigenvalues()(k).real()) k = i;
  PointEigenpair e;
  e.f = es.eigenvectors().col(k);
  e.lambda = es.eigenvalues()(k);
  normalize_eigenvector(e.f, N);
  const double tol = 1e-13 * std::max(1.0, std::abs(e.lambda));
  e.residual = truncated_residual(q, N, e.f, e.lambda);
  for (int it = 0; it < 50 && !(e.residual < tol); ++it) {
    const Eigen::VectorXcd fhat = e.f;
    Eigen::VectorXcd rhs(2 * N + 2);
    rhs.head(2 * N + 1) = L * e.f - e.lambda * e.f;
    rhs(2 * N + 1) = fhat.dot(e.f) - 1.0;  // conj(fhat) . f
    const Eigen::VectorXcd step = fp_jacobian(q, N, e.f, e.lambda, fhat).partialPivLu().solve(rhs);
    e.f -= step.head(2 * N + 1);
    e.lambda -= step(2 * N + 1);
    normalize_eigenvector(e.f, N);
    e.residual = truncated_residual(q, N, e.f, e.lambda);
  }
  if (!(e.residual < 1e3 * tol)) throw ApproxFailure("shear Newton: no convergence (increase N)");
  return e;
}

// Enforce f_{-n} = conj(f_n) and a real eigenvalue when the data is real
// up to the given tolerance. Returns whether it was.
inline bool make_real(Eigen::VectorXcd& f, std::complex<double>& lambda, int N, double tol = 1e-13) {
  double asym = std::fabs(lambda.imag());
  for (int n = 0; n <= N; ++n) asym = std::max(asym, std::abs(f(N + n) - std::conj(f(N - n))));
  if (!(asym < tol)) return false;
  lambda = lambda.real();
  f(N) = f(N).real();
  for (int n = 1; n <= N; ++n) {
    const std::complex<double> v = 0.5 * (f(N + n) + std::conj(f(N - n)));
    f(N + n) = v;
    f(N - n) = std::conj(v);
  }
  return true;
}

}  // namespace lyapcert
