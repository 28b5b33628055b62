#pragma once

// Validation of the shear eigenpair uniformly over a parameter interval,
// with Fourier-Chebyshev unknowns, and the derivative bounds that turn the
// radius in l^1_eta into enclosures of Lambda' and Lambda''.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "lyapcert/shear/nk.hpp"

namespace lyapcert {

struct ContinuationOptions {
  int N = 60;
  std::size_t K = 80;
  double eta = 1.01;
  double y_inflate = 1.0;  // test hook
};

// Approximate eigenpair family from pointwise dominant eigenpairs at the
// K + 1 Chebyshev points of the domain, interpolated.
inline EigPairFamily approx_family(const ShearParams& prm, double p_lo, double p_hi, int N, std::size_t K, double eta) {
  const ShearSystem s = ShearSystem::over(prm, p_lo, p_hi, eta);
  if (p_lo == p_hi) K = 0;
  const std::vector<double> nodes = K == 0 ? std::vector<double>{0.0} : chebyshev_nodes(K);
  const std::size_t nn = nodes.size();
  const int d = 2 * N + 1;
  std::vector<std::vector<std::complex<double>>> fv(d, std::vector<std::complex<double>>(nn));
  std::vector<std::complex<double>> lv(nn);
  bool real = true;
  for (std::size_t j = 0; j < nn; ++j) {
    PointEigenpair e = dominant_eigenpair(mid_params(s, p_at_unit(s, nodes[j])), N);
    real = make_real(e.f, e.lambda, N) && real;
    for (int i = 0; i < d; ++i) fv[i][j] = e.f(i);
    lv[j] = e.lambda;
  }
  auto fit = [&](const std::vector<std::complex<double>>& v) {
    std::vector<std::complex<double>> u = K == 0 ? v : chebyshev_coefficients(v);
    std::vector<ComplexInterval> c;
    for (const auto& z : u) c.emplace_back(z);
    return s.p.like(std::move(c));
  };
  EigPairFamily x;
  x.fbar.N = N;
  x.fbar.f.assign(d, s.zero());
  for (int i = 0; i < d; ++i) x.fbar.f[i] = fit(fv[i]);
  x.lambdabar = fit(lv);
  if (real) {
    std::vector<ComplexInterval> lc;
    for (const auto& z : x.lambdabar.coeffs()) lc.emplace_back(z.mid().real());
    x.lambdabar = s.p.like(std::move(lc));
    for (int n = 0; n <= N; ++n) {
      std::vector<ComplexInterval> pos, neg;
      for (std::size_t k = 0; k <= x.fbar.at(n).degree(); ++k) {
        std::complex<double> v = 0.5 * (x.fbar.at(n)[k].mid() + std::conj(x.fbar.at(-n)[k].mid()));
        if (n == 0) v = v.real();
        pos.emplace_back(v);
        neg.emplace_back(std::conj(v));
      }
      x.fbar.at(n) = s.p.like(pos);
      x.fbar.at(-n) = s.p.like(neg);
    }
  }
  x.fbar.real = real;
  x.real = real;
  x.fbar = cleaned(x.fbar);
  return x;
}

struct ContinuationCertificate {
  EigPairFamily approx;
  NKCertificate nk;
  double r = 0.0;
  bool positivity = false;

  const ChebSeq& lambdabar() const { return approx.lambdabar; }
  double p_lo() const { return approx.lambdabar.p_lo(); }
  double p_hi() const { return approx.lambdabar.p_hi(); }
};

inline ContinuationCertificate extended_nk_validate(const ShearParams& prm, double p_lo, double p_hi,
                                                    const ContinuationOptions& opt = {}) {
  if (!(p_lo <= p_hi)) throw UsageError("continuation: empty parameter range");
  if (!(opt.eta > 1.0) && p_lo < p_hi) throw UsageError("continuation: eta must exceed 1");
  ShearParams mid = prm;
  mid.p = Interval(0.0);
  const double eta = p_lo < p_hi ? opt.eta : 1.0;
  const ShearSystem s = ShearSystem::over(mid, p_lo, p_hi, eta);
  ContinuationCertificate c;
  c.approx = approx_family(mid, p_lo, p_hi, opt.N, opt.K, eta);
  const ApproxInverse a = build_A(c.approx, s);
  c.nk = nk_validate(c.approx, s, a, {opt.y_inflate});
  c.r = c.nk.r;
  if (!c.approx.real) throw VerificationError("continuation: approximate eigenpair is not real");
  c.positivity = check_positivity(c.approx.fbar, c.r);
  c.nk.is_positive = c.positivity;
  if (!c.positivity) throw PositivityFailed("continuation: eigenfunction not certified positive on the range");
  return c;
}

// Retries with a longer Chebyshev and Fourier truncation when a proof step
// fails; the last failure is rethrown.
inline ContinuationCertificate extended_nk_validate_escalating(const ShearParams& prm, double p_lo, double p_hi,
                                                               ContinuationOptions opt = {}, int attempts = 3) {
  for (int i = 1;; ++i) {
    try {
      return extended_nk_validate(prm, p_lo, p_hi, opt);
    } catch (const UsageError&) {
      throw;
    } catch (const Error&) {
      if (i >= attempts) throw;
    }
    opt.K += opt.K / 2;
    opt.N += 20;
  }
}

// ---- derivative bounds ----

struct DerivativeConstants {
  double C1 = 0.0, C2 = 0.0;
};

// delta[x, eta]: radius of a disc centred at x in [0, 1] inside the closed
// Bernstein ellipse of parameter eta (lower bound).
inline double bernstein_delta(double x, double eta) {
  const Interval e(eta), ei = Interval(1.0) / e;
  const Interval a = (e + ei) / Interval(2.0);
  const Interval t = Interval(2.0) / (e + ei);
  const Interval xi(x);
  const double far = (a - xi).lo();
  const double near = ((e - ei) / Interval(2.0) * sqrt(intersect(Interval(1.0) - sqr(xi), Interval(0.0, 1.0)))).lo();
  if (x > t.hi()) return far;
  if (x <= t.lo()) return near;
  return std::min(far, near);  // the branches agree at the threshold
}

inline DerivativeConstants derivative_bound_constants(double eta, double p1, double p2) {
  if (!(eta > 1.0)) throw UsageError("derivative constants: eta must exceed 1");
  if (!(-1.0 <= p1 && p1 <= p2 && p2 <= 1.0)) throw UsageError("derivative constants: need -1 <= p1 <= p2 <= 1");
  const double x = std::max(std::fabs(p1), std::fabs(p2));
  const Interval e(eta);
  const double lne = log(e).lo();
  double s1 = 0.0, s2 = 0.0;
  Interval w(1.0);
  const auto k1 = static_cast<long>(std::floor(rounding::div_up(2.0, lne)));
  const auto k2 = static_cast<long>(std::floor(rounding::div_up(4.0, lne)));
  for (long k = 1; k <= std::max(k1, k2) + 1; ++k) {
    w = w * e;
    const Interval kk(static_cast<double>(k));
    if (k <= k1 + 1) s1 = std::max(s1, (sqr(kk) / w).hi());
    if (k >= 2 && k <= k2 + 1) s2 = std::max(s2, (sqr(kk) * (sqr(kk) - Interval(1.0)) / (Interval(3.0) * w)).hi());
  }
  DerivativeConstants c;
  const double d = bernstein_delta(x, eta);
  c.C1 = s1;
  c.C2 = s2;
  if (d > 0.0) {
    c.C1 = std::min(c.C1, (Interval(1.0) / Interval(d)).hi());
    c.C2 = std::min(c.C2, (Interval(2.0) / sqr(Interval(d))).hi());
  }
  return c;
}

struct LambdaDerivatives {
  Interval lambda, dlambda, d2lambda;
};

// Enclosures of Lambda, Lambda', Lambda'' over p0 from the certificate.
inline LambdaDerivatives lambda_derivatives_at(const ContinuationCertificate& cert, const Interval& p0) {
  const ChebSeq& l = cert.lambdabar();
  if (!(cert.positivity)) throw UsageError("lambda_derivatives_at: certificate lacks positivity");
  const Interval x = l.to_unit(p0);
  const DerivativeConstants c = derivative_bound_constants(l.eta(), x.lo(), x.hi());
  const Interval scale = Interval(2.0) / (Interval(l.p_hi()) - Interval(l.p_lo()));
  const Interval r = Interval(-cert.r, cert.r);
  const ChebSeq d1 = l.derivative_unit();
  const ChebSeq d2 = d1.derivative_unit();
  LambdaDerivatives out;
  out.lambda = l.eval(p0).re() + r;
  out.dlambda = scale * (d1.eval(p0).re() + Interval(c.C1) * r);
  out.d2lambda = sqr(scale) * (d2.eval(p0).re() + Interval(c.C2) * r);
  return out;
}

}  // namespace lyapcert
