#pragma once

#include <cmath>
#include <vector>

#include "lyapcert/pitchfork/schrodinger.hpp"

namespace lyapcert {

struct QuadraticLowerBound {
  Interval a;
  Interval b;
};

struct NonnegativityOptions {
  int max_pieces = 200000;
  double core_radius = 0.0;  // > 0 forces the core [-R, R] (test hook)
};

// Certifies g(x) >= 0 for all real x: an adaptive interval subdivision of
// [-R, R] plus, for |x| >= R, dominance of the even leading term.
inline void certify_nonnegative(const Polynomial& g, const NonnegativityOptions& opt = {}) {
  const int d = g.degree();
  if (d < 0) return;
  if (d == 0) {
    if (g.c[0].lo() >= 0.0) return;
    throw VerificationError("nonnegativity: negative constant");
  }
  const Interval lead = g.c[d];
  if (d % 2 != 0 || !(lead.lo() > 0.0)) throw VerificationError("nonnegativity: leading term is not even and positive");

  // Tail: g(x) >= |x|^d (lead - sum_k |c_k| R^{k-d}) for |x| >= R >= 1.
  auto tail_ok = [&](double r) {
    double s = 0.0;
    for (int k = 0; k < d; ++k)
      s = rounding::add_up(s, rounding::div_up(g.c[k].mag(), detail::pos_pow_down(r, d - k)));
    return s < lead.lo();
  };
  double radius = opt.core_radius;
  if (radius > 0.0) {
    if (!tail_ok(radius)) throw VerificationError("nonnegativity: tail certificate fails at forced radius");
  } else {
    radius = 1.0;
    while (!tail_ok(radius)) {
      radius *= 2.0;
      if (radius > 1e6) throw VerificationError("nonnegativity: no tail radius found");
    }
  }

  const Polynomial dg = g.derivative();
  std::vector<Interval> stack;
  const bool even = g.is_even();
  stack.emplace_back(even ? 0.0 : -radius, radius);
  int pieces = 0;
  while (!stack.empty()) {
    const Interval x = stack.back();
    stack.pop_back();
    if (++pieces > opt.max_pieces) throw VerificationError("nonnegativity: subdivision budget exhausted");
    if (mean_value_eval(g, dg, x).lo() >= 0.0) continue;
    const double m = x.mid();
    if (g(Interval(m)).hi() < 0.0) throw VerificationError("nonnegativity: polynomial is negative somewhere");
    if (!(x.lo() < m && m < x.hi())) throw VerificationError("nonnegativity: cannot split further");
    stack.emplace_back(x.lo(), m);
    stack.emplace_back(m, x.hi());
  }
}

// Approximate minimum over [-R, R] of the lower endpoint of g at points
// (grid plus local refinement), so that interval coefficients are accounted
// for.
inline double approx_min(const Polynomial& g, double radius) {
  const int n = 4000;
  double best = INFINITY, xbest = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = -radius + 2.0 * radius * i / n;
    const double v = g(Interval(x)).lo();
    if (v < best) best = v, xbest = x;
  }
  double h = 2.0 * radius / n;
  for (int it = 0; it < 60; ++it) {
    for (double x : {xbest - h, xbest + h}) {
      const double v = g(Interval(x)).lo();
      if (v < best) best = v, xbest = x;
    }
    h *= 0.7;
  }
  return best;
}

inline Polynomial minus_quadratic(const Polynomial& v, double a, double b) {
  Polynomial g = v;
  if (g.c.size() < 3) g.c.resize(3, Interval(0.0));
  g.c[0] = g.c[0] - Interval(b);
  g.c[2] = g.c[2] - Interval(a);
  return g;
}

// Certify V(x) >= a x^2 + b with b = (floating minimum of V - a x^2) - margin.
inline QuadraticLowerBound certify_quadratic_lower_bound(const Polynomial& v, double a,
                                                         const NonnegativityOptions& opt = {}) {
  if (!(a > 0.0)) throw DomainError("quadratic lower bound: a must be positive");
  const double m = approx_min(minus_quadratic(v, a, 0.0), 12.0);
  const double margin = 1e-9 * std::max(1.0, std::fabs(m)) + 1e-12;
  const double b = m - margin;
  certify_nonnegative(minus_quadratic(v, a, b), opt);
  return {Interval(a), Interval(b)};
}

// lambda^(0)_m = (m + 1/2) sigma sqrt(2a) + b.
inline std::vector<Interval> base_eigenvalues(const Interval& a, const Interval& b, const Interval& sigma,
                                              std::size_t count) {
  if (!(a.lo() > 0.0)) throw DomainError("base eigenvalues: a must be positive");
  std::vector<Interval> out;
  const Interval w = sigma * sqrt(Interval(2.0) * a);
  for (std::size_t m = 0; m < count; ++m) out.push_back((Interval(static_cast<double>(m)) + Interval(0.5)) * w + b);
  return out;
}

// Base quadratic that maximises the base eigenvalue of index `index` after
// subtracting the quadratic from V. Heuristic; certification is separate.
inline double propose_base_quadratic(const Polynomial& v, const Interval& sigma, std::size_t index) {
  double best_a = 1.0, best_nu = -INFINITY;
  const double s = sigma.mid();
  for (int k = -40; k <= 60; ++k) {
    const double a = std::pow(2.0, k / 8.0);
    const double b = approx_min(minus_quadratic(v, a, 0.0), 12.0);
    const double nu = (static_cast<double>(index) + 0.5) * s * std::sqrt(2.0 * a) + b;
    if (nu > best_nu) best_nu = nu, best_a = a;
  }
  return best_a;
}

inline EigenEnclosure rayleigh_ritz_upper(const IntervalMatrix& a0, const IntervalMatrix& a1) {
  EigenEnclosure e = verified_sym_gevp(a1, a0, a1.rows());
  e.lowers.clear();
  return e;
}

inline EigenEnclosure rayleigh_ritz_upper(const PencilMatrices& pm) { return rayleigh_ritz_upper(pm.a0, pm.a1()); }

namespace detail {
inline EigenEnclosure lehmann_maehly_from(const IntervalMatrix& b1, const IntervalMatrix& b2, const Interval& nu) {
  const std::size_t n = b1.rows();
  const EigenEnclosure mu = verified_sym_gevp(b1, b2, n);
  if (!(mu.uppers[n - 1] < 0.0)) throw VerificationError("Lehmann-Maehly: could not certify mu_M < 0");
  EigenEnclosure out;
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t j = n - 1 - m;
    const Interval mu_j(mu.lowers[j], mu.uppers[j]);
    out.lowers.push_back((Interval(nu.lo()) + Interval(1.0) / mu_j).lo());
  }
  for (std::size_t m = 1; m < n; ++m) out.lowers[m] = std::max(out.lowers[m], out.lowers[m - 1]);
  return out;
}
}  // namespace detail

namespace detail {
inline void check_nu(const Interval& nu, const EigenEnclosure* rr) {
  if (rr && !(rr->uppers.back() < nu.lo()))
    throw UsageError("Lehmann-Maehly: Rayleigh-Ritz upper bound of the top index is not below nu");
}
}  // namespace detail

// Lower bounds for lambda_0..lambda_M given nu <= lambda_{M+1} (every point
// of the nu interval must satisfy this; nu.lo is used) and a Rayleigh-Ritz
// upper bound of lambda_M below nu, checked when `rr` is supplied.
inline EigenEnclosure lehmann_maehly_lower(const PencilMatrices& pm, const Interval& nu,
                                           const EigenEnclosure* rr = nullptr) {
  if (!pm.has_a2) throw UsageError("Lehmann-Maehly needs A2");
  detail::check_nu(nu, rr);
  const Interval v(nu.lo());
  return detail::lehmann_maehly_from(pm.b1(v), pm.b2(v), v);
}

inline EigenEnclosure lehmann_maehly_lower(const IntervalMatrix& a0, const IntervalMatrix& a1, const IntervalMatrix& a2,
                                           const Interval& nu_in, const EigenEnclosure* rr = nullptr) {
  detail::check_nu(nu_in, rr);
  const Interval nu(nu_in.lo());
  const Interval two_nu = Interval(2.0) * nu;
  const IntervalMatrix b1 = symmetrize(a1 - nu * a0);
  const IntervalMatrix b2 = symmetrize((a2 - two_nu * a1) + sqr(nu) * a0);
  return detail::lehmann_maehly_from(b1, b2, nu);
}

}  // namespace lyapcert
