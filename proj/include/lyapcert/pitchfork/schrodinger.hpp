#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "lyapcert/core/linalg.hpp"
#include "lyapcert/pitchfork/hermite.hpp"

namespace lyapcert {

struct PitchforkParams {
  Interval alpha;
  Interval sigma{1.0};
  Interval p;

  void validate() const {
    if (!(sigma.lo() > 0.0)) throw DomainError("pitchfork: sigma must be positive");
  }
};

// H = kinetic * (-d^2/dx^2) + potential(x) + tilt_coef * tilt(x).
// The tilt term carries the dependence on p, kept separate so that a wide p
// interval only enters through one scalar.
struct SchrodingerOperator {
  Interval kinetic;
  Polynomial potential;
  Polynomial tilt;
  Interval tilt_coef{0.0};

  Polynomial full_potential() const { return potential + tilt_coef * tilt; }
};

// V_p(x) = (alpha - 3x^2)(1/2 - p) + (x^3 - alpha x)^2 / (2 sigma^2).
inline SchrodingerOperator pitchfork_operator(const PitchforkParams& prm) {
  prm.validate();
  const Interval& a = prm.alpha;
  const Interval two_s2 = Interval(2.0) * sqr(prm.sigma);
  SchrodingerOperator op;
  op.kinetic = sqr(prm.sigma) / Interval(2.0);
  op.potential = Polynomial({Interval(0.0), Interval(0.0), sqr(a) / two_s2, Interval(0.0),
                             -(Interval(2.0) * a) / two_s2, Interval(0.0), Interval(1.0) / two_s2});
  op.tilt = Polynomial({a, Interval(0.0), Interval(-3.0)});
  op.tilt_coef = Interval(0.5) - prm.p;
  return op;
}

inline Interval eval_potential(const PitchforkParams& prm, const Interval& x) {
  return pitchfork_operator(prm).full_potential()(x);
}

template <class T>
HermiteSeries<T> apply_operator_parts(const SchrodingerOperator& op, const Polynomial& pot, const HermiteSeries<T>& f) {
  HermiteSeries<T> k = minus_second_derivative(f);
  HermiteSeries<T> v = apply_polynomial(pot, f);
  return scaled(hermite_detail::to_scalar(op.kinetic, T()), k) + v;
}

inline HermiteExpansion apply_H_hermite(const SchrodingerOperator& op, const HermiteExpansion& f) {
  return apply_operator_parts(op, op.full_potential(), f);
}

inline HermiteExpansion apply_H_hermite(const PitchforkParams& prm, const HermiteExpansion& f) {
  return apply_H_hermite(pitchfork_operator(prm), f);
}

// Gram-type matrices of H on a trial set, with the tilt coefficient
// split as c = c_mid + e. Every matrix is then a point-accurate
// combination plus e and e^2 terms, which keeps the dependence on a wide
// tilt interval second order where it cancels (e.g. at the minimiser of
// Lambda, where <tilt f_0, f_0> ~ 0).
struct PencilMatrices {
  IntervalMatrix a0;
  IntervalMatrix g1, q1;      // A1 = g1 + e q1
  IntervalMatrix g2, w, t;    // A2 = g2 + e w + e^2 t
  Interval e{0.0};
  bool has_a2 = false;

  Interval e2() const { return Interval(0.0, rounding::mul_up(e.mag(), e.mag())); }

  IntervalMatrix a1() const { return symmetrize(g1 + e * q1); }
  IntervalMatrix a2() const { return symmetrize(g2 + e * w + e2() * t); }
  IntervalMatrix b1(const Interval& nu) const { return symmetrize((g1 - nu * a0) + e * q1); }
  IntervalMatrix b2(const Interval& nu) const {
    const Interval two_nu = Interval(2.0) * nu;
    IntervalMatrix base = (g2 - two_nu * g1) + sqr(nu) * a0;
    return symmetrize(base + e * (w - two_nu * q1) + e2() * t);
  }
};

inline PencilMatrices assemble_matrices(const SchrodingerOperator& op, const std::vector<HermiteExpansion>& trials,
                                        bool need_a2) {
  const std::size_t n = trials.size();
  const double cm = op.tilt_coef.mid();
  PencilMatrices out;
  out.e = Interval(rounding::sub_down(op.tilt_coef.lo(), cm), rounding::sub_up(op.tilt_coef.hi(), cm));
  const Polynomial pot_mid = op.potential + Interval(cm) * op.tilt;

  std::vector<HermiteExpansion> g(n), q(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = apply_operator_parts(op, pot_mid, trials[i]);
    q[i] = apply_polynomial(op.tilt, trials[i]);
  }
  out.a0 = IntervalMatrix(n, n);
  out.g1 = IntervalMatrix(n, n);
  out.q1 = IntervalMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out.a0(i, j) = inner(trials[i], trials[j]);
      out.g1(i, j) = inner(g[i], trials[j]);
      out.q1(i, j) = inner(q[i], trials[j]);
    }
  out.a0 = symmetrize(out.a0);
  out.g1 = symmetrize(out.g1);
  out.q1 = symmetrize(out.q1);
  if (need_a2) {
    out.g2 = IntervalMatrix(n, n);
    out.w = IntervalMatrix(n, n);
    out.t = IntervalMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        out.g2(i, j) = inner(g[i], g[j]);
        out.w(i, j) = inner(g[i], q[j]) + inner(q[i], g[j]);
        out.t(i, j) = inner(q[i], q[j]);
      }
    out.g2 = symmetrize(out.g2);
    out.w = symmetrize(out.w);
    out.t = symmetrize(out.t);
    out.has_a2 = true;
  }
  return out;
}

inline PencilMatrices assemble_matrices(const PitchforkParams& prm, const std::vector<HermiteExpansion>& trials,
                                        bool need_a2) {
  return assemble_matrices(pitchfork_operator(prm), trials, need_a2);
}

// Floating-point Galerkin matrix of H (tilt coefficient at its midpoint) in
// the first `size` Hermite functions of scale beta. Exact up to rounding:
// H phi_j is a finite expansion, so no truncation enters the entries.
inline Eigen::MatrixXd galerkin_matrix(const SchrodingerOperator& op, double beta, std::size_t size) {
  const Polynomial pot = op.potential + Interval(op.tilt_coef.mid()) * op.tilt;
  Eigen::MatrixXd g(size, size);
  for (std::size_t j = 0; j < size; ++j) {
    const HermiteSeries<double> hj = HermiteSeries<double>::basis(beta, j);
    const HermiteSeries<double> r = apply_operator_parts(op, pot, hj);
    for (std::size_t i = 0; i < size; ++i) g(i, j) = i < r.size() ? r.coeffs[i] : 0.0;
  }
  return 0.5 * (g + g.transpose());
}

struct RitzBasis {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // columns, Hermite coefficients
};

inline RitzBasis galerkin_ritz(const SchrodingerOperator& op, double beta, std::size_t size) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(galerkin_matrix(op, beta, size));
  if (es.info() != Eigen::Success) throw ApproxFailure("Galerkin eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

inline std::vector<HermiteExpansion> ritz_trials(const RitzBasis& rb, double beta, std::size_t count) {
  std::vector<HermiteExpansion> out;
  for (std::size_t m = 0; m < count; ++m) {
    std::vector<Interval> c(rb.vectors.rows());
    for (Eigen::Index k = 0; k < rb.vectors.rows(); ++k) c[k] = Interval(rb.vectors(k, m));
    out.emplace_back(Interval(beta), std::move(c));
  }
  return out;
}

// Basis scale that minimises the sum of the lowest `count` Galerkin
// eigenvalues (the Rayleigh-Ritz optimal choice), found by golden-section
// search on log(beta). Not part of any proof: any beta is valid.
inline double choose_basis_scale(const SchrodingerOperator& op, std::size_t count, std::size_t size) {
  auto cost = [&](double lb) {
    const Eigen::VectorXd ev = galerkin_ritz(op, std::exp(lb), size).values;
    return ev.head(count).sum();
  };
  double a = std::log(0.5), b = std::log(4.0);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = cost(c), fd = cost(d);
  for (int it = 0; it < 14; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = cost(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = cost(d);
    }
  }
  // Round to a short binary fraction so the scale is exact and printable.
  return std::ldexp(std::round(std::ldexp(std::exp(0.5 * (a + b)), 10)), -10);
}

}  // namespace lyapcert
