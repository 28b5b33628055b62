#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "lyapcert/core/matrix.hpp"

namespace lyapcert {

// Eigenvalue enclosure for the lowest indices of a self-adjoint problem.
// Either side may be absent (e.g. Rayleigh-Ritz yields uppers only).
struct EigenEnclosure {
  std::vector<double> lowers;
  std::vector<double> uppers;
  // Set for indices whose enclosure overlaps a neighbour's.
  std::vector<bool> clustered;

  std::size_t size() const { return std::max(lowers.size(), uppers.size()); }
  bool has_lowers() const { return !lowers.empty(); }
  bool has_uppers() const { return !uppers.empty(); }
  Interval at(std::size_t m) const { return {lowers.at(m), uppers.at(m)}; }
};

// Interval Cholesky. Success certifies that every symmetric matrix in the
// box is positive definite.
inline std::optional<IntervalMatrix> verified_cholesky(const IntervalMatrix& a) {
  const std::size_t n = a.rows();
  IntervalMatrix l(n, n, Interval(0.0));
  for (std::size_t j = 0; j < n; ++j) {
    Interval d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= sqr(l(j, k));
    if (!(d.lo() > 0.0)) return std::nullopt;
    l(j, j) = sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      Interval s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

// Number of negative eigenvalues shared by every symmetric matrix in the
// box, via interval LDL^T with the given elimination order. nullopt if a
// pivot's sign is undetermined.
inline std::optional<std::size_t> certified_negative_count(IntervalMatrix s, const std::vector<std::size_t>& order) {
  const std::size_t n = s.rows();
  std::vector<bool> done(n, false);
  std::size_t negatives = 0;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t k = order[step];
    const Interval d = s(k, k);
    if (d.contains(0.0)) return std::nullopt;
    if (d.hi() < 0.0) ++negatives;
    done[k] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const Interval lik = s(i, k) / d;
      for (std::size_t j = i; j < n; ++j) {
        if (done[j]) continue;
        Interval v = s(i, j) - lik * s(k, j);
        s(i, j) = v;
        s(j, i) = v;
      }
    }
  }
  return negatives;
}

struct GevpOptions {
  int max_doublings = 1100;
};

// Certified enclosures of the `count` smallest eigenvalues of A1 v = l A0 v
// for every symmetric pair in the boxes, with A0 positive definite.
//
// Approximate eigenvectors X turn the pencil into a nearly diagonal one,
// C1 = X^T A1 X and C0 = X^T A0 X. Positive definiteness of C0 is certified
// by Cholesky, and then for each index i the Sylvester inertia of C1 - t C0
// at t = l_i -/+ delta pins l_i in [t-, t+): at most i eigenvalues lie
// below t- and at least i+1 below t+. The index under test is eliminated
// last so that every other pivot stays far from zero. The resulting bound
// is quadratic in the entry radii. Multiple eigenvalues come out as
// overlapping enclosures with the cluster flag set.
inline EigenEnclosure verified_sym_gevp(const IntervalMatrix& a1, const IntervalMatrix& a0, std::size_t count,
                                        const GevpOptions& opt = {}) {
  const std::size_t n = a1.rows();
  if (a1.cols() != n || a0.rows() != n || a0.cols() != n) throw DomainError("gevp: dimension mismatch");
  if (count > n) throw DomainError("gevp: count exceeds dimension");

  Eigen::MatrixXd m1 = midpoint(a1), m0 = midpoint(a0);
  m1 = 0.5 * (m1 + m1.transpose()).eval();
  m0 = 0.5 * (m0 + m0.transpose()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(m1, m0);
  if (es.info() != Eigen::Success) throw ClusterError("gevp: floating-point eigensolver failed (A0 not positive definite?)");
  const Eigen::VectorXd lam = es.eigenvalues();
  const IntervalMatrix x = to_interval(es.eigenvectors());
  const IntervalMatrix xt = x.transpose();
  const IntervalMatrix c1 = symmetrize(xt * a1 * x);
  const IntervalMatrix c0 = symmetrize(xt * a0 * x);
  if (!verified_cholesky(c0)) throw ClusterError("gevp: could not certify positive definiteness of A0");

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::fabs(lam(i)));

  auto pencil_at = [&](double t) {
    IntervalMatrix s(n, n);
    const Interval ti(t);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s(i, j) = c1(i, j) - ti * c0(i, j);
    return s;
  };
  auto count_below = [&](double t, std::size_t last) -> std::optional<std::size_t> {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::fabs(lam(a) - t) > std::fabs(lam(b) - t);
    });
    auto it = std::find(order.begin(), order.end(), last);
    std::rotate(it, it + 1, order.end());
    return certified_negative_count(pencil_at(t), order);
  };

  EigenEnclosure out;
  out.lowers.resize(count);
  out.uppers.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    // Start near the rounding level and double: the first success is within
    // a factor two of the best radius this test can prove.
    double delta = std::max(4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(lam(i)), 1e-3 * scale),
                            1e-300);
    bool have_lo = false, have_hi = false;
    for (int it = 0; it < opt.max_doublings && !(have_lo && have_hi); ++it, delta *= 2.0) {
      if (!have_lo) {
        const double t = lam(i) - delta;
        if (auto c = count_below(t, i); c && *c <= i) {
          out.lowers[i] = t;
          have_lo = true;
        }
      }
      if (!have_hi) {
        const double t = lam(i) + delta;
        if (auto c = count_below(t, i); c && *c >= i + 1) {
          out.uppers[i] = t;
          have_hi = true;
        }
      }
    }
    if (!(have_lo && have_hi))
      throw ClusterError("gevp: eigenvalue " + std::to_string(i) + " could not be enclosed (pivot signs undetermined)");
  }
  out.clustered.assign(count, false);
  for (std::size_t i = 0; i + 1 < count; ++i) {
    if (out.uppers[i] > out.lowers[i + 1]) out.clustered[i] = out.clustered[i + 1] = true;
  }
  return out;
}

// Enclosure of the solution set of A x = b (Krawczyk-type a posteriori bound).
inline IntervalVector verified_linear_solve(const IntervalMatrix& a, const IntervalVector& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DomainError("linear solve: dimension mismatch");
  const Eigen::MatrixXd am = midpoint(a);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(am);
  if (!lu.isInvertible()) throw VerificationError("linear solve: midpoint matrix is singular");
  const Eigen::MatrixXd rm = lu.inverse();
  Eigen::VectorXd bm(n);
  for (std::size_t i = 0; i < n; ++i) bm(i) = b[i].mid();
  const Eigen::VectorXd xt = rm * bm;

  const IntervalMatrix r = to_interval(rm);
  // z = R (b - A xt), C = I - R A
  IntervalVector res(n);
  for (std::size_t i = 0; i < n; ++i) {
    Interval s = b[i];
    for (std::size_t j = 0; j < n; ++j) s -= a(i, j) * Interval(xt(j));
    res[i] = s;
  }
  IntervalVector z(n, Interval(0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z[i] += r(i, j) * res[j];
  const IntervalMatrix ra = r * a;
  double cnorm = 0.0, znorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const Interval cij = (i == j ? Interval(1.0) : Interval(0.0)) - ra(i, j);
      row = rounding::add_up(row, cij.mag());
    }
    cnorm = std::max(cnorm, row);
    znorm = std::max(znorm, z[i].mag());
  }
  if (!(cnorm < 1.0)) throw VerificationError("linear solve: contraction bound ||I - RA|| >= 1");
  const double e = rounding::div_up(znorm, rounding::sub_down(1.0, cnorm));
  // One refinement sweep: x - xt in z + C [-e, e].
  IntervalVector out(n);
  const Interval box(-e, e);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      row = rounding::add_up(row, ((i == j ? Interval(1.0) : Interval(0.0)) - ra(i, j)).mag());
    const Interval refined = z[i] + Interval(-1.0, 1.0) * Interval(rounding::mul_up(row, e));
    out[i] = Interval(xt(i)) + intersect(refined, box);
  }
  return out;
}

// Operator norm on weighted l1: max_j (sum_i w_out[i] |J_ij|) / w_in[j].
// Returned as an interval: lo uses entry mignitudes, hi magnitudes.
template <class T>
Interval weighted_l1_opnorm(const Matrix<T>& j, const std::vector<double>& w_out, const std::vector<double>& w_in) {
  double lo = 0.0, hi = 0.0;
  for (std::size_t c = 0; c < j.cols(); ++c) {
    double sl = 0.0, sh = 0.0;
    for (std::size_t r = 0; r < j.rows(); ++r) {
      const double mg = mag(j(r, c));
      double mn;
      if constexpr (std::is_same_v<T, Interval>) {
        mn = j(r, c).mig();
      } else {
        mn = j(r, c).abs().lo();
      }
      sl = rounding::add_down(sl, rounding::mul_down(w_out[r], mn));
      sh = rounding::add_up(sh, rounding::mul_up(w_out[r], mg));
    }
    lo = std::max(lo, rounding::div_down(sl, w_in[c]));
    hi = std::max(hi, rounding::div_up(sh, w_in[c]));
  }
  return {lo, hi};
}

}  // namespace lyapcert
