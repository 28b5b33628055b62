#pragma once

// Newton-Kantorovich validation of the shear eigenpair in the space
// X = l^1(Z, l^1_eta) x l^1_eta with ||(f, lambda)|| = sum_n ||f_n|| + ||lambda||.
// A = J Pi_N + (1 / (2 sigma^2)) d^{-2} (I - Pi_N), where J is a matrix of
// Chebyshev series (multiplication operators in p) fitted from pointwise
// floating-point inverses. A fixed p is the degree-0 case.

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "lyapcert/core/enclosure.hpp"
#include "lyapcert/shear/shear.hpp"

namespace lyapcert {

// Approximate eigenpair family: point (zero-radius) coefficients.
struct EigPairFamily {
  FourierChebSeq fbar;
  ChebSeq lambdabar;
  bool real = false;
};

// Fixed-p approximate eigenpair with floating-point coefficients.
struct FourierSeq {
  int N = 0;
  std::vector<ComplexInterval> c;  // c[n + N]
  bool real = false;

  ComplexInterval at(int n) const { return std::abs(n) <= N ? c[static_cast<std::size_t>(n + N)] : ComplexInterval(0.0); }
};

struct EigPairApprox {
  FourierSeq fbar;
  std::complex<double> lambdabar;
};

inline FourierChebSeq to_family(const FourierSeq& f, const ShearSystem& s) {
  FourierChebSeq out;
  out.N = f.N;
  out.real = f.real;
  for (const auto& z : f.c) out.f.push_back(s.constant(z));
  return out;
}

inline FourierSeq to_fourier(const FourierChebSeq& f) {
  FourierSeq out;
  out.N = f.N;
  out.real = f.real;
  for (const auto& u : f.f) out.c.push_back(u[0]);
  return out;
}

inline EigPairFamily to_family(const EigPairApprox& x, const ShearSystem& s) {
  return {to_family(x.fbar, s), s.constant(ComplexInterval(x.lambdabar)), x.fbar.real};
}

// Fixed-p operator application; output truncation N + 1.
inline FourierSeq apply_Lp(const FourierSeq& f, const ShearParams& prm) {
  const ShearSystem s = ShearSystem::at(prm);
  return to_fourier(apply_Lp(to_family(f, s), s));
}

struct FpPoint {
  FourierSeq g;
  ComplexInterval mu;
};

inline FpPoint eval_Fp(const FourierSeq& f, const ComplexInterval& lambda, const EigPairApprox& xbar,
                       const ShearParams& prm) {
  const ShearSystem s = ShearSystem::at(prm);
  const FpValue v = eval_Fp(to_family(f, s), s.constant(lambda), to_family(xbar.fbar, s), s);
  return {to_fourier(v.g), v.mu[0]};
}

// Drops coefficients below `tol` relative to the largest one; the
// approximate solution is arbitrary, so this only affects the bounds.
inline FourierChebSeq cleaned(const FourierChebSeq& f, double tol = 1e-19) {
  double mx = 0.0;
  for (const auto& u : f.f)
    for (const auto& z : u.coeffs()) mx = std::max(mx, std::abs(z.mid()));
  FourierChebSeq out = f;
  for (auto& u : out.f) {
    std::size_t d = u.degree();
    while (d > 0 && std::abs(u[d].mid()) <= tol * mx) --d;
    std::vector<ComplexInterval> c(u.coeffs().begin(), u.coeffs().begin() + d + 1);
    for (auto& z : c)
      if (std::abs(z.mid()) <= tol * mx) z = ComplexInterval(0.0);
    u = u.like(std::move(c));
  }
  return out;
}

inline EigPairApprox newton_approx_eigenpair(const PointParams& q, int N) {
  if (N < 8) throw UsageError("shear Newton: N must be at least 8");
  PointEigenpair e = dominant_eigenpair(q, N);
  EigPairApprox out;
  out.fbar.N = N;
  out.fbar.real = make_real(e.f, e.lambda, N);
  for (int i = 0; i <= 2 * N; ++i) out.fbar.c.emplace_back(e.f(i));
  out.lambdabar = e.lambda;
  return out;
}

inline EigPairApprox newton_approx_eigenpair(const ShearParams& prm, int N) {
  return newton_approx_eigenpair(PointParams{prm.alpha.mid(), prm.b.mid(), prm.sigma.mid(), prm.p.mid()}, N);
}

// ---- approximate inverse ----

struct ApproxInverse {
  int N = 0;
  std::size_t dim = 0;                     // 2N + 2
  std::vector<std::vector<MidRad>> entry;  // row-major dim x dim; empty = 0
  Interval sigma;

  const std::vector<MidRad>& at(std::size_t i, std::size_t j) const { return entry[i * dim + j]; }
  std::size_t slot(int n) const { return static_cast<std::size_t>(n + N); }
  std::size_t lambda_slot() const { return dim - 1; }

  // Upper bound of max_j sum_i ||J_ij||.
  double norm(const ChebSeq& like) const {
    double best = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < dim; ++i) s = rounding::add_up(s, entry_norm(at(i, j), like.eta()));
      best = std::max(best, s);
    }
    return best;
  }
  static double entry_norm(const std::vector<MidRad>& u, double eta) {
    if (u.empty()) return 0.0;
    double s = ComplexInterval(Interval(u[0].re), Interval(u[0].im)).mag(), w = 1.0;
    for (std::size_t k = 1; k < u.size(); ++k) {
      w = rounding::mul_up(w, eta);
      const double m = ComplexInterval(Interval(u[k].re), Interval(u[k].im)).mag();
      s = rounding::add_up(s, rounding::mul_up(2.0, rounding::mul_up(m, w)));
    }
    return s;
  }
};

inline Eigen::VectorXcd family_mid_at(const FourierChebSeq& f, double x) {
  Eigen::VectorXcd v(2 * f.N + 1);
  for (int i = 0; i <= 2 * f.N; ++i) {
    std::vector<std::complex<double>> u;
    for (const auto& z : f.f[i].coeffs()) u.push_back(z.mid());
    v(i) = chebyshev_eval_mid(u, x);
  }
  return v;
}

inline std::complex<double> cheb_mid_at(const ChebSeq& c, double x) {
  std::vector<std::complex<double>> u;
  for (const auto& z : c.coeffs()) u.push_back(z.mid());
  return chebyshev_eval_mid(u, x);
}

inline double p_at_unit(const ShearSystem& s, double x) {
  if (s.p.degree() == 0) return s.p[0].re().mid();
  return 0.5 * (s.p.p_lo() + s.p.p_hi()) + 0.5 * (s.p.p_hi() - s.p.p_lo()) * x;
}

// J from pointwise inverses of Pi_N F_p'(Xbar(p)) Pi_N at degree + 1
// Chebyshev points, interpolated.
inline ApproxInverse build_A(const EigPairFamily& x, const ShearSystem& s, std::optional<std::size_t> degree = {}) {
  const int N = x.fbar.N;
  ApproxInverse a;
  a.N = N;
  a.dim = static_cast<std::size_t>(2 * N + 2);
  a.sigma = s.sigma;
  const std::size_t K = s.p.degree() == 0 ? 0 : degree.value_or(std::max(x.fbar.degree(), x.lambdabar.degree()));
  const std::vector<double> nodes = K == 0 ? std::vector<double>{0.0} : chebyshev_nodes(K);
  const std::size_t nn = nodes.size(), d2 = a.dim * a.dim;

  std::vector<Eigen::MatrixXcd> inv(nn);
  for (std::size_t j = 0; j < nn; ++j) {
    const PointParams q = mid_params(s, p_at_unit(s, nodes[j]));
    const Eigen::VectorXcd f = family_mid_at(x.fbar, nodes[j]);
    const std::complex<double> lam = cheb_mid_at(x.lambdabar, nodes[j]);
    const Eigen::MatrixXcd m = fp_jacobian(q, N, f, lam, f);
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
    if (!lu.isInvertible()) throw ApproxFailure("build_A: singular finite block");
    inv[j] = lu.inverse();
  }
  a.entry.assign(d2, {});
  double mx = 0.0;
  std::vector<std::vector<std::complex<double>>> coeff(d2);
  const double pi = std::acos(-1.0);
  Eigen::MatrixXd T(nn, nn);
  for (std::size_t k = 0; k < nn; ++k)
    for (std::size_t j = 0; j < nn; ++j)
      T(k, j) = (K == 0 ? 1.0 : std::cos(pi * static_cast<double>(k) * (static_cast<double>(j) + 0.5) / nn)) / nn;
  for (std::size_t e = 0; e < d2; ++e) {
    Eigen::VectorXcd vals(nn);
    for (std::size_t j = 0; j < nn; ++j) vals(j) = inv[j](e / a.dim, e % a.dim);
    const Eigen::VectorXcd u = T.cast<std::complex<double>>() * vals;
    coeff[e].assign(u.data(), u.data() + nn);
    for (const auto& z : coeff[e]) mx = std::max(mx, std::abs(z));
  }
  const double tol = 1e-18 * mx;
  for (std::size_t e = 0; e < d2; ++e) {
    std::size_t d = coeff[e].size();
    while (d > 0 && std::abs(coeff[e][d - 1]) <= tol) --d;
    for (std::size_t k = 0; k < d; ++k) a.entry[e].push_back(to_midrad(coeff[e][k]));
  }
  return a;
}

// ---- bounds ----

struct NKBounds {
  double Y = 0.0;
  double Z1 = 0.0, Z1_finite = 0.0, Z1_tail = 0.0;
  double Z1_finite_nonneg = 0.0;  // column maximum over n >= 0 and the lambda column only
  double Z2 = 0.0;
};

namespace shear_detail {
// J times a sparse vector given as (slot, value) pairs.
inline std::vector<ChebSeq> apply_J(const ApproxInverse& a, const std::vector<std::pair<std::size_t, ChebSeq>>& v,
                                    const ChebSeq& like) {
  std::vector<std::vector<MidRad>> mv;
  for (const auto& [slot, u] : v) mv.push_back(to_midrad(u));
  std::vector<ChebSeq> out;
  out.reserve(a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) {
    ChebProductSum acc(0);
    for (std::size_t c = 0; c < v.size(); ++c) {
      const auto& j = a.at(i, v[c].first);
      if (j.empty()) continue;
      acc.add(j.data(), j.size() - 1, mv[c].data(), v[c].second.degree(), true);
    }
    out.push_back(acc.result(like));
  }
  return out;
}

inline Interval inv_two_sigma2_n2(const Interval& sigma, int n) {
  return Interval(1.0) / (Interval(2.0) * sqr(sigma) * sqr(Interval(static_cast<double>(n))));
}
}  // namespace shear_detail

inline double bound_Y(const EigPairFamily& x, const ApproxInverse& a, const ShearSystem& s, double inflate = 1.0) {
  const int N = x.fbar.N;
  const FpValue F = eval_Fp(x.fbar, x.lambdabar, x.fbar, s);
  std::vector<std::pair<std::size_t, ChebSeq>> v;
  for (int n = -N; n <= N; ++n) v.emplace_back(a.slot(n), F.g.at(n));
  v.emplace_back(a.lambda_slot(), F.mu);
  double y = 0.0;
  for (const auto& r : shear_detail::apply_J(a, v, s.p)) y = rounding::add_up(y, r.norm());
  for (int n : {-(N + 1), N + 1})
    y = rounding::add_up(y, rounding::mul_up(F.g.at(n).norm(), shear_detail::inv_two_sigma2_n2(s.sigma, n).hi()));
  return rounding::mul_up(y, inflate);
}

// Norm of B_p(e_m, 0) for |m| <= N + 1.
inline double z1_column(const EigPairFamily& x, const ApproxInverse& a, const ShearSystem& s, int m) {
  const int N = x.fbar.N;
  std::vector<std::pair<int, ChebSeq>> comps;  // Fourier row -> value of F'(Xbar) e_m
  comps.emplace_back(m - 1, lp_row(s, m - 1).up);
  comps.emplace_back(m, lp_row(s, m).diag - x.lambdabar);
  comps.emplace_back(m + 1, lp_row(s, m + 1).dn);
  std::vector<std::pair<std::size_t, ChebSeq>> fin;
  for (const auto& [n, u] : comps)
    if (std::abs(n) <= N) fin.emplace_back(a.slot(n), u);
  if (std::abs(m) <= N) fin.emplace_back(a.lambda_slot(), x.fbar.at(m).conj());

  double col = 0.0;
  const std::vector<ChebSeq> r = shear_detail::apply_J(a, fin, s.p);
  for (std::size_t i = 0; i < a.dim; ++i) {
    ChebSeq bi = -r[i];
    if (std::abs(m) <= N && i == a.slot(m)) bi = bi + ComplexInterval(1.0);
    col = rounding::add_up(col, bi.norm());
  }
  for (const auto& [n, u] : comps) {
    if (std::abs(n) <= N) continue;
    ChebSeq bn = shear_detail::inv_two_sigma2_n2(s.sigma, n) * u;
    if (n == m) bn = bn + ComplexInterval(1.0);
    col = rounding::add_up(col, bn.norm());
  }
  return col;
}

// Norm of B_p(0, 1).
inline double z1_lambda_column(const EigPairFamily& x, const ApproxInverse& a, const ShearSystem& s) {
  const int N = x.fbar.N;
  std::vector<std::pair<std::size_t, ChebSeq>> fin;
  for (int n = -N; n <= N; ++n)
    if (x.fbar.at(n).degree() > 0 || x.fbar.at(n)[0].mag() > 0.0) fin.emplace_back(a.slot(n), -x.fbar.at(n));
  const std::vector<ChebSeq> r = shear_detail::apply_J(a, fin, s.p);
  double col = 0.0;
  for (std::size_t i = 0; i < a.dim; ++i) {
    ChebSeq bi = -r[i];
    if (i == a.lambda_slot()) bi = bi + ComplexInterval(1.0);
    col = rounding::add_up(col, bi.norm());
  }
  return col;
}

inline double z1_tail(const EigPairFamily& x, const ShearSystem& s, int N) {
  const Interval n1(static_cast<double>(N + 1)), n2(static_cast<double>(N + 2));
  const Interval bm(s.b.mag());
  const Interval ap_l((s.alpha * s.p + x.lambdabar).norm());
  const Interval pn(s.p.norm());
  const Interval t = (ap_l + bm * n2) / sqr(n2) + bm * (Interval(2.0) * n2 + pn) / (Interval(2.0) * sqr(n1));
  return (t / (Interval(2.0) * sqr(s.sigma))).hi();
}

inline double bound_Z2(const ApproxInverse& a, const ShearSystem& s) {
  const double tail = shear_detail::inv_two_sigma2_n2(s.sigma, a.N + 1).hi();
  return std::max(a.norm(s.p), tail);
}

inline NKBounds compute_bounds(const EigPairFamily& x, const ApproxInverse& a, const ShearSystem& s,
                               double y_inflate = 1.0) {
  NKBounds b;
  const int N = x.fbar.N;
  b.Y = bound_Y(x, a, s, y_inflate);
  const double lam_col = z1_lambda_column(x, a, s);
  b.Z1_finite = lam_col;
  b.Z1_finite_nonneg = lam_col;
  for (int m = -(N + 1); m <= N + 1; ++m) {
    const double c = z1_column(x, a, s, m);
    b.Z1_finite = std::max(b.Z1_finite, c);
    if (m >= 0) b.Z1_finite_nonneg = std::max(b.Z1_finite_nonneg, c);
  }
  b.Z1_tail = z1_tail(x, s, N);
  b.Z1 = std::max(b.Z1_finite, b.Z1_tail);
  b.Z2 = bound_Z2(a, s);
  return b;
}

inline double bound_Z1(const EigPairFamily& x, const ApproxInverse& a, const ShearSystem& s) {
  return compute_bounds(x, a, s).Z1;
}

// ---- certificate ----

struct NKCertificate {
  NKBounds bounds;
  double r_min = 0.0, r_max = 0.0, r = 0.0;
  int N = 0;
  std::size_t K = 0;
  double eta = 1.0, p_lo = 0.0, p_hi = 0.0;
  ShearParams params;
  bool real = false;
  bool is_positive = false;
};

class ContractionFailed : public VerificationError {
 public:
  ContractionFailed(const std::string& what, NKBounds b) : VerificationError(what), bounds(b) {}
  NKBounds bounds;
};

// Radius from the contraction conditions Z1 < 1 and 2 Y Z2 < (1 - Z1)^2:
// r is an upper bound of r_min = 2Y / ((1 - Z1) + sqrt((1 - Z1)^2 - 2 Y Z2))
// at which Z2 r^2 / 2 - (1 - Z1) r + Y <= 0 is checked directly.
inline void radii_from_bounds(const NKBounds& b, NKCertificate& c) {
  if (!(b.Z1 < 1.0)) throw ContractionFailed("NK: Z1 >= 1 (Z1 = " + std::to_string(b.Z1) + ")", b);
  const Interval Y(b.Y), Z1(b.Z1), Z2(b.Z2);
  const Interval one_minus = Interval(1.0) - Z1;
  const Interval disc = sqr(one_minus) - Interval(2.0) * Y * Z2;
  if (!(disc.lo() > 0.0))
    throw ContractionFailed("NK: 2 Y Z2 >= (1 - Z1)^2 (Y = " + std::to_string(b.Y) + ", Z2 = " + std::to_string(b.Z2) + ")",
                            b);
  const Interval rmin = Interval(2.0) * Y / (one_minus + sqrt(disc));
  c.r_min = rmin.hi();
  c.r_max = (one_minus / Z2).lo();
  double r = c.r_min;
  for (int it = 0; it < 64; ++it) {
    const Interval ri(r);
    const Interval q = Z2 * sqr(ri) / Interval(2.0) - one_minus * ri + Y;
    if (q.hi() <= 0.0) break;
    r = rounding::next_up(r) + r * 1e-15;
  }
  const Interval ri(r);
  if (!((Z2 * sqr(ri) / Interval(2.0) - one_minus * ri + Y).hi() <= 0.0) || !(r < c.r_max))
    throw ContractionFailed("NK: no admissible radius", b);
  c.r = r;
}

struct NKOptions {
  double y_inflate = 1.0;  // > 1 artificially inflates Y (test hook)
};

inline NKCertificate nk_validate(const EigPairFamily& x, const ShearSystem& s, const ApproxInverse& a,
                                 const NKOptions& opt = {}) {
  NKCertificate c;
  c.bounds = compute_bounds(x, a, s, opt.y_inflate);
  radii_from_bounds(c.bounds, c);
  c.N = x.fbar.N;
  c.K = std::max(x.fbar.degree(), x.lambdabar.degree());
  c.eta = s.p.eta();
  c.p_lo = s.p.p_lo();
  c.p_hi = s.p.p_hi();
  c.params = {s.alpha, s.b, s.sigma, s.p.degree() == 0 ? s.p[0].re() : Interval(c.p_lo, c.p_hi)};
  c.real = x.real;
  return c;
}

inline NKCertificate nk_validate(const EigPairApprox& xbar, const ShearParams& prm, const NKOptions& opt = {}) {
  const ShearSystem s = ShearSystem::at(prm);
  const EigPairFamily x = to_family(xbar, s);
  return nk_validate(x, s, build_A(x, s), opt);
}

// ---- positivity ----

namespace shear_detail {
// Real trigonometric polynomial t(phi) = c_0 + 2 sum_{n>=1} Re(c_n e^{i n phi})
// with interval coefficients, evaluated in floating point at a double phi
// with an a posteriori error bound (libm cos/sin trusted to one ulp, as in
// the interval elementary functions).
struct TrigPoly {
  std::vector<std::complex<double>> mid;
  double coeff_rad = 0.0;  // bound on |t - t_mid| from coefficient radii
  double lip = 0.0;        // bound on |t'|

  explicit TrigPoly(const std::vector<ComplexInterval>& c) {
    for (std::size_t n = 0; n < c.size(); ++n) {
      mid.push_back(c[n].mid());
      const double w = n == 0 ? 1.0 : 2.0;
      coeff_rad = rounding::add_up(coeff_rad, rounding::mul_up(w, rounding::add_up(c[n].re().rad(), c[n].im().rad())));
      const double m = c[n].mag();
      lip = rounding::add_up(lip, rounding::mul_up(2.0 * static_cast<double>(n), m));
    }
  }

  // Enclosure of t(phi) for the given double phi.
  Interval at(double phi) const {
    const double u = 0x1p-53;
    const std::size_t N = mid.size() - 1;
    double s = mid[0].real(), bound = 0.0, abs_sum = std::fabs(mid[0].real());
    for (std::size_t n = 1; n <= N; ++n) {
      const double a = static_cast<double>(n) * phi;
      const double t = 2.0 * (mid[n].real() * std::cos(a) - mid[n].imag() * std::sin(a));
      s += t;
      const double cn = std::fabs(mid[n].real()) + std::fabs(mid[n].imag());
      abs_sum += 2.0 * cn;
      // argument rounding |a| u plus four ulps of libm error
      bound += 2.0 * cn * (std::fabs(a) * u + 4.0 * u);
    }
    const double g = midrad_detail::gamma_up(static_cast<double>(4 * N + 8));
    double err = rounding::add_up(rounding::mul_up(bound, 1.0 + 1e-10), rounding::mul_up(rounding::mul_up(g, abs_sum), 1.0 + 1e-10));
    err = rounding::add_up(err, coeff_rad);
    err = rounding::add_up(err, 0x1p-1000);
    return Interval::around(s, err);
  }
};

// Certifies inf over phi of A(phi) - h |B(phi)| - slack > 0 for trig
// polynomials A, B (B may be empty), by adaptive bisection in phi with the
// Lipschitz bound of A + h|B|. Returns false when a midpoint value already
// violates the bound or the budget runs out.
inline bool trig_lower_bound_exceeds(const TrigPoly& A, const TrigPoly* B, double h, double slack,
                                     int max_pieces = 1 << 20) {
  const double lip = B ? rounding::add_up(A.lip, rounding::mul_up(h, B->lip)) : A.lip;
  auto value = [&](double phi) {
    Interval v = A.at(phi);
    if (B) v = v - Interval(h) * Interval(0.0, B->at(phi).mag());
    return v - Interval(slack);
  };
  const double two_pi = rounding::mul_up(2.0, detail::kPiHi);
  std::vector<std::pair<double, double>> stack;
  const int init = 64;
  for (int i = 0; i < init; ++i) stack.emplace_back(two_pi * i / init, two_pi * (i + 1) / init);
  stack.back().second = two_pi;
  int pieces = 0;
  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    if (++pieces > max_pieces) return false;
    const double m = 0.5 * (lo + hi);
    const double hphi = std::max(rounding::sub_up(hi, m), rounding::sub_up(m, lo));
    const Interval v = value(m);
    if (rounding::sub_down(v.lo(), rounding::mul_up(lip, hphi)) > 0.0) continue;
    if (v.hi() <= 0.0) return false;
    if (!(lo < m && m < hi)) return false;
    stack.emplace_back(lo, m);
    stack.emplace_back(m, hi);
  }
  return true;
}

inline std::vector<ComplexInterval> nonnegative_half(const FourierSeq& f) {
  std::vector<ComplexInterval> c;
  for (int n = 0; n <= f.N; ++n) c.push_back(f.at(n));
  return c;
}
}  // namespace shear_detail

// inf fbar - r > 0 certified, for a real-flagged fixed-p sequence.
inline bool check_positivity(const FourierSeq& fbar, double r) {
  if (!fbar.real) throw UsageError("check_positivity: sequence is not real-flagged");
  const shear_detail::TrigPoly A(shear_detail::nonnegative_half(fbar));
  return shear_detail::trig_lower_bound_exceeds(A, nullptr, 0.0, r);
}

// Uniform positivity over the p domain. On a piece |x - x_c| <= h of the
// unit variable, f(x, phi) >= f(x_c, phi) - h |d_x f(x_c, phi)| - h^2 M2 / 2
// with M2 bounding |d_x^2 f| through |T_k''| <= k^2 (k^2 - 1) / 3.
inline bool check_positivity(const FourierChebSeq& fbar, double r, int max_depth = 16) {
  if (!fbar.real) throw UsageError("check_positivity: family is not real-flagged");
  const ChebSeq& any = fbar.at(0);
  if (any.p_lo() == any.p_hi() || fbar.degree() == 0) return check_positivity(to_fourier(fbar), r);
  std::vector<ChebSeq> d1;
  double m2 = 0.0;
  for (int n = 0; n <= fbar.N; ++n) {
    const ChebSeq& u = fbar.at(n);
    d1.push_back(u.derivative_unit());
    double s = 0.0;
    for (std::size_t k = 2; k <= u.degree(); ++k) {
      const Interval kk(static_cast<double>(k));
      s = rounding::add_up(s, (Interval(2.0 * u[k].mag()) * sqr(kk) * (sqr(kk) - Interval(1.0)) / Interval(3.0)).hi());
    }
    m2 = rounding::add_up(m2, rounding::mul_up(n == 0 ? 1.0 : 2.0, s));
  }
  std::vector<std::pair<double, double>> stack;  // (x_c, h)
  const int init = 16;
  for (int i = 0; i < init; ++i) stack.emplace_back(-1.0 + (2.0 * i + 1.0) / init, 1.0 / init);
  while (!stack.empty()) {
    const auto [xc, h] = stack.back();
    stack.pop_back();
    std::vector<ComplexInterval> a, b;
    for (int n = 0; n <= fbar.N; ++n) {
      a.push_back(fbar.at(n).eval_unit(Interval(xc)));
      b.push_back(d1[static_cast<std::size_t>(n)].eval_unit(Interval(xc)));
    }
    const shear_detail::TrigPoly A(a), B(b);
    const double slack = rounding::add_up(r, rounding::mul_up(0.5, rounding::mul_up(rounding::mul_up(h, h), m2)));
    if (shear_detail::trig_lower_bound_exceeds(A, &B, h, slack)) continue;
    if (h < std::ldexp(1.0, -max_depth)) return false;
    stack.emplace_back(xc - 0.5 * h, 0.5 * h);
    stack.emplace_back(xc + 0.5 * h, 0.5 * h);
  }
  return true;
}

struct ShearPointOptions {
  int N = 60;
  int N_max = 480;
};

struct ShearPointResult {
  MomentLyapunovEnclosure enclosure;
  NKCertificate certificate;
  EigPairApprox approx;
};

// Lambda(p) in [lambdabar - r, lambdabar + r] once the validated
// eigenfunction is shown to be positive.
inline ShearPointResult moment_lyapunov_shear_point_detailed(const ShearParams& prm, const ShearPointOptions& opt = {}) {
  prm.validate();
  std::string last;
  for (int N = opt.N; N <= opt.N_max; N *= 2) {
    try {
      ShearPointResult res;
      res.approx = newton_approx_eigenpair(prm, N);
      res.certificate = nk_validate(res.approx, prm);
      if (!res.certificate.real) throw VerificationError("shear: approximate eigenpair is not real");
      res.certificate.is_positive = check_positivity(res.approx.fbar, res.certificate.r);
      if (!res.certificate.is_positive)
        throw PositivityFailed("shear: validated eigenfunction not certified positive");
      res.enclosure = {prm.p, Interval::around(res.approx.lambdabar.real(), res.certificate.r)};
      return res;
    } catch (const PositivityFailed&) {
      throw;
    } catch (const ApproxFailure& e) {
      last = e.what();
    } catch (const VerificationError& e) {
      last = e.what();
    }
  }
  throw VerificationError("shear point validation failed up to N = " + std::to_string(opt.N_max) + ": " + last);
}

inline MomentLyapunovEnclosure moment_lyapunov_shear_point(const ShearParams& prm, const ShearPointOptions& opt = {}) {
  return moment_lyapunov_shear_point_detailed(prm, opt).enclosure;
}

}  // namespace lyapcert
