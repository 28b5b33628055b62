#pragma once

// Non-rigorous cross-checks: Euler-Maruyama FTLE samples for both models,
// Furstenberg-Khasminskii quadratures, and empirical moment Lyapunov
// exponents. Nothing here feeds a certificate.

#include <Eigen/Dense>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lyapcert/core/errors.hpp"
#include "lyapcert/core/parallel.hpp"
#include "lyapcert/oracle/philox.hpp"

namespace lyapcert {

struct FtleSample {
  double t = 0.0;
  std::vector<double> values;
  std::string model;
  std::vector<std::pair<std::string, double>> params;
  std::uint64_t seed = 0;
  double dt = 0.0;
};

struct SampleStats {
  double mean = 0.0, variance = 0.0, se = 0.0;
};

// Pairwise summation keeps the reduction independent of scheduling.
inline double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

inline SampleStats stats(const std::vector<double>& v) {
  SampleStats s;
  const std::size_t n = v.size();
  if (n == 0) return s;
  s.mean = pairwise_sum(v.data(), n) / static_cast<double>(n);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = (v[i] - s.mean) * (v[i] - s.mean);
  s.variance = n > 1 ? pairwise_sum(d.data(), n) / static_cast<double>(n - 1) : 0.0;
  s.se = std::sqrt(s.variance / static_cast<double>(n));
  return s;
}

// Euler-Maruyama has weak order one; its bias at practical dt exceeds the
// Monte-Carlo error of 1e5 paths. With additive noise the Heun
// predictor-corrector has weak order two, and the time integral is then
// taken by the trapezoidal rule.
enum class Scheme { heun, euler_maruyama };

struct SimulationOptions {
  Scheme scheme = Scheme::heun;
  double burn_in = 10.0;     // simulated before accumulating, to start near stationarity
  std::optional<double> x0;  // initial state (position or angle); default 0
  std::size_t workers = 0;   // 0: LYAPCERT_WORKERS or hardware
};

namespace oracle_detail {
inline void check_steps(double t, double dt) {
  if (!(t > 0.0) || !(dt > 0.0) || dt > t / 100.0) throw UsageError("simulation: need 0 < dt <= t / 100");
}

// Paths split into fixed chunks so the parallel map and the per-path
// streams do not depend on the worker count.
template <class PathFn>
std::vector<double> run_paths(std::size_t count, std::size_t workers, PathFn path) {
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  const auto parts = parallel_map(
      chunks,
      [&](std::size_t c) {
        std::vector<double> out;
        for (std::size_t i = c * kChunk; i < std::min(count, (c + 1) * kChunk); ++i) out.push_back(path(i));
        return out;
      },
      workers);
  std::vector<double> v;
  v.reserve(count);
  for (const auto& p : parts) v.insert(v.end(), p.begin(), p.end());
  return v;
}

// (1/t) int_0^t q(X) for dX = a(X) dt + s dW with additive noise; `sub`
// gives the number of substeps (sharing the increment) a state needs.
template <class Drift, class Obs, class Sub>
std::vector<double> ftle_paths(Drift a, Obs q, Sub sub, double s, double t, std::size_t count, double dt,
                               std::uint64_t seed, const SimulationOptions& opt) {
  check_steps(t, dt);
  const auto steps = static_cast<std::size_t>(std::llround(t / dt));
  const auto burn = static_cast<std::size_t>(std::llround(opt.burn_in / dt));
  const double sq = s * std::sqrt(dt);
  const bool heun = opt.scheme == Scheme::heun;
  auto step = [&](double x, double w) {
    const int m = sub(x);
    const double h = dt / m, wm = w / m;
    for (int j = 0; j < m; ++j) {
      const double ax = a(x);
      if (heun) {
        const double pred = x + ax * h + wm;
        x += 0.5 * (ax + a(pred)) * h + wm;
      } else {
        x += ax * h + wm;
      }
    }
    return x;
  };
  return run_paths(count, opt.workers, [&](std::size_t i) {
    NormalStream rng(seed, i);
    double x = opt.x0.value_or(0.0);
    for (std::size_t k = 0; k < burn; ++k) x = step(x, sq * rng.next());
    double acc = 0.0, qx = q(x);
    for (std::size_t k = 0; k < steps; ++k) {
      x = step(x, sq * rng.next());
      const double qn = q(x);
      acc += heun ? 0.5 * (qx + qn) : qx;
      qx = qn;
    }
    return acc * dt / t;
  });
}
}  // namespace oracle_detail

// dX = (alpha X - X^3) dt + sigma dW; lambda_t = (1/t) int (alpha - 3 X^2).
// A step whose drift is too stiff for dt is split into substeps sharing the
// Brownian increment.
inline FtleSample simulate_ftle_pitchfork(double alpha, double sigma, double t, std::size_t count, double dt,
                                          std::uint64_t seed, const SimulationOptions& opt = {}) {
  FtleSample s{t, {}, "pitchfork", {{"alpha", alpha}, {"sigma", sigma}}, seed, dt};
  s.values = oracle_detail::ftle_paths([alpha](double x) { return alpha * x - x * x * x; },
                                       [alpha](double x) { return alpha - 3.0 * x * x; },
                                       [&](double x) {
                                         const double stiff = dt * (3.0 * x * x + std::fabs(alpha));
                                         return stiff <= 0.5 ? 1 : static_cast<int>(std::ceil(stiff / 0.5));
                                       },
                                       sigma, t, count, dt, seed, opt);
  return s;
}

// dphi = b cos^2(phi) dt - sigma dW (additive noise, so Ito and
// Stratonovich agree); lambda_t = (1/t) int (-alpha + b cos phi sin phi).
inline FtleSample simulate_ftle_shear(double alpha, double b, double sigma, double t, std::size_t count, double dt,
                                      std::uint64_t seed, const SimulationOptions& opt = {}) {
  FtleSample s{t, {}, "shear", {{"alpha", alpha}, {"b", b}, {"sigma", sigma}}, seed, dt};
  s.values = oracle_detail::ftle_paths(
      [b](double phi) {
        const double c = std::cos(phi);
        return b * c * c;
      },
      [alpha, b](double phi) { return -alpha + b * std::cos(phi) * std::sin(phi); }, [](double) { return 1; },
      -sigma, t, count, dt, seed, opt);
  return s;
}

struct OracleValue {
  double value = 0.0;
  double err_est = 0.0;
};

// lambda(alpha) = int (alpha - 3x^2) rho(x) dx with
// rho ~ exp((2 / sigma^2)(alpha x^2 / 2 - x^4 / 4)), truncated where rho < 1e-300.
inline OracleValue fk_lambda_pitchfork(double alpha, double sigma) {
  if (!(sigma > 0.0)) throw UsageError("fk_lambda_pitchfork: sigma must be positive");
  const double k = 2.0 / (sigma * sigma);
  auto expo = [&](double x) { return k * (alpha * x * x / 2.0 - x * x * x * x / 4.0); };
  const double emax = alpha > 0.0 ? expo(std::sqrt(alpha)) : 0.0;
  const double cut = std::log(1e300);
  double L = 1.0;
  while (expo(L) - emax > -cut) L *= 1.25;
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  double ez = 0.0, en = 0.0;
  const double z = GK::integrate([&](double x) { return std::exp(expo(x) - emax); }, -L, L, 15, 1e-15, &ez);
  const double num = GK::integrate(
      [&](double x) { return (alpha - 3.0 * x * x) * std::exp(expo(x) - emax); }, -L, L, 15, 1e-15, &en);
  const double v = num / z;
  return {v, std::fabs(en / z) + std::fabs(v * ez / z)};
}

namespace oracle_detail {
// Fourier coefficients eta_n, |n| <= N, of the stationary density of
// dphi = b cos^2 phi dt - sigma dW on the circle, normalised to int eta = 1.
inline Eigen::VectorXcd shear_stationary(double b, double sigma, int N) {
  const int d = 2 * N + 1;
  const std::complex<double> I(0.0, 1.0);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d);
  for (int n = -N; n <= N; ++n) {
    const int i = n + N;
    if (n == 0) {
      m(i, i) = 1.0;
      rhs(i) = 1.0 / (2.0 * std::numbers::pi);
      continue;
    }
    // -d/dphi (b cos^2 phi eta) + (sigma^2 / 2) eta''
    const std::complex<double> c = -I * static_cast<double>(n) * b;
    m(i, i) = c * 0.5 - 0.5 * sigma * sigma * n * n;
    if (n - 2 >= -N) m(i, i - 2) = c * 0.25;
    if (n + 2 <= N) m(i, i + 2) = c * 0.25;
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
  if (!lu.isInvertible()) throw OracleFailure("fk_lambda_shear: singular Fokker-Planck system");
  return lu.solve(rhs);
}

inline double shear_lambda_from(const Eigen::VectorXcd& eta, double alpha, double b, int N) {
  // int sin(2 phi) eta = 2 pi (eta_{-2} - eta_2) / (2 i)
  const std::complex<double> s = 2.0 * std::numbers::pi * (eta(N - 2) - eta(N + 2)) / std::complex<double>(0.0, 2.0);
  return -alpha + 0.5 * b * s.real();
}
}  // namespace oracle_detail

// lambda = int q0 eta with q0 = -alpha + b cos phi sin phi; the error estimate
// is the change from half the truncation.
inline OracleValue fk_lambda_shear(double alpha, double b, double sigma, int N = 256) {
  if (!(sigma > 0.0)) throw UsageError("fk_lambda_shear: sigma must be positive");
  if (N < 8) throw UsageError("fk_lambda_shear: N must be at least 8");
  const double v = oracle_detail::shear_lambda_from(oracle_detail::shear_stationary(b, sigma, N), alpha, b, N);
  const double h = oracle_detail::shear_lambda_from(oracle_detail::shear_stationary(b, sigma, N / 2), alpha, b, N / 2);
  if (!std::isfinite(v)) throw OracleFailure("fk_lambda_shear: non-finite result");
  return {v, std::fabs(v - h)};
}

struct MleEstimate {
  double estimate = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;
};

namespace oracle_detail {
inline double log_mean_exp(const std::vector<double>& e) {
  const double m = *std::max_element(e.begin(), e.end());
  if (!std::isfinite(m)) throw OracleFailure("empirical_mle: non-finite exponent");
  std::vector<double> w(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) w[i] = std::exp(e[i] - m);
  const double s = pairwise_sum(w.data(), w.size());
  if (!(s > 0.0) || !std::isfinite(s)) throw OracleFailure("empirical_mle: degenerate weights");
  return m + std::log(s / static_cast<double>(e.size()));
}
}  // namespace oracle_detail

// (1/t) log mean exp(p t lambda_t) with a percentile bootstrap interval.
// Heavy-tailed for large |p| t; advisory only.
inline MleEstimate empirical_mle(const FtleSample& s, double p, double level = 0.99, std::size_t resamples = 1000) {
  if (s.values.empty()) throw OracleFailure("empirical_mle: empty sample");
  if (p == 0.0) return {0.0, 0.0, 0.0};
  std::vector<double> e(s.values.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = p * s.t * s.values[i];
  MleEstimate out;
  out.estimate = oracle_detail::log_mean_exp(e) / s.t;
  NormalStream rng(s.seed ^ 0xB0075784ull, 0xFFFFFFFFull);
  std::vector<double> boot(resamples), pick(e.size());
  for (std::size_t r = 0; r < resamples; ++r) {
    for (auto& v : pick) v = e[rng.uniform_index(e.size())];
    boot[r] = oracle_detail::log_mean_exp(pick) / s.t;
  }
  std::sort(boot.begin(), boot.end());
  const double a = 0.5 * (1.0 - level);
  auto q = [&](double f) {
    const auto i = static_cast<std::size_t>(std::clamp(f * static_cast<double>(resamples - 1), 0.0, static_cast<double>(resamples - 1)));
    return boot[i];
  };
  out.ci_lo = std::min(q(a), out.estimate);
  out.ci_hi = std::max(q(1.0 - a), out.estimate);
  return out;
}

}  // namespace lyapcert
