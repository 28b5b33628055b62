#pragma once

// Rate-function quantities from certified evaluators p -> Lambda(p). All
// statements rest on the convexity of Lambda: a certified "low middle"
// triple brackets the minimizer, and chords give Legendre-Fenchel bounds.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lyapcert/continuation/continuation.hpp"
#include "lyapcert/core/parallel.hpp"
#include "lyapcert/pitchfork/homotopy.hpp"

namespace lyapcert {

using LambdaEvaluator = std::function<Interval(const Interval&)>;

struct EvidencePoint {
  Interval p;
  Interval lambda;
};

struct RateResult {
  Interval I0;
  Interval minimizer_bracket;
  std::vector<EvidencePoint> evidence;
  std::string model;
};

struct BracketOptions {
  double tol = 1e-5;  // stop once the bracket is this narrow
  int max_evaluations = 80;
  // While Lambda still decreases certifiably at the last seed, append seeds
  // with doubling spacing up to this value (0: never).
  double extend_limit = 0.0;
};

// I(0) >= max(0, max_i -Lambda(p_i)) holds without any bracket.
inline double rate_lower_bound(const std::vector<EvidencePoint>& evidence) {
  double lo = 0.0;
  for (const auto& e : evidence) lo = std::max(lo, (-e.lambda).lo());
  return lo;
}

// No certified interior minimum on the seed grid; the evaluations still
// bound I(0) from below.
class NoInteriorMinimum : public BracketFailure {
 public:
  NoInteriorMinimum(const std::string& what, std::vector<EvidencePoint> ev)
      : BracketFailure(what), evidence(std::move(ev)) {}
  std::vector<EvidencePoint> evidence;

  double rate_lower_bound() const { return lyapcert::rate_lower_bound(evidence); }
};

struct MinimizerBracket {
  Interval bracket;
  std::vector<EvidencePoint> evidence;  // all evaluations, sorted by p
};

namespace rate_detail {
inline bool below(const Interval& a, const Interval& b) { return a.hi() < b.lo(); }

inline void sort_evidence(std::vector<EvidencePoint>& ev) {
  std::sort(ev.begin(), ev.end(), [](const EvidencePoint& a, const EvidencePoint& b) { return a.p.lo() < b.p.lo(); });
}
}  // namespace rate_detail

// Lambda(p2) < min(Lambda(p1), Lambda(p3)) certified for p1 < p2 < p3
// implies the infimum of the convex Lambda is attained in [p1, p3]. The
// bracket is then shrunk golden-section style while comparisons certify.
inline MinimizerBracket bracket_minimizer(const LambdaEvaluator& eval, std::vector<double> seeds,
                                          const BracketOptions& opt = {}) {
  using rate_detail::below;
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  if (seeds.size() < 3) throw UsageError("bracket_minimizer: need at least three distinct seed points");
  MinimizerBracket out;
  const std::vector<Interval> vals = parallel_map(seeds.size(), [&](std::size_t i) { return eval(Interval(seeds[i])); });
  for (std::size_t i = 0; i < seeds.size(); ++i) out.evidence.push_back({Interval(seeds[i]), vals[i]});

  std::vector<Interval> vals_all = vals;
  std::size_t best = 0;
  for (std::size_t i = 1; i + 1 < seeds.size(); ++i) {
    if (below(vals[i], vals[i - 1]) && below(vals[i], vals[i + 1]) && (best == 0 || vals[i].hi() < vals[best].hi()))
      best = i;
  }
  while (best == 0 && seeds.back() < opt.extend_limit) {
    const std::size_t n = seeds.size();
    if (!below(vals_all[n - 1], vals_all[n - 2])) break;
    const double next = std::min(opt.extend_limit, seeds[n - 1] + 2.0 * (seeds[n - 1] - seeds[n - 2]));
    seeds.push_back(next);
    vals_all.push_back(eval(Interval(next)));
    out.evidence.push_back({Interval(next), vals_all.back()});
    if (below(vals_all[n - 1], vals_all[n - 2]) && below(vals_all[n - 1], vals_all[n])) best = n - 1;
  }
  if (best == 0) throw NoInteriorMinimum("bracket_minimizer: no certified interior minimum on the seed grid", out.evidence);

  struct Point {
    double p;
    Interval v;
  };
  Point a{seeds[best - 1], vals_all[best - 1]}, m{seeds[best], vals_all[best]}, c{seeds[best + 1], vals_all[best + 1]};
  const double g = 0.3819660112501051;  // 2 - golden ratio
  int evals = 0;
  bool blocked_left = false, blocked_right = false;
  while (c.p - a.p > opt.tol && evals < opt.max_evaluations && !(blocked_left && blocked_right)) {
    const bool go_right = blocked_left || (!blocked_right && c.p - m.p >= m.p - a.p);
    const double x = go_right ? m.p + g * (c.p - m.p) : m.p - g * (m.p - a.p);
    if (!(a.p < x && x < c.p) || x == m.p) break;
    const Point px{x, eval(Interval(x))};
    ++evals;
    out.evidence.push_back({Interval(x), px.v});
    if (go_right) {
      if (below(px.v, m.v)) {
        a = m, m = px;
      } else if (below(m.v, px.v)) {
        c = px;
      } else {
        blocked_right = true;
        continue;
      }
    } else {
      if (below(px.v, m.v)) {
        c = m, m = px;
      } else if (below(m.v, px.v)) {
        a = px;
      } else {
        blocked_left = true;
        continue;
      }
    }
    blocked_left = blocked_right = false;
  }
  out.bracket = Interval(a.p, c.p);
  rate_detail::sort_evidence(out.evidence);
  return out;
}

struct RateOptions {
  std::size_t subdivisions = 4;
  std::size_t max_subdivisions = 64;
  double target_width = 1e-9;  // no further doubling once the enclosure is this narrow
};

// I(0) = -inf Lambda with the infimum known to lie in `bracket`: the upper
// end of inf Lambda from point evaluations inside the bracket, the lower end
// from interval evaluations over a subdivision of it.
inline Interval rate_at_zero(const LambdaEvaluator& eval, const Interval& bracket,
                             const std::vector<EvidencePoint>& evidence, const RateOptions& opt = {}) {
  double upper = std::numeric_limits<double>::infinity();
  for (const auto& e : evidence)
    if (bracket.contains(e.p)) upper = std::min(upper, e.lambda.hi());
  if (!std::isfinite(upper)) upper = eval(Interval(bracket.mid())).hi();

  auto lower_over = [&](std::size_t n) {
    const std::vector<Interval> vals = parallel_map(n, [&](std::size_t i) {
      const double lo = i == 0 ? bracket.lo() : bracket.lo() + (bracket.hi() - bracket.lo()) * static_cast<double>(i) / n;
      const double hi = i + 1 == n ? bracket.hi() : bracket.lo() + (bracket.hi() - bracket.lo()) * static_cast<double>(i + 1) / n;
      return eval(Interval(lo, hi));
    });
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& v : vals) lo = std::min(lo, v.lo());
    return lo;
  };
  std::size_t n = std::max<std::size_t>(1, opt.subdivisions);
  double lower = lower_over(n);
  while (upper - lower > opt.target_width && 2 * n <= opt.max_subdivisions) {
    const double next = std::max(lower, lower_over(2 * n));
    const bool improved = (upper - next) <= 0.75 * (upper - lower);
    lower = next;
    n *= 2;
    if (!improved) break;
  }
  return Interval(-upper, -lower);
}

// Narrow [p1, p2] with Lambda'(p1) < 0 < Lambda'(p2) certified, by
// bisection on a certified derivative enclosure.
inline Interval derivative_zero_bracket(const std::function<Interval(double)>& dlambda, double a, double b,
                                        double tol = 1e-6, int max_steps = 100) {
  if (!(dlambda(a).hi() < 0.0 && dlambda(b).lo() > 0.0))
    throw BracketFailure("no certified sign change of Lambda' on the range");
  for (int i = 0; i < max_steps && b - a > tol; ++i) {
    const double m = 0.5 * (a + b);
    const Interval d = dlambda(m);
    if (d.hi() < 0.0) {
      a = m;
    } else if (d.lo() > 0.0) {
      b = m;
    } else {
      break;
    }
  }
  return Interval(a, b);
}

// ---- model evaluators ----

inline LambdaEvaluator pitchfork_evaluator(const Interval& alpha, const Interval& sigma, const PitchforkOptions& opt = {}) {
  return [=](const Interval& p) { return moment_lyapunov_pitchfork({alpha, sigma, p}, opt).lambda; };
}

// Lambda over p from a continuation certificate: lambdabar(p) +- r.
inline LambdaEvaluator certified_evaluator(const ContinuationCertificate& cert) {
  return [lam = cert.lambdabar(), r = cert.r](const Interval& p) { return lam.eval(p).re() + Interval(-r, r); };
}

inline std::vector<double> default_pitchfork_seeds() { return {0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0}; }

// For alpha > 0 the infimum is attained, possibly beyond the seeds, so the
// grid may be extended; for alpha <= 0 Lambda decreases without bound.
inline BracketOptions pitchfork_bracket_options(const Interval& alpha, BracketOptions o = {}) {
  if (alpha.lo() > 0.0 && o.extend_limit == 0.0) o.extend_limit = 64.0;
  return o;
}

inline RateResult pitchfork_rate(const Interval& alpha, const Interval& sigma, std::vector<double> seeds = {},
                                 const BracketOptions& bopt = {}, const RateOptions& ropt = {}) {
  if (seeds.empty()) seeds = default_pitchfork_seeds();
  const LambdaEvaluator eval = pitchfork_evaluator(alpha, sigma);
  const MinimizerBracket b = bracket_minimizer(eval, std::move(seeds), pitchfork_bracket_options(alpha, bopt));
  return {rate_at_zero(eval, b.bracket, b.evidence, ropt), b.bracket, b.evidence, "pitchfork"};
}

inline RateResult shear_rate(const ContinuationCertificate& cert, double tol = 1e-6, const RateOptions& ropt = {}) {
  const LambdaEvaluator eval = certified_evaluator(cert);
  auto d = [&](double p) { return lambda_derivatives_at(cert, Interval(p)).dlambda; };
  const Interval br = derivative_zero_bracket(d, cert.p_lo(), cert.p_hi(), tol);
  std::vector<EvidencePoint> ev;
  for (double p : {br.lo(), br.mid(), br.hi()}) ev.push_back({Interval(p), eval(Interval(p))});
  return {rate_at_zero(eval, br, ev, ropt), br, ev, "shear"};
}

// ---- Legendre-Fenchel bounds ----

struct LegendreFenchelBounds {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();  // +inf: no certified upper bound
};

// I(r) = sup_p (r p - Lambda(p)). The lower bound uses the evidence points
// directly. For the upper bound, convexity gives Lambda >= chord line of
// (p_k, p_{k+1}) outside [p_k, p_{k+1}]; on each gap the better of the two
// neighbouring chords bounds Lambda from below, and the outer half-lines
// need r within the extreme chord slopes.
inline LegendreFenchelBounds legendre_fenchel_at(std::vector<EvidencePoint> ev, double r) {
  if (ev.size() < 2) throw UsageError("legendre_fenchel_at: need at least two evidence points");
  rate_detail::sort_evidence(ev);
  const Interval R(r);
  LegendreFenchelBounds out;
  for (const auto& e : ev) out.lower = std::max(out.lower, (R * e.p - e.lambda).lo());

  const std::size_t n = ev.size() - 1;  // number of chords
  // lower bound of chord k evaluated at q (valid for q outside the chord)
  auto chord = [&](std::size_t k, const Interval& q) {
    const Interval h = ev[k + 1].p - ev[k].p;
    return ((ev[k + 1].p - q) / h) * ev[k].lambda + ((q - ev[k].p) / h) * ev[k + 1].lambda;
  };
  auto slope = [&](std::size_t k) { return (ev[k + 1].lambda - ev[k].lambda) / (ev[k + 1].p - ev[k].p); };
  for (std::size_t k = 0; k < n; ++k)
    if (!(ev[k].p.hi() < ev[k + 1].p.lo())) return out;
  if (!(slope(0).hi() <= r && r <= slope(n - 1).lo())) return out;

  // p <= p_0 and p >= p_n: linear in p with the right sign of slope.
  double up = std::max((R * ev[0].p - ev[0].lambda).hi(), (R * ev[n].p - ev[n].lambda).hi());
  for (std::size_t i = 0; i < n; ++i) {
    double gap = std::numeric_limits<double>::infinity();
    for (int side : {-1, 1}) {
      if ((side < 0 && i == 0) || (side > 0 && i + 1 >= n)) continue;
      const std::size_t k = side < 0 ? i - 1 : i + 1;
      double s = -std::numeric_limits<double>::infinity();
      for (const Interval& q : {ev[i].p, ev[i + 1].p}) s = std::max(s, (R * q - chord(k, q)).hi());
      gap = std::min(gap, s);
    }
    up = std::max(up, gap);
  }
  out.upper = up;
  return out;
}

// gamma(p) = Lambda(p) / p; at p = 0 the limit Lambda'(0) from a certificate.
inline Interval gamma_fn(const LambdaEvaluator& eval, const Interval& p, const ContinuationCertificate* cert = nullptr) {
  if (p == Interval(0.0)) {
    if (!cert) throw UsageError("gamma_fn: p = 0 needs a continuation certificate");
    return lambda_derivatives_at(*cert, Interval(0.0)).dlambda;
  }
  if (p.contains(0.0)) throw UsageError("gamma_fn: p straddles 0");
  return eval(p) / p;
}

}  // namespace lyapcert
