// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance --only 1,4 run a subset
//
// Exit status is 0 iff every selected criterion passed.

#include <mpfr.h>

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lyapcert/core/linalg.hpp"
#include "lyapcert/oracle/oracle.hpp"
#include "lyapcert/rate/rate.hpp"
#include "oracles/mp_eigen.hpp"

using namespace lyapcert;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

std::string iv(const Interval& x) {
  char b[96];
  std::snprintf(b, sizeof b, "[%.12g, %.12g]", x.lo(), x.hi());
  return b;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

PitchforkParams pf(double alpha, double p) { return {Interval(alpha), Interval(1.0), Interval(p)}; }
ShearParams sh(double alpha, double b, double p = 0.0) { return {Interval(alpha), Interval(b), Interval(1.0), Interval(p)}; }

double distance(const Interval& x, double v) { return x.contains(v) ? 0.0 : std::min(std::fabs(x.lo() - v), std::fabs(x.hi() - v)); }

// ---- 1. pitchfork point enclosures ----
void criterion1(Outcome& o) {
  const double ps[3] = {0.71646, 0.71647, 0.71648};
  const Interval paper[3] = {Interval(-0.45526876421, -0.45526876419), Interval(-0.45526876425, -0.45526876422),
                             Interval(-0.45526876419, -0.45526876416)};
  for (int i = 0; i < 3; ++i) {
    Stopwatch w;
    const Interval l = moment_lyapunov_pitchfork(pf(1.0, ps[i])).lambda;
    const double t = w.seconds();
    o.detail << " L(" << ps[i] << ")=" << iv(l) << " w=" << l.width() << " t=" << t << "s;";
    o.check(l.intersects(paper[i]), "misses paper interval");
    o.check(l.width() <= 1e-8, "width");
    o.check(t <= 120.0, "runtime");
  }
}

// ---- 2. pitchfork rate value ----
void criterion2(Outcome& o) {
  Stopwatch w;
  const RateResult r = pitchfork_rate(Interval(1.0), Interval(1.0));
  const double t = w.seconds();
  o.detail << " I(0)=" << iv(r.I0) << " bracket=" << iv(r.minimizer_bracket) << " t=" << t << "s";
  o.check(r.I0.intersects(Interval(0.4551, 0.4553)), "misses paper interval");
  o.check(r.I0.width() <= 5e-4, "width");
  o.check(Interval(0.71645, 0.71649).contains(r.minimizer_bracket), "bracket");
  o.check(t <= 600.0, "runtime");
}

// ---- 3. pitchfork minimum ----
void criterion3(Outcome& o) {
  Stopwatch w;
  const double as[3] = {1.225, 1.227, 1.229};
  const Interval paper[3] = {Interval(0.43605413, 0.43605513), Interval(0.43605254, 0.43605354),
                             Interval(0.43605359, 0.43605460)};
  Interval I[3];
  for (int i = 0; i < 3; ++i) {
    I[i] = pitchfork_rate(Interval::from_decimal(std::to_string(as[i]).substr(0, 5)), Interval(1.0)).I0;
    o.detail << " I_" << as[i] << "=" << iv(I[i]) << ";";
    o.check(I[i].intersects(paper[i]), "misses paper interval");
    o.check(I[i].width() <= 5e-6, "width");
  }
  const bool minimum = I[1].hi() < I[0].lo() && I[1].hi() < I[2].lo();
  o.detail << " strict_minimum=" << (minimum ? "certified" : "not certified") << " t=" << w.seconds() << "s";
  o.check(minimum, "strict inequality");
  o.check(w.seconds() <= 1800.0, "runtime");
}

// ---- 4. shear continuation ----
void criterion4(Outcome& o) {
  Stopwatch w;
  const ContinuationCertificate c = extended_nk_validate_escalating(sh(1, 5), -4.0, 6.0);
  const LambdaDerivatives d = lambda_derivatives_at(c, Interval(0.0));
  const RateResult r = shear_rate(c);
  const double t = w.seconds();
  o.detail << " r=" << c.r << " N=" << c.nk.N << " K=" << c.nk.K << " I(0)=" << iv(r.I0) << " L'(0)=" << iv(d.dlambda)
           << " L''(0)=" << iv(d.d2lambda) << " t=" << t << "s";
  o.check(c.r <= 1e-8, "radius");
  o.check(r.I0.intersects(Interval(0.0947750, 0.0947753)), "I(0)");
  o.check(d.dlambda.intersects(Interval(-0.35231598, -0.35231594)), "Lambda'(0)");
  o.check(d.d2lambda.intersects(Interval(0.657787, 0.657789)), "Lambda''(0)");
  o.check(t <= 1200.0, "runtime");
}

// ---- 5. closed forms ----
void criterion5(Outcome& o) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ua(-2.0, 3.0), up(-4.0, 6.0);
  double worst = 0.0;
  int bad = 0;
  for (int i = 0; i < 20; ++i) {
    const double a = ua(rng), p = up(rng);
    const Interval l = moment_lyapunov_shear_point(sh(a, 0.0, p)).lambda;
    const Interval exact = Interval(-a) * Interval(p);
    worst = std::max(worst, l.width());
    if (!l.contains(exact) || l.width() > 1e-10) ++bad;
  }
  o.detail << " b=0: " << 20 - bad << "/20 worst width " << worst << ";";
  o.check(bad == 0, "b=0 closed form");
  for (double alpha : {-1.0, 0.0, 1.0, 2.0}) {
    const Interval l = moment_lyapunov_pitchfork(pf(alpha, 0.0)).lambda;
    o.detail << " pitchfork a=" << alpha << " L(0)=" << iv(l) << ";";
    o.check(l.contains(0.0) && l.width() <= 1e-8, "pitchfork p=0");
  }
  const Interval s = moment_lyapunov_shear_point(sh(1, 5)).lambda;
  o.detail << " shear L(0)=" << iv(s);
  o.check(s.contains(0.0) && s.width() <= 1e-8, "shear p=0");
}

// ---- 6. property suites ----
struct Mp {
  mpfr_t v;
  Mp() { mpfr_init2(v, 256); }
  ~Mp() { mpfr_clear(v); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
};
bool mp_in(const Interval& x, const Mp& m) { return mpfr_cmp_d(m.v, x.lo()) >= 0 && mpfr_cmp_d(m.v, x.hi()) <= 0; }

int interval_fuzz() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> mant(-1.0, 1.0), u(-3, 3), w(0, 0.5);
  std::uniform_int_distribution<int> ex(-30, 30);
  Mp a, b, r;
  int bad = 0;
  using Fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
  for (int trial = 0; trial < 10000; ++trial) {
    const double x = std::ldexp(mant(rng), ex(rng)), y = std::ldexp(mant(rng), ex(rng));
    mpfr_set_d(a.v, x, MPFR_RNDN);
    mpfr_set_d(b.v, y, MPFR_RNDN);
    mpfr_add(r.v, a.v, b.v, MPFR_RNDN), bad += !mp_in(Interval(x) + Interval(y), r);
    mpfr_sub(r.v, a.v, b.v, MPFR_RNDN), bad += !mp_in(Interval(x) - Interval(y), r);
    mpfr_mul(r.v, a.v, b.v, MPFR_RNDN), bad += !mp_in(Interval(x) * Interval(y), r);
    if (y != 0) mpfr_div(r.v, a.v, b.v, MPFR_RNDN), bad += !mp_in(Interval(x) / Interval(y), r);
    const double ax = std::fabs(x), sx = std::clamp(x, -600.0, 600.0);
    const std::pair<Fn, std::function<Interval(Interval)>> unary[] = {
        {mpfr_sqrt, [](Interval v) { return sqrt(abs(v)); }},
        {mpfr_sin, [](Interval v) { return sin(v); }},
        {mpfr_cos, [](Interval v) { return cos(v); }},
        {mpfr_exp, [](Interval v) { return exp(v); }}};
    for (const auto& [f, g] : unary) {
      const double arg = f == mpfr_sqrt ? ax : sx;
      mpfr_set_d(a.v, arg, MPFR_RNDN);
      f(r.v, a.v, MPFR_RNDN);
      bad += !mp_in(g(Interval(arg)), r);
    }
    if (ax > 0) mpfr_set_d(a.v, ax, MPFR_RNDN), mpfr_log(r.v, a.v, MPFR_RNDN), bad += !mp_in(log(Interval(ax)), r);
    // containment monotonicity
    const double c = u(rng), d = u(rng);
    const Interval X(c, c + w(rng)), Y(d, d + w(rng));
    const Interval Xo(X.lo() - w(rng), X.hi() + w(rng)), Yo(Y.lo() - w(rng), Y.hi() + w(rng));
    bad += !(Xo + Yo).contains(X + Y) + !(Xo * Yo).contains(X * Y) + !sin(Xo).contains(sin(X)) +
           !exp(Xo).contains(exp(X)) + !sqr(Xo).contains(sqr(X));
    if (!Yo.contains(0.0)) bad += !(Xo / Yo).contains(X / Y);
  }
  return bad;
}

int gevp_fuzz() {
  std::mt19937_64 rng(66);
  std::normal_distribution<double> g;
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 8;
    Eigen::MatrixXd b(n, n), c(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = g(rng), c(i, j) = g(rng);
    const Eigen::MatrixXd m1 = b + b.transpose(), m0 = c * c.transpose() + n * Eigen::MatrixXd::Identity(n, n);
    const auto oracle = oracles::pencil_eigenvalues(m1, m0);
    const auto e = verified_sym_gevp(to_interval(m1), to_interval(m0), n);
    for (int k = 0; k < n; ++k) bad += !e.at(k).contains(oracle[k]);
  }
  return bad;
}

// Rayleigh-Ritz uppers and Lehmann-Maehly lowers on every stage.
int sandwich_check(std::size_t& stages) {
  int bad = 0;
  for (const auto& prm : {pf(1.0, 0.71647), pf(1.227, 0.8), pf(-1.0, 1.5), pf(2.0, -0.5)}) {
    const HomotopyRun run = run_homotopy(prm, 12);
    for (const auto& s : run.stages) {
      ++stages;
      if (!s.enclosure.has_lowers() || !s.enclosure.has_uppers()) continue;
      for (std::size_t m = 0; m < s.enclosure.lowers.size(); ++m) bad += s.enclosure.lowers[m] > s.enclosure.uppers[m];
    }
  }
  return bad;
}

int chord_check(const std::vector<EvidencePoint>& ev, std::size_t& triples) {
  int bad = 0;
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j)
      for (std::size_t k = j + 1; k < ev.size(); ++k) {
        const Interval t = (ev[j].p - ev[i].p) / (ev[k].p - ev[i].p);
        ++triples;
        bad += ev[j].lambda.lo() > ((Interval(1.0) - t) * ev[i].lambda + t * ev[k].lambda).hi();
      }
  return bad;
}

int derivative_fuzz() {
  using mp = boost::multiprecision::cpp_bin_float_50;
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> uc(-1, 1), ux(-1, 1), ue(1.005, 1.5);
  std::uniform_int_distribution<int> ud(1, 60);
  int bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double eta = ue(rng), x = ux(rng);
    const int K = ud(rng);
    std::vector<ComplexInterval> coef;
    mp d1 = 0, d2 = 0;
    mp T0 = 1, T1 = x, D0 = 0, D1 = 1, E0 = 0, E1 = 0;  // T_k, T_k', T_k''
    for (int k = 0; k <= K; ++k) {
      const double ck = uc(rng) / std::pow(eta, 0.5 * k);
      coef.emplace_back(ck);
      const mp w = k == 0 ? mp(ck) : 2 * mp(ck);
      const mp Dk = k == 0 ? D0 : D1, Ek = k == 0 ? E0 : E1;
      d1 += w * Dk;
      d2 += w * Ek;
      if (k >= 1) {
        const mp T2 = 2 * mp(x) * T1 - T0, D2 = 2 * T1 + 2 * mp(x) * D1 - D0, E2 = 4 * D1 + 2 * mp(x) * E1 - E0;
        T0 = T1, T1 = T2, D0 = D1, D1 = D2, E0 = E1, E1 = E2;
      }
    }
    const double nrm = ChebSeq(std::move(coef), eta, -1, 1).norm();
    const DerivativeConstants c = derivative_bound_constants(eta, x, x);
    bad += abs(d1) > mp(c.C1) * mp(nrm);
    bad += abs(d2) > mp(c.C2) * mp(nrm);
  }
  return bad;
}

void criterion6(Outcome& o) {
  Stopwatch w;
  const int a = interval_fuzz();
  o.detail << " interval fuzz 1e4: " << a << " violations;";
  o.check(a == 0, "interval fuzz");
  const int b = gevp_fuzz();
  o.detail << " gevp 100x8x8: " << b << ";";
  o.check(b == 0, "gevp");
  std::size_t stages = 0;
  const int c = sandwich_check(stages);
  o.detail << " RR>=LM over " << stages << " stages: " << c << ";";
  o.check(c == 0, "sandwich");
  std::size_t triples = 0;
  int d = chord_check(pitchfork_rate(Interval(1.0), Interval(1.0)).evidence, triples);
  const ContinuationCertificate cert = extended_nk_validate_escalating(sh(1, 5), -4.0, 6.0);
  std::vector<EvidencePoint> ev;
  for (double p = -4.0; p <= 6.0; p += 0.5) ev.push_back({Interval(p), certified_evaluator(cert)(Interval(p))});
  d += chord_check(ev, triples);
  o.detail << " chord over " << triples << " triples: " << d << ";";
  o.check(d == 0, "chord");
  const int e = derivative_fuzz();
  o.detail << " derivative bounds 1e3: " << e << "; t=" << w.seconds() << "s";
  o.check(e == 0, "derivative bounds");
  o.check(w.seconds() <= 300.0, "runtime");
}

// ---- 7. oracle agreement ----
void criterion7(Outcome& o) {
  Stopwatch w;
  const ContinuationCertificate cert = extended_nk_validate_escalating(sh(1, 5), -4.0, 6.0);
  const LambdaDerivatives d = lambda_derivatives_at(cert, Interval(0.0));
  const OracleValue fk = fk_lambda_shear(1, 5, 1);
  o.detail << " FK shear " << fk.value << " dist " << distance(d.dlambda, fk.value) << ";";
  o.check(distance(d.dlambda, fk.value) <= 1e-6, "FK shear");

  const double t = 100.0, dt = 0.02;
  const std::size_t n = 100000;
  const FtleSample s = simulate_ftle_shear(1, 5, 1, t, n, dt, 1);
  const SampleStats ss = stats(s.values);
  const double zs = distance(d.dlambda, ss.mean) / ss.se;
  const double var = ss.variance * t;
  o.detail << " MC shear mean " << ss.mean << " (" << zs << " SE), t*var " << var << " vs " << d.d2lambda.mid() << ";";
  o.check(zs <= 3.0, "MC shear mean");
  o.check(std::fabs(var - d.d2lambda.mid()) <= 0.2 * d.d2lambda.mid(), "MC shear variance");

  const double fp = fk_lambda_pitchfork(1, 1).value;
  const FtleSample p = simulate_ftle_pitchfork(1, 1, t, n, dt, 1);
  const SampleStats ps = stats(p.values);
  const double zp = std::fabs(ps.mean - fp) / ps.se;
  o.detail << " MC pitchfork mean " << ps.mean << " vs FK " << fp << " (" << zp << " SE); t=" << w.seconds() << "s";
  o.check(zp <= 3.0, "MC pitchfork mean");
  o.check(w.seconds() <= 600.0, "runtime");
}

// ---- 8. figure shapes ----
std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> g;
  for (long i = 0;; ++i) {
    const double v = lo + static_cast<double>(i) * step;
    if (v > hi + 1e-12) break;
    g.push_back(std::round(v * 1e9) / 1e9);
  }
  return g;
}

void criterion8(Outcome& o) {
  Stopwatch w;
  const auto alphas = grid(-1.0, 3.0, 0.25);
  double best = -std::numeric_limits<double>::infinity(), arg = 0;
  bool negative = true;
  for (double a : alphas) {
    const double v = fk_lambda_pitchfork(a, 1).value;
    negative = negative && v < 0;
    if (v > best) best = v, arg = a;
  }
  o.detail << " fig2 argmax " << arg << (negative ? " all negative;" : " NOT all negative;");
  o.check(negative && arg >= 0.0 && arg <= 0.5, "fig2");

  // I_alpha(0) is infinite for alpha <= 0: no interior minimum of Lambda.
  double low = std::numeric_limits<double>::infinity(), amin = 0;
  int infinite = 0;
  for (double a : alphas) {
    try {
      const RateResult r = pitchfork_rate(Interval::from_decimal(std::to_string(a)), Interval(1.0));
      if (r.I0.mid() < low) low = r.I0.mid(), amin = a;
    } catch (const NoInteriorMinimum&) {
      ++infinite;
    }
  }
  o.detail << " fig1 argmin " << amin << " (" << infinite << " rows unbounded);";
  o.check(amin >= 1.0 && amin <= 1.5, "fig1");

  bool neg = false, pos = false;
  double first_pos = 0;
  for (double b : grid(0.5, 10.0, 0.5)) {
    const ContinuationCertificate c = extended_nk_validate_escalating(sh(1, b), -4.0, 6.0);
    const Interval dl = lambda_derivatives_at(c, Interval(0.0)).dlambda;
    neg = neg || dl.hi() < 0;
    if (dl.lo() > 0 && !pos) pos = true, first_pos = b;
  }
  o.detail << " fig4 sign change " << (neg && pos ? "certified, first positive at b=" + std::to_string(first_pos) : "absent")
           << "; t=" << w.seconds() << "s";
  o.check(neg && pos, "fig4");
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      for (std::string t; std::getline(ss, t, ',');) only.insert(std::stoi(t));
    } else {
      std::fprintf(stderr, "usage: acceptance [--only k[,k...]]\n");
      return 64;
    }
  }
  const std::vector<std::pair<const char*, void (*)(Outcome&)>> criteria = {
      {"pitchfork point enclosures", criterion1}, {"pitchfork rate value", criterion2},
      {"pitchfork minimum", criterion3},          {"shear continuation", criterion4},
      {"closed forms", criterion5},               {"property suites", criterion6},
      {"oracle agreement", criterion7},           {"figure shapes", criterion8}};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(k)) continue;
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [error: " << e.what() << "]";
    }
    std::printf("%s criterion %d (%s):%s\n", o.pass ? "PASS" : "FAIL", k, criteria[i].first, o.detail.str().c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
