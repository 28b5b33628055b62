#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lyapcert/rate/rate.hpp"

using namespace lyapcert;

namespace {

ShearParams sp(double alpha, double b) { return {Interval(alpha), Interval(b), Interval(1.0), Interval(0.0)}; }

// Exact interval extensions of small convex test functions.
LambdaEvaluator quadratic(double a, double c) {  // a p^2 + c p
  return [=](const Interval& p) { return Interval(a) * sqr(p) + Interval(c) * p; };
}

std::vector<EvidencePoint> evidence(const LambdaEvaluator& f, const std::vector<double>& ps) {
  std::vector<EvidencePoint> ev;
  for (double p : ps) ev.push_back({Interval(p), f(Interval(p))});
  return ev;
}

}  // namespace

// ---- minimizer bracket and I(0) ----

TEST(BracketMinimizer, QuadraticStub) {
  const LambdaEvaluator f = quadratic(1.0, -1.0);
  const MinimizerBracket b = bracket_minimizer(f, {-1.0, 0.0, 0.3, 0.9, 2.0}, {1e-6, 200});
  EXPECT_TRUE(b.bracket.contains(0.5));
  EXPECT_LE(b.bracket.width(), 1e-4);
  const Interval I = rate_at_zero(f, b.bracket, b.evidence);
  EXPECT_TRUE(I.contains(0.25));
  EXPECT_LE(I.width(), 1e-7);  // naive extension of p^2 - p over 64 subintervals
}

TEST(BracketMinimizer, AffineHasNoInteriorMinimum) {
  const LambdaEvaluator f = quadratic(0.0, -1.0);
  try {
    bracket_minimizer(f, {-1.0, 0.0, 1.0, 2.0});
    FAIL() << "expected NoInteriorMinimum";
  } catch (const NoInteriorMinimum& e) {
    EXPECT_DOUBLE_EQ(e.rate_lower_bound(), 2.0);
    EXPECT_EQ(e.evidence.size(), 4u);
  }
  EXPECT_THROW(bracket_minimizer(f, {0.0, 1.0}), UsageError);
}

TEST(BracketMinimizer, ExtendsPastTheLastSeed) {
  const LambdaEvaluator f = quadratic(1.0, -20.0);  // minimum at 10
  EXPECT_THROW(bracket_minimizer(f, {0.0, 1.0, 2.0}), NoInteriorMinimum);
  BracketOptions o;
  o.extend_limit = 64.0;
  EXPECT_TRUE(bracket_minimizer(f, {0.0, 1.0, 2.0}, o).bracket.contains(10.0));
  o.extend_limit = 8.0;
  EXPECT_THROW(bracket_minimizer(f, {0.0, 1.0, 2.0}, o), NoInteriorMinimum);
}

TEST(BracketMinimizer, WideEnclosuresStopRefinementSoundly) {
  const LambdaEvaluator f = [](const Interval& p) { return sqr(p - Interval(0.4)) + Interval(-1e-3, 1e-3); };
  const MinimizerBracket b = bracket_minimizer(f, {-1.0, 0.4, 2.0}, {1e-9, 200});
  EXPECT_TRUE(b.bracket.contains(0.4));
  EXPECT_GT(b.bracket.width(), 1e-3);  // blocked by the 2e-3 enclosure width
}

TEST(RateAtZero, NonnegativeAndPositive) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ua(0.1, 3.0), uc(-2.0, -0.1);
  for (int i = 0; i < 20; ++i) {
    const double a = ua(rng), c = uc(rng);
    const LambdaEvaluator f = quadratic(a, c);
    const MinimizerBracket b = bracket_minimizer(f, {-0.5, -c / (2 * a), 4.0});
    const Interval I = rate_at_zero(f, b.bracket, b.evidence);
    EXPECT_GT(I.lo(), 0.0);
    const double exact = c * c / (4 * a);
    EXPECT_LE(I.lo(), exact * (1 + 1e-15)) << a << " " << c;
    EXPECT_GE(I.hi(), exact * (1 - 1e-15)) << a << " " << c;
  }
}

// ---- Legendre-Fenchel ----

TEST(LegendreFenchel, QuadraticSandwich) {
  const LambdaEvaluator f = quadratic(1.0, 0.0);
  const auto ev = evidence(f, {-3, -2, -1, 0, 0.5, 1, 1.5, 2, 3});
  const LegendreFenchelBounds lf = legendre_fenchel_at(ev, 2.0);
  EXPECT_LE(lf.lower, 1.0);
  EXPECT_GE(lf.upper, 1.0);
  EXPECT_LE(lf.upper - lf.lower, 0.25 + 1e-12);  // chord gap at spacing 0.5 and 1
  EXPECT_TRUE(std::isinf(legendre_fenchel_at(ev, 7.0).upper));
  EXPECT_THROW(legendre_fenchel_at({ev[0]}, 0.0), UsageError);
}

TEST(LegendreFenchel, VanishesAtTheLyapunovExponent) {
  const LambdaEvaluator f = quadratic(0.5, -0.35);  // Lambda'(0) = -0.35
  const LegendreFenchelBounds lf = legendre_fenchel_at(evidence(f, {-2, -1, -0.25, 0, 0.25, 1, 2}), -0.35);
  EXPECT_LE(lf.lower, 0.0);
  EXPECT_GE(lf.upper, 0.0);
  EXPECT_LE(lf.upper, 0.05);
}

TEST(LegendreFenchel, SandwichOnRandomConvexFunctions) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ur(-1.5, 1.5), us(0.2, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double s = us(rng), r = ur(rng);
    const LambdaEvaluator f = [s](const Interval& p) { return exp(Interval(s) * p) - Interval(1.0) - p; };
    std::vector<double> ps;
    for (int k = -6; k <= 6; ++k) ps.push_back(0.5 * k / s);
    const LegendreFenchelBounds lf = legendre_fenchel_at(evidence(f, ps), r);
    // exact: sup_p (r + 1) p - e^{s p} + 1
    const double q = (r + 1) / s;
    const double exact = q > 0 ? q * std::log(q) - q + 1 : (q == 0 ? 1.0 : std::nan(""));
    if (std::isfinite(lf.upper)) EXPECT_LE(lf.lower, lf.upper);
    if (std::isfinite(exact)) {
      EXPECT_LE(lf.lower, exact + 1e-12);
      if (std::isfinite(lf.upper)) EXPECT_GE(lf.upper, exact - 1e-12);
    }
  }
}

// ---- gamma ----

TEST(Gamma, UsageErrors) {
  const LambdaEvaluator f = quadratic(1.0, 0.0);
  EXPECT_THROW(gamma_fn(f, Interval(-0.1, 0.1)), UsageError);
  EXPECT_THROW(gamma_fn(f, Interval(0.0)), UsageError);
  EXPECT_TRUE(gamma_fn(f, Interval(3.0)).contains(3.0));
}

TEST(Gamma, DecoupledShearIsConstant) {
  ContinuationOptions opt;
  opt.N = 12;
  opt.K = 8;
  const ContinuationCertificate c = extended_nk_validate(sp(0.7, 0.0), -1.0, 1.0, opt);
  const LambdaEvaluator f = certified_evaluator(c);
  for (double p : {-0.9, -0.2, 0.4, 1.0}) EXPECT_TRUE(gamma_fn(f, Interval(p)).contains(-0.7)) << p;
  EXPECT_TRUE(gamma_fn(f, Interval(0.0), &c).contains(-0.7));
  EXPECT_THROW(shear_rate(c), BracketFailure);
}

class ShearReference : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { cert_ = new ContinuationCertificate(extended_nk_validate_escalating(sp(1, 5), -4.0, 6.0)); }
  static void TearDownTestSuite() {
    delete cert_;
    cert_ = nullptr;
  }
  static ContinuationCertificate* cert_;
};
ContinuationCertificate* ShearReference::cert_ = nullptr;

TEST_F(ShearReference, RateValue) {
  const RateResult r = shear_rate(*cert_);
  EXPECT_TRUE(r.I0.intersects(Interval(0.0947750, 0.0947753)));
  EXPECT_GT(r.I0.lo(), 0.0);
  EXPECT_TRUE(r.minimizer_bracket.contains(0.5411425));
}

TEST_F(ShearReference, GammaMonotoneAndLimit) {
  const LambdaEvaluator f = certified_evaluator(*cert_);
  EXPECT_LE(gamma_fn(f, Interval(-2.0)).hi(), gamma_fn(f, Interval(2.0)).lo());
  EXPECT_TRUE(gamma_fn(f, Interval(0.0), cert_).intersects(Interval(-0.35231598, -0.35231594)));
}

TEST_F(ShearReference, LegendreFenchelAtLyapunovExponent) {
  const LambdaEvaluator f = certified_evaluator(*cert_);
  const double lam = lambda_derivatives_at(*cert_, Interval(0.0)).dlambda.mid();
  const LegendreFenchelBounds lf = legendre_fenchel_at(evidence(f, {-2, -1, -0.5, -0.1, 0, 0.1, 0.5, 1, 2}), lam);
  EXPECT_LE(lf.lower, 1e-12);
  EXPECT_GE(lf.upper, 0.0);
}

TEST_F(ShearReference, ChordInequalityOnEvidence) {
  const LambdaEvaluator f = certified_evaluator(*cert_);
  std::vector<EvidencePoint> ev = evidence(f, {-4, -3, -1.5, -0.5, 0, 0.5, 1, 2, 3.5, 5, 6});
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j)
      for (std::size_t k = j + 1; k < ev.size(); ++k) {
        const Interval t = (ev[j].p - ev[i].p) / (ev[k].p - ev[i].p);
        const Interval chord = (Interval(1.0) - t) * ev[i].lambda + t * ev[k].lambda;
        EXPECT_LE(ev[j].lambda.lo(), chord.hi());
      }
}
