#include <gtest/gtest.h>
#include <mpfr.h>

#include <random>

#include "lyapcert/core/interval.hpp"
#include "lyapcert/core/linalg.hpp"
#include "oracles/mp_eigen.hpp"

using lyapcert::Interval;

namespace {

// Thin RAII wrapper so the oracle code below stays readable.
struct Mp {
  mpfr_t v;
  explicit Mp(mpfr_prec_t prec = 256) { mpfr_init2(v, prec); }
  ~Mp() { mpfr_clear(v); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
};

bool mp_in(const Interval& x, const Mp& m) {
  return mpfr_cmp_d(m.v, x.lo()) >= 0 && mpfr_cmp_d(m.v, x.hi()) <= 0;
}

double ulp(double x) { return std::nextafter(std::fabs(x), INFINITY) - std::fabs(x); }

}  // namespace

TEST(IntervalArith, TrivialCases) {
  EXPECT_TRUE((Interval(1, 2) + Interval(3, 4)).contains(Interval(4, 6)));
  EXPECT_TRUE((Interval(-1, 2) * Interval(3, 4)).contains(Interval(-4, 8)));
  EXPECT_TRUE(Interval(-1, 2) * Interval(3, 4) == Interval(-4, 8));
  EXPECT_THROW(Interval(1) / Interval(-1, 1), lyapcert::DomainError);
  EXPECT_THROW(Interval(2, 1), lyapcert::DomainError);
}

TEST(IntervalArith, OneThirdAgainstRationalOracle) {
  const Interval q = Interval(1) / Interval(3);
  Mp third;
  mpfr_set_ui(third.v, 1, MPFR_RNDN);
  mpfr_div_ui(third.v, third.v, 3, MPFR_RNDN);
  EXPECT_TRUE(mp_in(q, third));
  EXPECT_LE(q.hi() - q.lo(), 2 * ulp(1.0 / 3.0));
}

TEST(IntervalElem, TrivialCases) {
  EXPECT_TRUE(sqrt(Interval(4, 9)).contains(Interval(2, 3)));
  const Interval s = sin(Interval(0.0, lyapcert::pi_interval().hi()));
  EXPECT_TRUE(s.contains(Interval(0, 1)));
  EXPECT_GE(s.hi(), 1.0);
  const Interval e = exp(Interval(0.0));
  EXPECT_EQ(e.lo(), 1.0);
  EXPECT_EQ(e.hi(), 1.0);
  EXPECT_THROW(log(Interval(-1, 1)), lyapcert::DomainError);
  EXPECT_THROW(sqrt(Interval(-2, -1)), lyapcert::DomainError);
  EXPECT_TRUE(pow(Interval(-2, 1), 2) == Interval(0, 4));
  EXPECT_TRUE(pow(Interval(-2, 1), 3).contains(Interval(-8, 1)));
  EXPECT_TRUE(abs(Interval(-3, 1)) == Interval(0, 3));
  EXPECT_TRUE(cos(Interval(-0.1, 0.1)).contains(1.0));
  EXPECT_LE(cos(Interval(3.0, 3.3)).lo(), -1.0);
}

TEST(IntervalProperty, PointSoundnessAgainstMpfr) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> ex(-40, 40);
  auto draw = [&] { return std::ldexp(mant(rng), ex(rng)); };
  Mp a, b, r;
  for (int trial = 0; trial < 10000; ++trial) {
    const double x = draw(), y = draw();
    const Interval X(x), Y(y);
    mpfr_set_d(a.v, x, MPFR_RNDN);
    mpfr_set_d(b.v, y, MPFR_RNDN);
    mpfr_add(r.v, a.v, b.v, MPFR_RNDN);
    ASSERT_TRUE(mp_in(X + Y, r)) << x << " + " << y;
    mpfr_sub(r.v, a.v, b.v, MPFR_RNDN);
    ASSERT_TRUE(mp_in(X - Y, r));
    mpfr_mul(r.v, a.v, b.v, MPFR_RNDN);
    ASSERT_TRUE(mp_in(X * Y, r));
    if (y != 0.0) {
      mpfr_div(r.v, a.v, b.v, MPFR_RNDN);
      ASSERT_TRUE(mp_in(X / Y, r)) << x << " / " << y;
    }
    const double ax = std::fabs(x);
    mpfr_set_d(a.v, ax, MPFR_RNDN);
    mpfr_sqrt(r.v, a.v, MPFR_RNDN);
    ASSERT_TRUE(mp_in(sqrt(Interval(ax)), r));
    if (ax > 0) {
      mpfr_log(r.v, a.v, MPFR_RNDN);
      ASSERT_TRUE(mp_in(log(Interval(ax)), r));
    }
    const double sx = x * 50.0;
    mpfr_set_d(a.v, sx, MPFR_RNDN);
    mpfr_sin(r.v, a.v, MPFR_RNDN);
    ASSERT_TRUE(mp_in(sin(Interval(sx)), r)) << sx;
    mpfr_cos(r.v, a.v, MPFR_RNDN);
    ASSERT_TRUE(mp_in(cos(Interval(sx)), r)) << sx;
    const double ex_arg = std::clamp(x, -700.0, 700.0);
    mpfr_set_d(a.v, ex_arg, MPFR_RNDN);
    mpfr_exp(r.v, a.v, MPFR_RNDN);
    ASSERT_TRUE(mp_in(exp(Interval(ex_arg)), r));
  }
}

TEST(IntervalProperty, ContainmentMonotonicity) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0), w(0.0, 0.5);
  for (int trial = 0; trial < 10000; ++trial) {
    const double a = u(rng), b = u(rng);
    const Interval x(a, a + w(rng)), y(b, b + w(rng));
    const Interval xo(x.lo() - w(rng), x.hi() + w(rng)), yo(y.lo() - w(rng), y.hi() + w(rng));
    ASSERT_TRUE((xo + yo).contains(x + y));
    ASSERT_TRUE((xo - yo).contains(x - y));
    ASSERT_TRUE((xo * yo).contains(x * y));
    if (!yo.contains(0.0)) {
      ASSERT_TRUE((xo / yo).contains(x / y));
    }
    ASSERT_TRUE(sin(xo).contains(sin(x)));
    ASSERT_TRUE(cos(xo).contains(cos(x)));
    ASSERT_TRUE(exp(xo).contains(exp(x)));
    ASSERT_TRUE(sqr(xo).contains(sqr(x)));
    ASSERT_TRUE(pow(xo, 3).contains(pow(x, 3)));
    ASSERT_TRUE(abs(xo).contains(abs(x)));
    if (xo.lo() > 0) {
      ASSERT_TRUE(log(xo).contains(log(x)));
      ASSERT_TRUE(sqrt(xo).contains(sqrt(x)));
    }
  }
}

TEST(IntervalProperty, SinCosInteriorExtrema) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-20.0, 20.0), w(0.0, 4.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double a = u(rng);
    const Interval x(a, a + w(rng));
    const Interval s = sin(x), c = cos(x);
    for (int k = 0; k <= 200; ++k) {
      const double t = std::min(x.hi(), x.lo() + (x.hi() - x.lo()) * k / 200.0);
      ASSERT_TRUE(s.contains(std::sin(t)));
      ASSERT_TRUE(c.contains(std::cos(t)));
    }
  }
}

TEST(IntervalElem, AcosAgainstMpfr) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mp a, r;
  for (int trial = 0; trial < 5000; ++trial) {
    double lo = u(rng), hi = u(rng);
    if (trial % 10 == 0) lo = -1.0;
    if (trial % 10 == 1) hi = 1.0;
    if (lo > hi) std::swap(lo, hi);
    const Interval y = acos(Interval(lo, hi));
    for (double x : {lo, hi}) {
      mpfr_set_d(a.v, x, MPFR_RNDN);
      mpfr_acos(r.v, a.v, MPFR_RNDN);
      ASSERT_TRUE(mp_in(y, r)) << x;
    }
    // tightness up to the conditioning of acos at the endpoints
    auto slack = [](double v) { return 8 * (ulp(std::acos(v)) + 2.3e-16 / std::sqrt(std::max(1e-32, 1 - v * v))); };
    EXPECT_LE(y.width(), std::acos(lo) - std::acos(hi) + slack(lo) + slack(hi));
  }
  EXPECT_TRUE(acos(Interval(0.0)).contains(1.5707963267948966));
  EXPECT_THROW(acos(Interval(0.5, 1.0 + 1e-15)), lyapcert::DomainError);
}

TEST(Decimal, OutwardRoundedConstruction) {
  const Interval p = Interval::from_decimal("0.71646");
  EXPECT_LT(p.lo(), p.hi());
  EXPECT_EQ(std::nextafter(p.lo(), 1.0), p.hi());
  const Interval one = Interval::from_decimal("1");
  EXPECT_TRUE(one.is_point());
  EXPECT_EQ(Interval::from_decimal("-2.5e-1").lo(), -0.25);
  EXPECT_TRUE(Interval::from_decimal("-0.1").contains(Interval::from_decimal("-0.1")));
  EXPECT_LT(Interval::from_decimal("-0.1").lo(), Interval::from_decimal("-0.1").hi());
  EXPECT_THROW(Interval::from_decimal("1..2"), lyapcert::DomainError);
  EXPECT_THROW(Interval::from_decimal("abc"), lyapcert::DomainError);
  EXPECT_THROW(Interval::from_decimal("1e"), lyapcert::DomainError);
  EXPECT_THROW(Interval::from_decimal("1e999"), lyapcert::DomainError);
}

TEST(Decimal, ContainsExactValueAgainstMpfr) {
  const char* lits[] = {"0.71646", "0.71648", "1.227", "0.1", "3.14159265358979323846264", "-7.5e-3", "1e-300",
                        "123456789012345678901234567890"};
  for (const char* s : lits) {
    Mp m(2000);
    mpfr_set_str(m.v, s, 10, MPFR_RNDN);
    const Interval x = Interval::from_decimal(s);
    EXPECT_TRUE(mp_in(x, m)) << s;
    EXPECT_LE(x.hi(), std::nextafter(x.lo(), INFINITY)) << s;
  }
}

TEST(Decimal, DirectedFormatting) {
  const double x = 0.1;
  const std::string dn = lyapcert::decimal::format_directed(x, false);
  const std::string up = lyapcert::decimal::format_directed(x, true);
  Mp a(2000), b(2000);
  mpfr_set_str(a.v, dn.c_str(), 10, MPFR_RNDN);
  mpfr_set_str(b.v, up.c_str(), 10, MPFR_RNDN);
  EXPECT_LE(mpfr_cmp_d(a.v, x), 0);
  EXPECT_GE(mpfr_cmp_d(b.v, x), 0);
}

// ---------------------------------------------------------------------------

using lyapcert::IntervalMatrix;

TEST(Gevp, DiagonalAndIdentity) {
  IntervalMatrix a1(2, 2, Interval(0.0)), a0 = IntervalMatrix::identity(2);
  a1(0, 0) = 1.0;
  a1(1, 1) = 2.0;
  const auto e = lyapcert::verified_sym_gevp(a1, a0, 2);
  EXPECT_TRUE(e.at(0).contains(1.0));
  EXPECT_TRUE(e.at(1).contains(2.0));

  IntervalMatrix s(3, 3);
  const double v[3][3] = {{4, 1, 0.5}, {1, 3, 0.2}, {0.5, 0.2, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s(i, j) = v[i][j];
  // A1 = A0: a triple eigenvalue 1.
  const auto c = lyapcert::verified_sym_gevp(s, s, 3);
  for (int k = 0; k < 3; ++k) {
    EXPECT_TRUE(c.at(k).contains(1.0));
    EXPECT_TRUE(c.clustered[k]);
  }
}

TEST(Gevp, NotPositiveDefinite) {
  IntervalMatrix a1 = IntervalMatrix::identity(2), a0 = IntervalMatrix::identity(2);
  a0(1, 1) = -1.0;
  EXPECT_THROW(lyapcert::verified_sym_gevp(a1, a0, 2), lyapcert::VerificationError);
}

TEST(Gevp, RandomPencilsAgainstExtendedPrecision) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial < 20 ? 6 : 8;
    Eigen::MatrixXd b(n, n), c(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        b(i, j) = g(rng);
        c(i, j) = g(rng);
      }
    const Eigen::MatrixXd m1 = b + b.transpose();
    const Eigen::MatrixXd m0 = c * c.transpose() + n * Eigen::MatrixXd::Identity(n, n);
    const auto oracle = lyapcert::oracles::pencil_eigenvalues(m1, m0);
    const auto e = lyapcert::verified_sym_gevp(lyapcert::to_interval(m1), lyapcert::to_interval(m0), n);
    for (int k = 0; k < n; ++k) {
      ASSERT_TRUE(e.at(k).contains(oracle[k])) << "trial " << trial << " index " << k;
      ASSERT_LT(e.at(k).width(), 1e-10);
    }
  }
}

TEST(Gevp, IntervalEntriesContainEveryPointPencil) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 5;
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = g(rng);
  const Eigen::MatrixXd m1 = b + b.transpose();
  const double r = 1e-6;
  IntervalMatrix a1(n, n), a0 = IntervalMatrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a1(i, j) = Interval::around(m1(i, j), r);
  const auto e = lyapcert::verified_sym_gevp(a1, a0, n);
  for (int sample = 0; sample < 50; ++sample) {
    Eigen::MatrixXd p = m1;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) p(i, j) = p(j, i) = m1(i, j) + r * u(rng);
    const auto oracle = lyapcert::oracles::pencil_eigenvalues(p, Eigen::MatrixXd::Identity(n, n));
    for (int k = 0; k < n; ++k) ASSERT_TRUE(e.at(k).contains(oracle[k]));
  }
}

TEST(LinearSolve, Cases) {
  IntervalMatrix id = IntervalMatrix::identity(3);
  const auto x = lyapcert::verified_linear_solve(id, {Interval(1.0), Interval(0.0), Interval(0.0)});
  EXPECT_TRUE(x[0].contains(1.0) && x[1].contains(0.0) && x[2].contains(0.0));

  // Hilbert matrix [[1,1/2],[1/2,1/3]] with b = (1,1): exact solution (-2, 6).
  IntervalMatrix h(2, 2);
  h(0, 0) = 1.0;
  h(0, 1) = h(1, 0) = 0.5;
  h(1, 1) = Interval(1) / Interval(3);
  const auto y = lyapcert::verified_linear_solve(h, {Interval(1.0), Interval(1.0)});
  EXPECT_TRUE(y[0].contains(-2.0));
  EXPECT_TRUE(y[1].contains(6.0));
  EXPECT_LT(y[1].width(), 1e-12);

  IntervalMatrix sing(2, 2, Interval(1.0));
  EXPECT_THROW(lyapcert::verified_linear_solve(sing, {Interval(1.0), Interval(1.0)}), lyapcert::VerificationError);
}

TEST(OpNorm, Cases) {
  std::vector<double> w3(3, 1.0), w1(1, 1.0), w2(2, 1.0);
  EXPECT_TRUE(lyapcert::weighted_l1_opnorm(IntervalMatrix::identity(3), w3, w3).contains(Interval(1.0)));
  IntervalMatrix col(2, 1, Interval(1.0));
  EXPECT_TRUE(lyapcert::weighted_l1_opnorm(col, w2, w1).contains(2.0));

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  IntervalMatrix j(5, 5);
  std::vector<double> wi(5), wo(5);
  for (int i = 0; i < 5; ++i) {
    wi[i] = 1.0 + i;
    wo[i] = std::pow(1.1, i);
    for (int k = 0; k < 5; ++k) j(i, k) = g(rng);
  }
  // Brute force: image of each unit vector e_k / wi[k].
  double best = 0.0;
  for (int k = 0; k < 5; ++k) {
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += wo[i] * std::fabs(j(i, k).mid());
    best = std::max(best, s / wi[k]);
  }
  EXPECT_TRUE(lyapcert::weighted_l1_opnorm(j, wo, wi).contains(best));
}
