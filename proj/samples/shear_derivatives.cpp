// Validates the shear eigenpair family over p in [-4, 6] and prints the
// certified Lambda'(0) (the Lyapunov exponent), Lambda''(0) (the asymptotic
// variance) and I(0), with a short Monte-Carlo comparison.
//
//   shear_derivatives [b]

#include <cstdio>
#include <cstdlib>

#include "lyapcert/oracle/oracle.hpp"
#include "lyapcert/rate/rate.hpp"

int main(int argc, char** argv) {
  using namespace lyapcert;
  const double b = argc > 1 ? std::atof(argv[1]) : 5.0;
  try {
    const ShearParams prm{Interval(1.0), Interval(b), Interval(1.0), Interval(0.0)};
    const ContinuationCertificate cert = extended_nk_validate_escalating(prm, -4.0, 6.0);
    const LambdaDerivatives d = lambda_derivatives_at(cert, Interval(0.0));
    std::printf("NK radius        %.3e (N = %d, K = %zu)\n", cert.r, cert.nk.N, cert.nk.K);
    std::printf("Lambda'(0)  in [%.10f, %.10f]\n", d.dlambda.lo(), d.dlambda.hi());
    std::printf("Lambda''(0) in [%.10f, %.10f]\n", d.d2lambda.lo(), d.d2lambda.hi());
    try {
      const RateResult r = shear_rate(cert);
      std::printf("I(0)        in [%.10f, %.10f]\n", r.I0.lo(), r.I0.hi());
    } catch (const BracketFailure& e) {
      std::printf("I(0): %s\n", e.what());
    }
    const SampleStats s = stats(simulate_ftle_shear(1.0, b, 1.0, 50.0, 20000, 0.02, 7).values);
    std::printf("Monte-Carlo mean FTLE at t = 50: %.5f +- %.5f\n", s.mean, s.se);
  } catch (const Error& e) {
    std::fprintf(stderr, "verification failed: %s\n", e.what());
    return 2;
  }
}
