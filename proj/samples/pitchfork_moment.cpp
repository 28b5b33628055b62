// Certified moment Lyapunov exponents of dX = (alpha X - X^3) dt + sigma dW
// on a few p, next to the quadrature value of the Lyapunov exponent.
//
//   pitchfork_moment [alpha]

#include <cstdio>
#include <cstdlib>

#include "lyapcert/oracle/oracle.hpp"
#include "lyapcert/pitchfork/homotopy.hpp"

int main(int argc, char** argv) {
  using namespace lyapcert;
  const double alpha = argc > 1 ? std::atof(argv[1]) : 1.0;
  std::printf("lambda (quadrature) = %.10f\n", fk_lambda_pitchfork(alpha, 1.0).value);
  for (double p : {-0.5, 0.25, 0.5, 1.0, 2.0}) {
    const Interval l = moment_lyapunov_pitchfork({Interval(alpha), Interval(1.0), Interval(p)}).lambda;
    std::printf("Lambda(%5.2f) in [%.12f, %.12f]\n", p, l.lo(), l.hi());
  }
}
