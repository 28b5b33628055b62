#pragma once

#include <string>
#include <vector>

#include "lyapcert/core/enclosure.hpp"
#include "lyapcert/pitchfork/bounds.hpp"

namespace lyapcert {

struct StepPolicy {
  int max_stages = 60;
  int max_bisections = 40;
  // Each intermediate stage spends one eigenvalue index on the next nu, so
  // the run starts with M + 1 + extra_levels indices.
  std::size_t extra_levels = 6;
  std::size_t basis_size = 0;  // 0: 4(M+1) + 40
  double beta = 0.0;           // 0: chosen by choose_basis_scale
};

struct HomotopyStage {
  Interval s;
  EigenEnclosure enclosure;
  Interval nu_used;  // lower bound for index enclosure.size() at this s
  Interval nu_next;  // lower bound for index enclosure.size() - 1
};

struct HomotopyRun {
  QuadraticLowerBound base;
  double beta = 0.0;
  std::size_t basis_size = 0;
  std::vector<HomotopyStage> stages;

  const EigenEnclosure& final_enclosure() const { return stages.back().enclosure; }
};

// Eigenvalues of -k d^2/dx^2 + a x^2 + b: (m + 1/2) 2 sqrt(k a) + b.
inline std::vector<Interval> base_eigenvalues_for(const SchrodingerOperator& op, const QuadraticLowerBound& q,
                                                  std::size_t count) {
  const Interval sigma_equiv = sqrt(Interval(2.0) * op.kinetic);
  return base_eigenvalues(q.a, q.b, sigma_equiv, count);
}

// H^(s) = (1 - s) H^(0) + s H with H^(0) = -k d^2/dx^2 + a x^2 + b.
inline SchrodingerOperator stage_operator(const SchrodingerOperator& target, const QuadraticLowerBound& q, double s) {
  const Interval si(s), one_minus = Interval(1.0) - si;
  SchrodingerOperator op;
  op.kinetic = target.kinetic;
  op.potential = one_minus * Polynomial({q.b, Interval(0.0), q.a}) + si * target.potential;
  op.tilt = target.tilt;
  op.tilt_coef = si * target.tilt_coef;
  return op;
}

inline HomotopyRun run_homotopy(const SchrodingerOperator& target, std::size_t M, const StepPolicy& policy = {}) {
  const std::size_t levels = M + 1 + policy.extra_levels;
  HomotopyRun run;
  run.basis_size = policy.basis_size ? policy.basis_size : 4 * (M + 1) + 40;
  run.basis_size = std::max(run.basis_size, levels + 8);

  const Polynomial vfull = target.full_potential();
  const double a = propose_base_quadratic(vfull, sqrt(Interval(2.0) * target.kinetic), levels);
  run.base = certify_quadratic_lower_bound(vfull, a);

  SchrodingerOperator target_mid = target;
  target_mid.tilt_coef = Interval(target.tilt_coef.mid());
  run.beta = policy.beta > 0.0 ? policy.beta : choose_basis_scale(target_mid, levels, run.basis_size);

  const std::vector<Interval> base = base_eigenvalues_for(target, run.base, levels + 1);
  HomotopyStage s0;
  s0.s = Interval(0.0);
  for (std::size_t m = 0; m < levels; ++m) {
    s0.enclosure.lowers.push_back(base[m].lo());
    s0.enclosure.uppers.push_back(base[m].hi());
  }
  s0.nu_used = Interval(base[levels].lo());
  s0.nu_next = Interval(base[levels - 1].lo());
  run.stages.push_back(s0);

  double s_cur = 0.0;
  double nu = base[levels].lo();
  std::size_t count = levels;
  while (s_cur < 1.0) {
    if (static_cast<int>(run.stages.size()) > policy.max_stages)
      throw HomotopyStalled("homotopy: stage cap reached at s = " + std::to_string(s_cur));
    double s_try = 1.0;
    bool accepted = false;
    for (int attempt = 0; attempt <= policy.max_bisections && !accepted; ++attempt) {
      const bool final_step = s_try == 1.0;
      // The last admissible intermediate stage must leave M + 1 indices.
      if (!final_step && count <= M + 1) break;
      const SchrodingerOperator op = stage_operator(target, run.base, s_try);
      const RitzBasis rb = galerkin_ritz(op, run.beta, run.basis_size);
      if (rb.values(count - 1) < nu) {
        try {
          const PencilMatrices pm = assemble_matrices(op, ritz_trials(rb, run.beta, count), true);
          const EigenEnclosure rr = rayleigh_ritz_upper(pm);
          if (rr.uppers[count - 1] < nu) {
            const EigenEnclosure lm = lehmann_maehly_lower(pm, Interval(nu), &rr);
            HomotopyStage st;
            st.s = Interval(s_try);
            st.enclosure.lowers = lm.lowers;
            st.enclosure.uppers = rr.uppers;
            for (std::size_t m = 0; m < count; ++m)
              if (st.enclosure.lowers[m] > st.enclosure.uppers[m])
                throw VerificationError("homotopy: inconsistent enclosure (lower above upper)");
            st.nu_used = Interval(nu);
            st.nu_next = Interval(lm.lowers[count - 1]);
            run.stages.push_back(st);
            accepted = true;
            break;
          }
        } catch (const VerificationError&) {
        }
      }
      s_try = s_cur + 0.5 * (s_try - s_cur);
    }
    if (!accepted)
      throw HomotopyStalled("homotopy: no admissible step from s = " + std::to_string(s_cur) + " with " +
                            std::to_string(count) + " tracked eigenvalues (increase M or extra levels)");
    s_cur = run.stages.back().s.lo();
    if (s_cur < 1.0) {
      nu = run.stages.back().nu_next.lo();
      --count;
    }
  }
  return run;
}

struct PitchforkOptions {
  std::size_t M = 0;  // 0: 12 for point p, 16 for interval p
  StepPolicy policy;
};

inline HomotopyRun run_homotopy(const PitchforkParams& prm, std::size_t M, const StepPolicy& policy = {}) {
  return run_homotopy(pitchfork_operator(prm), M, policy);
}

// Lambda(p) = -lambda_0(H_p).
inline MomentLyapunovEnclosure moment_lyapunov_pitchfork(const PitchforkParams& prm, const PitchforkOptions& opt = {}) {
  const std::size_t M = opt.M ? opt.M : (prm.p.is_point() ? 12 : 16);
  const HomotopyRun run = run_homotopy(prm, M, opt.policy);
  const Interval l0 = run.final_enclosure().at(0);
  return {prm.p, -l0};
}

}  // namespace lyapcert
