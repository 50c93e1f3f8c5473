#pragma once

#include "qsched/qsr.hpp"
#include "qsched/scheduling.hpp"

#include <string>
#include <vector>

namespace qsched {

// Everything the two composition paths compute on the way to the composed
// triple.  Per-subsystem vectors are always filled; the scalar aggregates
// belong to one path each (see compose_theorem1 / compose_theorem2).
struct CompositionReport {
  int theorem = 0;  // 1 or 2
  QsrTriple composed;

  // per subsystem
  Vec eps_i;        // -lambda_max(Q_i)
  Vec lam_max_r;    // lambda_max(R_i)
  Vec delta_i;      // path-dependent input coefficient, see below
  Vec sigma_bar_u;  // sup_t sigma_max(phi_u_i)
  Vec sigma_bar_y;
  Vec nu_bar_u;     // inf_t sigma_min(phi_u_i), 0 if any stamp is singular
  Vec sigma_s;      // sigma_max(S_i)
  std::vector<int> r_pos, r_neg, r_zero;  // sign partition of lambda_max(R_i)

  // independent-S path
  double eps_min = 0.0;
  Mat s_bar;              // sum_i (sigma_bar_y_i^2 / eps_i) S_i
  double nu_s_bar = 0.0;  // smallest singular value of s_bar
  double r_coeff = 0.0;   // composed R = r_coeff * I

  // common-S path
  double sigma_bar_psi = 0.0;  // sup_t sigma_max([phi_y_1 ... phi_y_N])
  double eps = 0.0;            // eps_min / sigma_bar_psi^2
  double delta_max = 0.0;      // max of delta_i over r_pos
  double delta_min = 0.0;      // min of delta_i over r_neg
  double sup_sum_pos = 0.0;    // sup_t sum_{i in r_pos} sigma_max(phi_u_i)^2
  double inf_sum_neg = 0.0;    // inf_t sum_{i in r_neg} nu_u_i(t)^2
  double delta = 0.0;          // delta_max*sup_sum_pos - delta_min*inf_sum_neg
  std::string delta_sign;      // guaranteed sign class: "positive",
                               // "nonnegative", "negative", "nonpositive",
                               // "zero", or "indeterminate"

  SpecialCase label;  // classify(composed), or the closed-form case from
                      // compose_special
};

// Composition with subsystem-specific S_i.  Preconditions: Q_i strictly
// negative definite (eps_i >= 1e-12), every family pseudo-commutes with its
// S_i.  Composed triple:
//   Q = -eps_min I,
//   S = eps_min * sum_i (sigma_bar_y_i^2 / eps_i) S_i,
//   R = (N * sum_i (delta_i + sigma_bar_y_i^4 sigma_s_i^2 / eps_i)
//        - eps_min * nu_s_bar^2) I,
// where delta_i folds the input-side envelopes of R_i:
//   lambda_max(R_i) > 0:  delta_i = lambda_max(R_i) sigma_bar_y_i^2 sigma_bar_u_i^2
//   lambda_max(R_i) <= 0: delta_i = lambda_max(R_i) sigma_bar_y_i^2 nu_bar_u_i^2.
CompositionReport compose_theorem1(const std::vector<QsrTriple>& subs,
                                   const std::vector<SchedulingFamily>& fams);

// Composition with one shared S.  Preconditions: Q_i <= 0, all S_i equal,
// output side active at every stamp, every family pseudo-commutes with S.
// Composed triple: Q = -eps I with eps = eps_min / sigma_bar_psi^2, S kept,
// R = delta I with delta_i = |lambda_max(R_i)| and
//   delta = delta_max * sup_sum_pos - delta_min * inf_sum_neg
// (a sign-indeterminate delta is reported as such, never clamped; an empty
// sign class contributes zero).
CompositionReport compose_theorem2(const std::vector<QsrTriple>& subs,
                                   const std::vector<SchedulingFamily>& fams);

// Closed-form composition for a bank sharing one named supply-rate family,
// each subsystem square of size n.  Kinds Passive, ISP, OSP, VSP,
// FiniteL2Gain ride the common-S path; Conic rides the independent-S path.
// The returned label carries the composed parameters; for FiniteL2Gain the
// triple is rescaled to unit output weight so the label reads as a plain
// gain bound.
CompositionReport compose_special(Kind kind, const std::vector<SpecialCase>& params,
                                  const std::vector<SchedulingFamily>& fams, int n);

// Discrete dissipation test on trapezoid prefix integrals of the supply
// rate.  The final prefix must reach (vT - v0) - tol; interior prefixes are
// held to (0 - v0) - tol, the bound a nonnegative storage guarantees there.
bool verify_dissipation(const QsrTriple& t, const SampledSignal& u,
                        const SampledSignal& y, double v0, double vT, double tol);

}  // namespace qsched
