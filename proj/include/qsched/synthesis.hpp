#pragma once

#include "qsched/certification.hpp"
#include "qsched/composition.hpp"
#include "qsched/robot.hpp"

#include <vector>

namespace qsched {

// Design weights for the regulator step, stored as the diagonal scale
// vectors w: weight matrix = diag(w)^-2.
struct LqrWeights {
  Vec state_w;  // 6
  Vec input_w;  // 2
  static LqrWeights defaults();  // (15,15,15,10,10,10) / (25,25)
};

// One certified design point.
struct Subcontroller {
  int index = 0;
  Vec q_bar;  // linearization pose, radians

  // realization  x' = a_c x + b_c u_c,  y = c_c x
  Mat a_c, b_c, c_c;

  Mat a_lin, b_lin;  // pose linearization (A, B B_hat), kept for audit
  Mat p;             // storage certificate
  double eps = 0.0, beta = 0.0;
  double residual_max_eig = 0.0;
  Mat s_c;  // cross weight b_hat^T / 2, identical across the bank

  QsrTriple triple() const;  // (-eps I, s_c, 0)
};

// Velocity-output double-integrator model around the pose, built from the
// measured parameters:
//   A = [0 I; -Mm^-1 K_p  -Mm^-1 D],  B = [0; Mm^-1],  C = [0 I],  D = 0.
LtiSystem linearize_prewrapped(const PlantModel& model, const Vec& q_bar);

// Full pipeline per pose: linearize, LQR gain K from the weights (input map
// B * b_hat), close a_hat = A - B b_hat K, certify.  Any infeasible
// certificate aborts the whole bank.
std::vector<Subcontroller> synthesize_bank(const PlantModel& model,
                                           const std::vector<Vec>& poses,
                                           const LqrWeights& weights);

// Composed supply rate of the scheduled bank (common-S path; the bank's
// cross weights are identical by construction).
CompositionReport controller_bank_compose(const std::vector<Subcontroller>& bank,
                                          const std::vector<SchedulingFamily>& fams);

}  // namespace qsched
