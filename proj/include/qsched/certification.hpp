#pragma once

#include "qsched/qsr.hpp"

namespace qsched {

// Minimal LTI container  x' = Ax + Bu,  y = Cx + Du.
struct LtiSystem {
  Mat a, b, c, d;

  LtiSystem(Mat a_in, Mat b_in, Mat c_in, Mat d_in);

  int n_x() const { return static_cast<int>(a.rows()); }
  int n_u() const { return static_cast<int>(b.cols()); }
  int n_y() const { return static_cast<int>(c.rows()); }
};

// Storage-function LMI block for quadratic storage V = x^T P x:
//   [ PA + A^T P - C^T Q C            PB - C^T S - C^T Q D ]
//   [ (PB - C^T S - C^T Q D)^T   -(D^T Q D + D^T S + S^T D + R) ]
// Dissipativity holds iff the block is negative semidefinite (max_eig <= 0).
// P must be symmetric to 1e-10 relative asymmetry.
struct LmiResidual {
  Mat block;
  double max_eig = 0.0;
};
LmiResidual dissipativity_residual(const LtiSystem& sys, const QsrTriple& t, const Mat& p);

// Negative-feedback loop certificate for two dissipative blocks: checks
//   [ rho Q_1 + R_2        -rho S_1 + S_2^T ]
//   [ -rho S_1^T + S_2      rho R_1 + Q_2   ]  < 0  (strictly, up to tol)
// for the supplied rho > 0.
struct StabilityCertificate {
  bool feasible = false;
  double rho = 0.0;
  double block_max_eig = 0.0;
};
StabilityCertificate stability_check(const QsrTriple& t1, const QsrTriple& t2,
                                     double rho, double tol = 0.0);

// Solves P A + A^T P = M for symmetric M and Hurwitz A (Schur reduction,
// one triangular solve per column).  Result is symmetrized.
Mat solve_lyapunov(const Mat& a, const Mat& m);

// Stabilizing solution of A^T P + P A - P B R^-1 B^T P + Q = 0 via the
// ordered Schur form of the Hamiltonian, plus the gain K = R^-1 B^T P.
// Errors: r_w not positive definite, stable invariant subspace not
// n-dimensional, or ill-conditioned basis (non-stabilizable data).
struct AreSolution {
  Mat p;
  Mat k;
};
AreSolution solve_are(const Mat& a, const Mat& b, const Mat& q_w, const Mat& r_w);

// Grid search for a quadratic storage certificate of the closed controller
// realization.  Given the pre-closure controller matrix a_hat, the gain k
// (output map), the measurement map c, and the cross weight s_c, scans
//   eps in 10^(-3 + j/3), j = 0..12   (outer, ascending)
//   beta in 10^(-4 + j/2), j = 0..6   (inner, ascending)
// solving P a_hat + a_hat^T P = S_h c + c^T S_h^T - eps k^T k - beta I with
// S_h = k^T s_c, accepting the first P with lambda_min > 1e-9 * max |eig|.
// On success: b_c = P^-1 S_h (factorization solve), the realization
// (a_hat - b_c c, b_c, k, 0) is dissipative for (-eps I, s_c, 0), and the
// returned residual_max_eig is the LMI check of exactly that claim.
struct CertifyResult {
  bool feasible = false;
  double eps = 0.0;
  double beta = 0.0;
  Mat p;
  Mat b_c;
  double residual_max_eig = 0.0;
  double best_lambda_min = 0.0;  // most positive lambda_min seen (diagnostic)
};
CertifyResult certify_controller(const Mat& a_hat, const Mat& k, const Mat& c,
                                 const Mat& s_c);

}  // namespace qsched
