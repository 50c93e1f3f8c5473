#pragma once

#include "qsched/kernels.hpp"
#include "qsched/linalg.hpp"

#include <vector>

namespace qsched {

// Time-sampled pair of scheduling matrices for one subsystem: the input-side
// gain phi_u(t) (n_u x n_u) and the output-side gain phi_y(t) (n_y x n_y).
struct SchedulingFamily {
  int index = 0;
  Vec grid;                // strictly increasing stamps
  std::vector<Mat> phi_u;  // one per stamp
  std::vector<Mat> phi_y;

  SchedulingFamily() = default;
  SchedulingFamily(int index_in, Vec grid_in, std::vector<Mat> phi_u_in,
                   std::vector<Mat> phi_y_in);

  int n_u() const { return phi_u.empty() ? 0 : static_cast<int>(phi_u[0].rows()); }
  int n_y() const { return phi_y.empty() ? 0 : static_cast<int>(phi_y[0].rows()); }
};

// Reduced SVD S = U [diag(sigma1) 0; 0 0] V^T with the sign convention that
// the first nonzero entry of each left singular vector is nonnegative.
// Rank is counted against tol_rel * sigma_max (tol_rel = 1e-12 default).
struct SvdReduced {
  Mat u;       // n_y x n_y
  Mat v;       // n_u x n_u
  Vec sigma1;  // the rank leading singular values
  int rank = 0;
};
SvdReduced svd_reduced(const Mat& s, double tol_rel = 1e-12);

// Free blocks of the commuting construction, one set per stamp.  With
// rho = rank(S), z11 is rho x rho; z21 is (n_u - rho) x rho, z22 is
// (n_u - rho) x (n_u - rho); w21 is (n_y - rho) x rho, w22 is
// (n_y - rho) x (n_y - rho).  Trailing blocks may be left empty when the
// corresponding dimension is zero.
struct FactorBlocks {
  std::vector<Mat> z11, z21, z22, w21, w22;
};

// Builds the family
//   phi_u = V [z11 0; z21 z22] V^T,
//   phi_y = U [sigma1^-1 z11^T sigma1  0; w21 w22] U^T,
// which satisfies phi_y^T S = S phi_u at every stamp.  S = 0 imposes no
// constraint: z/w blocks are installed as given full-size gains.
SchedulingFamily build_pseudo_commuting(const Mat& s, const Vec& grid,
                                        const FactorBlocks& blocks, int index = 0);

struct PcCheck {
  bool ok = false;
  double max_residual = 0.0;  // max_t ||phi_y^T S - S phi_u||_2
};
PcCheck verify_pseudo_commute(const SchedulingFamily& fam, const Mat& s, double tol);

enum class Side { Input, Output };

// Activity of a bank of families on a shared grid (definitions are
// pointwise in t):
//   active:          some family has a nonzero gain at every stamp;
//   strongly_active: some family is full rank at every stamp;
//   full_rank_set:   per stamp, the indices of full-rank families.
struct Activity {
  bool active = false;
  bool strongly_active = false;
  std::vector<std::vector<int>> full_rank_set;
};
Activity activity(const std::vector<SchedulingFamily>& bank, Side side);

// Singular-value envelopes of one family.  sigma_bar_* = sup_t sigma_max and
// nu_bar_* = inf_t sigma_min, both over the whole grid; a singular stamp
// forces nu_bar to 0, which is what the composition bound needs (the
// minimum-gain credit has to hold at every stamp).  full_rank_u/full_rank_y
// mark membership of the stamp in the full-rank set; the rank test is
// sigma_min > 1e-8 * max(sigma_max, 1).
struct SvBounds {
  double sigma_bar_u = 0.0;
  double sigma_bar_y = 0.0;
  double nu_bar_u = 0.0;
  double nu_bar_y = 0.0;
  std::vector<bool> full_rank_u;
  std::vector<bool> full_rank_y;
};
SvBounds sv_bounds(const SchedulingFamily& fam, kern::Exec ex = kern::Exec::Parallel);

// sup_t sigma_max([phi_y_1(t) ... phi_y_N(t)]) over a bank sharing a grid.
double stacked_sigma(const std::vector<SchedulingFamily>& bank,
                     kern::Exec ex = kern::Exec::Parallel);

}  // namespace qsched
