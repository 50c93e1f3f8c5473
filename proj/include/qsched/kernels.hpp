#pragma once

#include "qsched/linalg.hpp"

#include <vector>

// Hot per-stamp scans.  Every kernel has a serial reference path and an
// OpenMP path; both must agree bit-for-bit is NOT required, but results are
// reductions of per-stamp values computed identically, so they agree exactly
// for max-reductions and to roundoff for sums.
namespace qsched::kern {

enum class Exec { Serial, Parallel };

// max over stamps of || phi_y[k]^T S - S phi_u[k] ||_2 (spectral norm).
double pc_residual_max(const std::vector<Mat>& phi_u, const std::vector<Mat>& phi_y,
                       const Mat& s, Exec ex);

// Per-stamp largest and smallest singular values.
struct SvScan {
  Vec smax;
  Vec smin;
};
SvScan sv_scan(const std::vector<Mat>& mats, Exec ex);

// sup over stamps of sigma_max([phi_y_1(t) ... phi_y_N(t)]).  One entry per
// family; all vectors share a grid.
double stacked_sigma_max(const std::vector<const std::vector<Mat>*>& phi_y_families,
                         Exec ex);

// Supply rate <y,Qy> + 2<y,Su> + <u,Ru> at each stamp.
Vec supply_rate_scan(const std::vector<Vec>& u, const std::vector<Vec>& y,
                     const Mat& q, const Mat& s, const Mat& r, Exec ex);

}  // namespace qsched::kern
