#include "qsched/scheduling.hpp"

#include <cmath>

namespace qsched {

SchedulingFamily::SchedulingFamily(int index_in, Vec grid_in, std::vector<Mat> phi_u_in,
                                   std::vector<Mat> phi_y_in)
    : index(index_in),
      grid(std::move(grid_in)),
      phi_u(std::move(phi_u_in)),
      phi_y(std::move(phi_y_in)) {
  if (grid.size() == 0) throw param_error("family needs at least one stamp");
  for (int k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw param_error("stamps must increase strictly");
  if (phi_u.size() != static_cast<size_t>(grid.size()) || phi_u.size() != phi_y.size())
    throw dim_error("one gain pair per stamp required");
  for (const auto& m : phi_u)
    if (m.rows() != m.cols() || m.rows() != phi_u[0].rows())
      throw dim_error("input gains must be square with a fixed size");
  for (const auto& m : phi_y)
    if (m.rows() != m.cols() || m.rows() != phi_y[0].rows())
      throw dim_error("output gains must be square with a fixed size");
}

SvdReduced svd_reduced(const Mat& s, double tol_rel) {
  const int n_y = static_cast<int>(s.rows());
  const int n_u = static_cast<int>(s.cols());
  SvdReduced out;
  if (s.size() == 0 || s.cwiseAbs().maxCoeff() == 0.0) {
    // zero weight: keep identity bases so free blocks land unrotated
    out.u = Mat::Identity(n_y, n_y);
    out.v = Mat::Identity(n_u, n_u);
    out.sigma1 = Vec(0);
    out.rank = 0;
    return out;
  }
  Eigen::JacobiSVD<Mat> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat u = svd.matrixU();
  Mat v = svd.matrixV();
  Vec sv = svd.singularValues();
  const int paired = static_cast<int>(sv.size());
  for (int j = 0; j < n_y; ++j) {
    for (int i = 0; i < n_y; ++i) {
      if (std::abs(u(i, j)) <= 1e-12) continue;
      if (u(i, j) < 0.0) {
        u.col(j) = -u.col(j);
        if (j < paired && j < n_u) v.col(j) = -v.col(j);
      }
      break;
    }
  }
  out.rank = 0;
  for (int i = 0; i < paired; ++i)
    if (sv[i] > tol_rel * sv[0]) ++out.rank;
  out.u = std::move(u);
  out.v = std::move(v);
  out.sigma1 = sv.head(out.rank);
  return out;
}

namespace {

// One constrained block per stamp; an empty list stands for a zero-size
// block, anything else must match the expected shape.
Mat block_at(const std::vector<Mat>& v, size_t k, int rows, int cols, size_t stamps,
             const char* name) {
  if (v.empty()) {
    if (rows == 0 || cols == 0) return Mat::Zero(rows, cols);
    throw dim_error(std::string(name) + " blocks are missing");
  }
  if (v.size() != stamps) throw dim_error(std::string(name) + " needs one block per stamp");
  const Mat& m = v[k];
  if (m.rows() != rows || m.cols() != cols)
    throw dim_error(std::string(name) + " has the wrong shape");
  return m;
}

}  // namespace

SchedulingFamily build_pseudo_commuting(const Mat& s, const Vec& grid,
                                        const FactorBlocks& blocks, int index) {
  const int n_y = static_cast<int>(s.rows());
  const int n_u = static_cast<int>(s.cols());
  auto d = svd_reduced(s);
  const int rho = d.rank;
  const size_t stamps = static_cast<size_t>(grid.size());

  std::vector<Mat> phi_u(stamps), phi_y(stamps);
  for (size_t k = 0; k < stamps; ++k) {
    Mat z11 = block_at(blocks.z11, k, rho, rho, stamps, "z11");
    Mat z21 = block_at(blocks.z21, k, n_u - rho, rho, stamps, "z21");
    Mat z22 = block_at(blocks.z22, k, n_u - rho, n_u - rho, stamps, "z22");
    Mat w21 = block_at(blocks.w21, k, n_y - rho, rho, stamps, "w21");
    Mat w22 = block_at(blocks.w22, k, n_y - rho, n_y - rho, stamps, "w22");

    Mat zu = Mat::Zero(n_u, n_u);
    zu.topLeftCorner(rho, rho) = z11;
    zu.bottomLeftCorner(n_u - rho, rho) = z21;
    zu.bottomRightCorner(n_u - rho, n_u - rho) = z22;

    Mat wy = Mat::Zero(n_y, n_y);
    // top-left block is pinned to sigma^-1 z11^T sigma by the identity
    for (int i = 0; i < rho; ++i)
      for (int j = 0; j < rho; ++j) wy(i, j) = z11(j, i) * d.sigma1[j] / d.sigma1[i];
    wy.bottomLeftCorner(n_y - rho, rho) = w21;
    wy.bottomRightCorner(n_y - rho, n_y - rho) = w22;

    phi_u[k] = d.v * zu * d.v.transpose();
    phi_y[k] = d.u * wy * d.u.transpose();
  }
  return SchedulingFamily(index, grid, std::move(phi_u), std::move(phi_y));
}

PcCheck verify_pseudo_commute(const SchedulingFamily& fam, const Mat& s, double tol) {
  if (fam.n_y() != s.rows() || fam.n_u() != s.cols())
    throw dim_error("cross weight does not match the family");
  PcCheck chk;
  chk.max_residual = kern::pc_residual_max(fam.phi_u, fam.phi_y, s, kern::Exec::Parallel);
  chk.ok = chk.max_residual <= tol * std::max(1.0, sv_max(s));
  return chk;
}

namespace {

void require_shared_grid(const std::vector<SchedulingFamily>& bank) {
  if (bank.empty()) throw dim_error("empty family bank");
  for (const auto& f : bank) {
    if (f.grid.size() != bank[0].grid.size() ||
        (f.grid - bank[0].grid).cwiseAbs().maxCoeff() != 0.0)
      throw dim_error("families disagree on the grid");
  }
}

bool full_rank_stamp(double smin, double smax) { return smin > 1e-8 * std::max(smax, 1.0); }

}  // namespace

Activity activity(const std::vector<SchedulingFamily>& bank, Side side) {
  require_shared_grid(bank);
  const int stamps = static_cast<int>(bank[0].grid.size());
  Activity act;
  act.active = true;
  act.strongly_active = true;
  act.full_rank_set.resize(stamps);

  std::vector<kern::SvScan> scans;
  scans.reserve(bank.size());
  for (const auto& f : bank)
    scans.push_back(kern::sv_scan(side == Side::Input ? f.phi_u : f.phi_y,
                                  kern::Exec::Parallel));

  for (int k = 0; k < stamps; ++k) {
    bool any_nonzero = false;
    for (size_t i = 0; i < bank.size(); ++i) {
      if (scans[i].smax[k] > 1e-12) any_nonzero = true;
      if (full_rank_stamp(scans[i].smin[k], scans[i].smax[k]))
        act.full_rank_set[k].push_back(static_cast<int>(i));
    }
    if (!any_nonzero) act.active = false;
    if (act.full_rank_set[k].empty()) act.strongly_active = false;
  }
  return act;
}

SvBounds sv_bounds(const SchedulingFamily& fam, kern::Exec ex) {
  SvBounds b;
  auto scan_side = [&](const std::vector<Mat>& mats, double& sbar, double& nubar,
                       std::vector<bool>& mask) {
    auto scan = kern::sv_scan(mats, ex);
    sbar = scan.smax.size() ? scan.smax.maxCoeff() : 0.0;
    nubar = scan.smin.size() ? scan.smin.minCoeff() : 0.0;
    mask.resize(mats.size());
    for (int k = 0; k < scan.smax.size(); ++k)
      mask[k] = full_rank_stamp(scan.smin[k], scan.smax[k]);
  };
  scan_side(fam.phi_u, b.sigma_bar_u, b.nu_bar_u, b.full_rank_u);
  scan_side(fam.phi_y, b.sigma_bar_y, b.nu_bar_y, b.full_rank_y);
  return b;
}

double stacked_sigma(const std::vector<SchedulingFamily>& bank, kern::Exec ex) {
  require_shared_grid(bank);
  std::vector<const std::vector<Mat>*> cols;
  cols.reserve(bank.size());
  for (const auto& f : bank) cols.push_back(&f.phi_y);
  return kern::stacked_sigma_max(cols, ex);
}

}  // namespace qsched
