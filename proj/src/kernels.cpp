#include "qsched/kernels.hpp"

namespace qsched::kern {

namespace {

double stamp_sv_max(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Mat>(m).singularValues()[0];
}

}  // namespace

double pc_residual_max(const std::vector<Mat>& phi_u, const std::vector<Mat>& phi_y,
                       const Mat& s, Exec ex) {
  if (phi_u.size() != phi_y.size()) throw dim_error("gain lists differ in length");
  const int n = static_cast<int>(phi_u.size());
  for (int k = 0; k < n; ++k)
    if (phi_y[k].rows() != s.rows() || phi_u[k].rows() != s.cols())
      throw dim_error("gain shapes do not match the cross weight");

  double worst = 0.0;
  if (ex == Exec::Parallel) {
#ifdef QSCHED_HAVE_OPENMP
#pragma omp parallel for reduction(max : worst)
    for (int k = 0; k < n; ++k)
      worst = std::max(worst, stamp_sv_max(phi_y[k].transpose() * s - s * phi_u[k]));
    return worst;
#endif
  }
  for (int k = 0; k < n; ++k)
    worst = std::max(worst, stamp_sv_max(phi_y[k].transpose() * s - s * phi_u[k]));
  return worst;
}

SvScan sv_scan(const std::vector<Mat>& mats, Exec ex) {
  const int n = static_cast<int>(mats.size());
  SvScan out;
  out.smax = Vec::Zero(n);
  out.smin = Vec::Zero(n);
  auto one = [&](int k) {
    Vec sv = Eigen::JacobiSVD<Mat>(mats[k]).singularValues();
    out.smax[k] = sv.size() ? sv[0] : 0.0;
    out.smin[k] = sv.size() ? sv[sv.size() - 1] : 0.0;
  };
  if (ex == Exec::Parallel) {
#ifdef QSCHED_HAVE_OPENMP
#pragma omp parallel for
    for (int k = 0; k < n; ++k) one(k);
    return out;
#endif
  }
  for (int k = 0; k < n; ++k) one(k);
  return out;
}

double stacked_sigma_max(const std::vector<const std::vector<Mat>*>& phi_y_families,
                         Exec ex) {
  if (phi_y_families.empty()) return 0.0;
  const int n = static_cast<int>(phi_y_families[0]->size());
  for (const auto* f : phi_y_families)
    if (static_cast<int>(f->size()) != n) throw dim_error("families disagree on the grid");

  auto stamp = [&](int k) {
    int rows = static_cast<int>((*phi_y_families[0])[k].rows());
    int cols = 0;
    for (const auto* f : phi_y_families) cols += static_cast<int>((*f)[k].cols());
    Mat stacked(rows, cols);
    int at = 0;
    for (const auto* f : phi_y_families) {
      const Mat& m = (*f)[k];
      if (m.rows() != rows) throw dim_error("stacked gains disagree on the output size");
      stacked.middleCols(at, m.cols()) = m;
      at += static_cast<int>(m.cols());
    }
    return stamp_sv_max(stacked);
  };

  double worst = 0.0;
  if (ex == Exec::Parallel) {
#ifdef QSCHED_HAVE_OPENMP
#pragma omp parallel for reduction(max : worst)
    for (int k = 0; k < n; ++k) worst = std::max(worst, stamp(k));
    return worst;
#endif
  }
  for (int k = 0; k < n; ++k) worst = std::max(worst, stamp(k));
  return worst;
}

Vec supply_rate_scan(const std::vector<Vec>& u, const std::vector<Vec>& y, const Mat& q,
                     const Mat& s, const Mat& r, Exec ex) {
  if (u.size() != y.size()) throw dim_error("input/output sample counts differ");
  const int n = static_cast<int>(u.size());
  Vec w = Vec::Zero(n);
  auto one = [&](int k) {
    w[k] = y[k].dot(q * y[k]) + 2.0 * y[k].dot(s * u[k]) + u[k].dot(r * u[k]);
  };
  if (ex == Exec::Parallel) {
#ifdef QSCHED_HAVE_OPENMP
#pragma omp parallel for
    for (int k = 0; k < n; ++k) one(k);
    return w;
#endif
  }
  for (int k = 0; k < n; ++k) one(k);
  return w;
}

}  // namespace qsched::kern
