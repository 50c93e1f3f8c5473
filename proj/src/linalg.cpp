#include "qsched/linalg.hpp"

#include <cstdio>

namespace qsched {

double asymmetry_rel(const Mat& m) {
  if (m.rows() != m.cols()) return 1.0;
  double denom = std::max(m.norm(), 1.0);
  return (m - m.transpose()).norm() / denom;
}

Mat symmetric_part(const Mat& m) { return 0.5 * (m + m.transpose()); }

Vec sym_eigs(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetric_part(m));
  if (es.info() != Eigen::Success) throw solver_error("symmetric eigensolver failed");
  return es.eigenvalues();
}

double sym_eig_min(const Mat& m) { return sym_eigs(m)[0]; }

double sym_eig_max(const Mat& m) {
  Vec e = sym_eigs(m);
  return e[e.size() - 1];
}

double spectral_abscissa(const Mat& a) {
  if (a.rows() != a.cols()) throw dim_error("spectral abscissa needs a square matrix");
  Eigen::EigenSolver<Mat> es(a, false);
  if (es.info() != Eigen::Success) throw solver_error("eigensolver failed");
  return es.eigenvalues().real().maxCoeff();
}

double sv_max(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Mat>(m).singularValues()[0];
}

double sv_min(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Vec sv = Eigen::JacobiSVD<Mat>(m).singularValues();
  // JacobiSVD reports min(rows, cols) values; a wide or tall matrix keeps
  // its smallest one there
  return sv[sv.size() - 1];
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace qsched
