#include "qsched/certification.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <limits>

namespace qsched {

namespace {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Swap the diagonal entries at (k, k+1) of an upper-triangular T by a 2x2
// unitary similarity, accumulating it into U.  The first column of the
// rotation is the in-block eigenvector of T(k+1,k+1).
void swap_adjacent(CMat& t, CMat& u, int k) {
  std::complex<double> x1 = t(k, k + 1);
  std::complex<double> x2 = t(k + 1, k + 1) - t(k, k);
  double nrm = std::sqrt(std::norm(x1) + std::norm(x2));
  if (nrm == 0.0) return;  // equal eigenvalues, nothing to move
  CMat g(2, 2);
  g << x1 / nrm, -std::conj(x2) / nrm, x2 / nrm, std::conj(x1) / nrm;
  t.middleCols(k, 2) = (t.middleCols(k, 2) * g).eval();
  t.middleRows(k, 2) = (g.adjoint() * t.middleRows(k, 2)).eval();
  u.middleCols(k, 2) = (u.middleCols(k, 2) * g).eval();
  t(k + 1, k) = 0.0;
}

}  // namespace

LtiSystem::LtiSystem(Mat a_in, Mat b_in, Mat c_in, Mat d_in)
    : a(std::move(a_in)), b(std::move(b_in)), c(std::move(c_in)), d(std::move(d_in)) {
  if (a.rows() != a.cols()) throw dim_error("state matrix must be square");
  if (b.rows() != a.rows()) throw dim_error("input map rows must match the state count");
  if (c.cols() != a.rows()) throw dim_error("output map cols must match the state count");
  if (d.rows() != c.rows() || d.cols() != b.cols())
    throw dim_error("feedthrough must be n_y x n_u");
}

LmiResidual dissipativity_residual(const LtiSystem& sys, const QsrTriple& t, const Mat& p) {
  if (t.n_y() != sys.n_y() || t.n_u() != sys.n_u())
    throw dim_error("supply-rate dimensions do not match the realization");
  if (p.rows() != sys.n_x() || p.cols() != sys.n_x())
    throw dim_error("storage matrix must be n_x x n_x");
  if (asymmetry_rel(p) > 1e-10) throw param_error("storage matrix must be symmetric");

  const int n = sys.n_x(), m = sys.n_u();
  LmiResidual out;
  out.block = Mat(n + m, n + m);
  Mat cross = p * sys.b - sys.c.transpose() * t.s - sys.c.transpose() * (t.q * sys.d);
  out.block.topLeftCorner(n, n) =
      p * sys.a + sys.a.transpose() * p - sys.c.transpose() * t.q * sys.c;
  out.block.topRightCorner(n, m) = cross;
  out.block.bottomLeftCorner(m, n) = cross.transpose();
  out.block.bottomRightCorner(m, m) =
      -(sys.d.transpose() * t.q * sys.d + sys.d.transpose() * t.s +
        t.s.transpose() * sys.d + t.r);
  out.max_eig = sym_eig_max(out.block);
  return out;
}

StabilityCertificate stability_check(const QsrTriple& t1, const QsrTriple& t2, double rho,
                                     double tol) {
  if (!(rho > 0.0)) throw param_error("loop weight rho must be positive");
  if (t1.n_y() != t2.n_u() || t1.n_u() != t2.n_y())
    throw dim_error("the two blocks do not close a loop");

  const int a = t1.n_y(), b = t1.n_u();
  Mat block(a + b, a + b);
  block.topLeftCorner(a, a) = rho * t1.q + t2.r;
  block.topRightCorner(a, b) = -rho * t1.s + t2.s.transpose();
  block.bottomLeftCorner(b, a) = block.topRightCorner(a, b).transpose();
  block.bottomRightCorner(b, b) = rho * t1.r + t2.q;

  StabilityCertificate cert;
  cert.rho = rho;
  cert.block_max_eig = sym_eig_max(block);
  cert.feasible = cert.block_max_eig < -tol;
  return cert;
}

Mat solve_lyapunov(const Mat& a, const Mat& m) {
  if (a.rows() != a.cols()) throw dim_error("coefficient matrix must be square");
  if (m.rows() != a.rows() || m.cols() != a.cols())
    throw dim_error("right-hand side must match the coefficient matrix");
  if (asymmetry_rel(m) > 1e-10) throw param_error("right-hand side must be symmetric");

  const int n = static_cast<int>(a.rows());
  Eigen::ComplexSchur<CMat> schur(a.cast<std::complex<double>>());
  if (schur.info() != Eigen::Success) throw solver_error("Schur reduction failed");
  const CMat& t = schur.matrixT();
  const CMat& u = schur.matrixU();
  for (int k = 0; k < n; ++k)
    if (t(k, k).real() >= 0.0)
      throw solver_error("coefficient matrix is not Hurwitz");

  // back substitution on Y T + T^H Y = U^H M U, one column at a time
  CMat mt = u.adjoint() * m.cast<std::complex<double>>() * u;
  CMat y(n, n);
  for (int k = 0; k < n; ++k) {
    CVec rhs = mt.col(k);
    for (int j = 0; j < k; ++j) rhs -= y.col(j) * t(j, k);
    // (T^H + t_kk I) is lower triangular, forward substitute
    for (int i = 0; i < n; ++i) {
      std::complex<double> acc = rhs[i];
      for (int j = 0; j < i; ++j) acc -= std::conj(t(j, i)) * y(j, k);
      std::complex<double> piv = std::conj(t(i, i)) + t(k, k);
      if (std::abs(piv) < 1e-14) throw solver_error("eigenvalue pairing is singular");
      y(i, k) = acc / piv;
    }
  }
  Mat p = (u * y * u.adjoint()).real();
  return 0.5 * (p + p.transpose());
}

AreSolution solve_are(const Mat& a, const Mat& b, const Mat& q_w, const Mat& r_w) {
  const int n = static_cast<int>(a.rows());
  const int m = static_cast<int>(b.cols());
  if (a.rows() != a.cols()) throw dim_error("state matrix must be square");
  if (b.rows() != n) throw dim_error("input map rows must match the state count");
  if (q_w.rows() != n || q_w.cols() != n) throw dim_error("state weight must be n x n");
  if (r_w.rows() != m || r_w.cols() != m) throw dim_error("input weight must be m x m");
  if (asymmetry_rel(q_w) > 1e-10 || asymmetry_rel(r_w) > 1e-10)
    throw param_error("weights must be symmetric");

  Eigen::LLT<Mat> rchol(symmetric_part(r_w));
  if (rchol.info() != Eigen::Success)
    throw param_error("input weight must be positive definite");

  Mat h(2 * n, 2 * n);
  h.topLeftCorner(n, n) = a;
  h.topRightCorner(n, n) = -b * rchol.solve(b.transpose());
  h.bottomLeftCorner(n, n) = -symmetric_part(q_w);
  h.bottomRightCorner(n, n) = -a.transpose();

  Eigen::ComplexSchur<CMat> schur(h.cast<std::complex<double>>());
  if (schur.info() != Eigen::Success) throw solver_error("Schur reduction failed");
  CMat t = schur.matrixT();
  CMat u = schur.matrixU();

  // bubble the stable eigenvalues into the leading block
  const int dim = 2 * n;
  int placed = 0;
  for (int k = 0; k < dim && placed < n; ++k) {
    if (t(k, k).real() >= 0.0) continue;
    for (int j = k; j > placed; --j) swap_adjacent(t, u, j - 1);
    ++placed;
  }
  int stable = 0;
  for (int k = 0; k < dim; ++k)
    if (t(k, k).real() < 0.0) ++stable;
  if (stable != n || placed != n)
    throw solver_error("stable subspace has the wrong dimension (non-stabilizable data)");

  CMat u1 = u.topLeftCorner(n, n);
  CMat u2 = u.bottomLeftCorner(n, n);
  Eigen::FullPivLU<CMat> lu(u1);
  if (!lu.isInvertible())
    throw solver_error("stable subspace basis is singular (non-stabilizable data)");
  Mat p = (u2 * lu.inverse()).real();
  p = 0.5 * (p + p.transpose()).eval();

  // the Schur basis can be ill conditioned on hard instances; polish with
  // Kleinman defect steps until the residual is small against its own terms
  // (well-conditioned problems skip the loop and keep the direct solution)
  const Mat q_sym = symmetric_part(q_w);
  for (int it = 0; it < 3; ++it) {
    const Mat pi = p * b * rchol.solve(b.transpose() * p);
    const Mat res = a.transpose() * p + p * a - pi + q_sym;
    const double scale = std::max(1.0, 2.0 * (p * a).norm() + q_sym.norm() + pi.norm());
    if (res.norm() <= 1e-12 * scale) break;
    const Mat acl = a - b * rchol.solve(b.transpose() * p);
    p += solve_lyapunov(acl, -symmetric_part(res));
    p = 0.5 * (p + p.transpose()).eval();
  }

  AreSolution sol;
  sol.p = p;
  sol.k = rchol.solve(b.transpose() * p);
  return sol;
}

CertifyResult certify_controller(const Mat& a_hat, const Mat& k, const Mat& c,
                                 const Mat& s_c) {
  const int n = static_cast<int>(a_hat.rows());
  const int m = static_cast<int>(k.rows());
  const int q = static_cast<int>(c.rows());
  if (a_hat.rows() != a_hat.cols()) throw dim_error("controller matrix must be square");
  if (k.cols() != n || c.cols() != n)
    throw dim_error("gain and measurement maps must have n_x columns");
  if (s_c.rows() != m || s_c.cols() != q)
    throw dim_error("cross weight must be n_y x n_u of the controller");
  if (spectral_abscissa(a_hat) >= 0.0)
    throw precondition_error("controller matrix must be Hurwitz before closure");

  Mat s_h = k.transpose() * s_c;  // n x q
  Mat forcing = s_h * c + c.transpose() * s_h.transpose();
  Mat ktk = k.transpose() * k;

  CertifyResult out;
  out.best_lambda_min = -std::numeric_limits<double>::infinity();
  for (int je = 0; je <= 12 && !out.feasible; ++je) {
    double eps = std::pow(10.0, -3.0 + je / 3.0);
    for (int jb = 0; jb <= 6; ++jb) {
      double beta = std::pow(10.0, -4.0 + jb / 2.0);
      Mat p = solve_lyapunov(a_hat, forcing - eps * ktk - beta * Mat::Identity(n, n));
      Vec eigs = sym_eigs(p);
      out.best_lambda_min = std::max(out.best_lambda_min, eigs[0]);
      if (eigs[0] > 1e-9 * std::max(eigs.cwiseAbs().maxCoeff(), 1e-300)) {
        out.feasible = true;
        out.eps = eps;
        out.beta = beta;
        out.p = p;
        out.b_c = p.ldlt().solve(s_h);
        LtiSystem closed(a_hat - out.b_c * c, out.b_c, k, Mat::Zero(m, q));
        QsrTriple goal(-eps * Mat::Identity(m, m), s_c, Mat::Zero(q, q));
        out.residual_max_eig = dissipativity_residual(closed, goal, p).max_eig;
        break;
      }
    }
  }
  return out;
}

}  // namespace qsched
