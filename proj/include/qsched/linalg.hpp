#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace qsched {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Error taxonomy, mapped to CLI exit codes by the frontend:
// param/dim -> bad input (2), precondition -> theorem hypothesis violated (3),
// solver -> internal numerical failure (1).
struct param_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct dim_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Relative asymmetry ||M - M^T|| / max(||M||, 1) in Frobenius norm.
double asymmetry_rel(const Mat& m);

// (M + M^T)/2.
Mat symmetric_part(const Mat& m);

// Sorted (ascending) real spectrum of a symmetric matrix. The input is
// symmetrized first; relative asymmetry above 1e-12 is a caller bug.
Vec sym_eigs(const Mat& m);
double sym_eig_min(const Mat& m);
double sym_eig_max(const Mat& m);

// max_i Re(lambda_i) for a general square matrix.
double spectral_abscissa(const Mat& a);

// Largest / smallest singular value.
double sv_max(const Mat& m);
double sv_min(const Mat& m);

// Shortest-precision-preserving decimal form (%.17g).
std::string fmt17(double v);

}  // namespace qsched
