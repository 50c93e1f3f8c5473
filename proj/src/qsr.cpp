#include "qsched/qsr.hpp"

#include <cmath>

namespace qsched {

QsrTriple::QsrTriple(Mat q_in, Mat s_in, Mat r_in) {
  if (q_in.rows() != q_in.cols()) throw dim_error("Q must be square");
  if (r_in.rows() != r_in.cols()) throw dim_error("R must be square");
  if (s_in.rows() != q_in.rows() || s_in.cols() != r_in.rows())
    throw dim_error("S must be n_y x n_u");
  if (asymmetry_rel(q_in) > 1e-8) throw param_error("Q is not symmetric");
  if (asymmetry_rel(r_in) > 1e-8) throw param_error("R is not symmetric");
  q = symmetric_part(q_in);
  s = std::move(s_in);
  r = symmetric_part(r_in);
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Passive: return "passive";
    case Kind::ISP: return "isp";
    case Kind::OSP: return "osp";
    case Kind::VSP: return "vsp";
    case Kind::FiniteL2Gain: return "l2";
    case Kind::Conic: return "conic";
    default: return "general";
  }
}

Kind kind_from_name(const std::string& name) {
  for (Kind k : {Kind::Passive, Kind::ISP, Kind::OSP, Kind::VSP, Kind::FiniteL2Gain,
                 Kind::Conic, Kind::General})
    if (name == kind_name(k)) return k;
  throw param_error("unknown supply-rate family '" + name + "'");
}

SpecialCase SpecialCase::passive() {
  SpecialCase sc;
  sc.kind = Kind::Passive;
  return sc;
}

SpecialCase SpecialCase::isp(double delta) {
  if (delta <= 0.0) throw param_error("isp needs delta > 0");
  SpecialCase sc;
  sc.kind = Kind::ISP;
  sc.delta = delta;
  return sc;
}

SpecialCase SpecialCase::osp(double epsilon) {
  if (epsilon <= 0.0) throw param_error("osp needs epsilon > 0");
  SpecialCase sc;
  sc.kind = Kind::OSP;
  sc.epsilon = epsilon;
  return sc;
}

SpecialCase SpecialCase::vsp(double epsilon, double delta) {
  if (epsilon <= 0.0 || delta <= 0.0) throw param_error("vsp needs epsilon, delta > 0");
  SpecialCase sc;
  sc.kind = Kind::VSP;
  sc.epsilon = epsilon;
  sc.delta = delta;
  return sc;
}

SpecialCase SpecialCase::finite_l2(double gamma) {
  if (gamma < 0.0) throw param_error("l2 needs gamma >= 0");
  SpecialCase sc;
  sc.kind = Kind::FiniteL2Gain;
  sc.gamma = gamma;
  return sc;
}

SpecialCase SpecialCase::conic(double a, double b) {
  if (!(b > a)) throw param_error("conic sector needs b > a");
  SpecialCase sc;
  sc.kind = Kind::Conic;
  sc.a = a;
  sc.b = b;
  sc.c = 0.5 * (a + b);
  sc.r = 0.5 * (b - a);
  return sc;
}

SpecialCase SpecialCase::conic_center(double c, double r) {
  if (r <= 0.0) throw param_error("conic sector needs radius > 0");
  return conic(c - r, c + r);
}

QsrTriple make_special(const SpecialCase& sc, int n) {
  if (n < 1) throw dim_error("signal dimension must be positive");
  Mat eye = Mat::Identity(n, n);
  Mat zero = Mat::Zero(n, n);
  switch (sc.kind) {
    case Kind::Passive: return QsrTriple(zero, 0.5 * eye, zero);
    case Kind::ISP: return QsrTriple(zero, 0.5 * eye, -sc.delta * eye);
    case Kind::OSP: return QsrTriple(-sc.epsilon * eye, 0.5 * eye, zero);
    case Kind::VSP: return QsrTriple(-sc.epsilon * eye, 0.5 * eye, -sc.delta * eye);
    case Kind::FiniteL2Gain: return QsrTriple(-eye, zero, sc.gamma * sc.gamma * eye);
    case Kind::Conic:
      return QsrTriple(-eye, sc.c * eye, (sc.r * sc.r - sc.c * sc.c) * eye);
    default: throw param_error("no matrix form for the general family");
  }
}

namespace {

// m == alpha I within tol (max absolute deviation)?
bool scaled_identity(const Mat& m, double tol, double& alpha) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  alpha = m.trace() / static_cast<double>(m.rows());
  Mat dev = m - alpha * Mat::Identity(m.rows(), m.cols());
  return dev.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

SpecialCase classify(const QsrTriple& t, double tol) {
  SpecialCase sc;
  sc.kind = Kind::General;
  double alpha, sigma, rho;
  if (t.n_u() != t.n_y()) return sc;
  if (!scaled_identity(t.q, tol, alpha) || !scaled_identity(t.s, tol, sigma) ||
      !scaled_identity(t.r, tol, rho))
    return sc;

  bool q_zero = std::abs(alpha) <= tol;
  bool q_neg = alpha < -tol;
  bool s_half = std::abs(sigma - 0.5) <= tol;
  bool r_zero = std::abs(rho) <= tol;
  bool r_neg = rho < -tol;

  if (q_zero && s_half && r_zero) return SpecialCase::passive();
  if (q_neg && s_half && r_neg) return SpecialCase::vsp(-alpha, -rho);
  if (q_zero && s_half && r_neg) return SpecialCase::isp(-rho);
  if (q_neg && s_half && r_zero) return SpecialCase::osp(-alpha);
  if (std::abs(alpha + 1.0) <= tol && std::abs(sigma) <= tol && rho >= -tol)
    return SpecialCase::finite_l2(std::sqrt(std::max(rho, 0.0)));
  if (std::abs(alpha + 1.0) <= tol && rho + sigma * sigma > tol)
    return SpecialCase::conic_center(sigma, std::sqrt(rho + sigma * sigma));
  return sc;
}

SampledSignal::SampledSignal(Vec grid_in, std::vector<Vec> values_in)
    : grid(std::move(grid_in)), values(std::move(values_in)) {
  if (static_cast<size_t>(grid.size()) != values.size())
    throw dim_error("one sample per stamp required");
  if (grid.size() == 0) throw param_error("empty signal");
  for (int k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw param_error("stamps must increase strictly");
  for (const auto& v : values)
    if (v.size() != values[0].size()) throw dim_error("sample dimension changed mid-signal");
}

namespace {

void check_pair(const SampledSignal& u, const SampledSignal& y, const QsrTriple& t) {
  if (u.grid.size() != y.grid.size() || (u.grid - y.grid).cwiseAbs().maxCoeff() != 0.0)
    throw dim_error("input and output must share the grid");
  if (u.dim() != t.n_u() || y.dim() != t.n_y())
    throw dim_error("signal dimensions do not match the triple");
}

}  // namespace

Vec supply_rates(const SampledSignal& u, const SampledSignal& y, const QsrTriple& t) {
  check_pair(u, y, t);
  int n = static_cast<int>(u.grid.size());
  Vec w(n);
  for (int k = 0; k < n; ++k) {
    const Vec& uk = u.values[k];
    const Vec& yk = y.values[k];
    w[k] = yk.dot(t.q * yk) + 2.0 * yk.dot(t.s * uk) + uk.dot(t.r * uk);
  }
  return w;
}

Vec supply_prefix(const SampledSignal& u, const SampledSignal& y, const QsrTriple& t) {
  Vec w = supply_rates(u, y, t);
  Vec prefix(w.size());
  prefix[0] = 0.0;
  for (int k = 1; k < w.size(); ++k)
    prefix[k] = prefix[k - 1] + 0.5 * (u.grid[k] - u.grid[k - 1]) * (w[k] + w[k - 1]);
  return prefix;
}

double supply_integral(const SampledSignal& u, const SampledSignal& y, const QsrTriple& t,
                       double T) {
  if (u.grid.size() == 0 || T < u.grid[0] || T > u.grid[u.grid.size() - 1])
    throw param_error("horizon outside the sampled range");
  Vec prefix = supply_prefix(u, y, t);
  int k = static_cast<int>(u.grid.size()) - 1;
  while (u.grid[k] > T) --k;
  return prefix[k];
}

}  // namespace qsched
