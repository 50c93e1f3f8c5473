#pragma once

#include "qsched/linalg.hpp"

#include <vector>

namespace qsched {

// Supply-rate shape w(u,y) = <y,Qy> + 2<y,Su> + <u,Ru>.  Q and R are
// symmetric; S is n_y x n_u.
struct QsrTriple {
  Mat q, s, r;

  QsrTriple() = default;  // empty; filled by load/compose paths

  // Symmetrizes q and r, rejecting relative asymmetry above 1e-8.
  QsrTriple(Mat q_in, Mat s_in, Mat r_in);

  int n_y() const { return static_cast<int>(q.rows()); }
  int n_u() const { return static_cast<int>(r.rows()); }
};

enum class Kind { Passive, ISP, OSP, VSP, FiniteL2Gain, Conic, General };

const char* kind_name(Kind k);
Kind kind_from_name(const std::string& name);

// Parameters of a named supply-rate family.  Only the fields relevant to
// `kind` are meaningful.
struct SpecialCase {
  Kind kind = Kind::General;
  double epsilon = 0.0;  // OSP / VSP output coefficient
  double delta = 0.0;    // ISP / VSP input coefficient
  double gamma = 0.0;    // L2 gain
  double a = 0.0;        // conic sector lower edge
  double b = 0.0;        // conic sector upper edge (b > a)
  double c = 0.0;        // conic center (a+b)/2
  double r = 0.0;        // conic radius, r^2 = c^2 - ab

  static SpecialCase passive();
  static SpecialCase isp(double delta);
  static SpecialCase osp(double epsilon);
  static SpecialCase vsp(double epsilon, double delta);
  static SpecialCase finite_l2(double gamma);
  static SpecialCase conic(double a, double b);
  static SpecialCase conic_center(double c, double r);
};

// Square triple (n_u = n_y = n) realizing the named family:
//   Passive (0, I/2, 0); ISP (0, I/2, -delta I); OSP (-eps I, I/2, 0);
//   VSP (-eps I, I/2, -delta I); FiniteL2Gain (-I, 0, gamma^2 I);
//   Conic (-I, c I, (r^2 - c^2) I).
QsrTriple make_special(const SpecialCase& sc, int n);

// Most specific matching family, testing in the order Passive, VSP, ISP,
// OSP, FiniteL2Gain, Conic, General.  Off-pattern entries up to `tol`
// (absolute) are accepted.
SpecialCase classify(const QsrTriple& t, double tol = 1e-9);

// Uniformly or non-uniformly sampled vector signal.
struct SampledSignal {
  Vec grid;                 // strictly increasing time stamps
  std::vector<Vec> values;  // one sample per stamp, constant dimension

  SampledSignal() = default;
  SampledSignal(Vec grid_in, std::vector<Vec> values_in);
  int dim() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }
};

// Supply rate w(u(t_k), y(t_k)) at each stamp.
Vec supply_rates(const SampledSignal& u, const SampledSignal& y, const QsrTriple& t);

// Running trapezoid integral of the supply rate; entry k covers [t_0, t_k].
Vec supply_prefix(const SampledSignal& u, const SampledSignal& y, const QsrTriple& t);

// Trapezoid integral of the supply rate over [t_0, T].  T must not exceed
// the final stamp; integration stops at the last stamp <= T (no
// extrapolation past a stamp boundary).
double supply_integral(const SampledSignal& u, const SampledSignal& y,
                       const QsrTriple& t, double T);

}  // namespace qsched
