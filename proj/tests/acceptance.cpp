// Acceptance suite.  One criterion per invocation:
//
//   acceptance <n> [gsctl-path scenario-path]
//
// Each criterion prints one PASS/FAIL line per sub-check plus a closing
// "criterion <n>: PASS|FAIL" line, and the exit code reports the aggregate.
// Criterion 6 shells out to the CLI given in argv[2] with the scenario in
// argv[3].

#include "qsched/certification.hpp"
#include "qsched/composition.hpp"
#include "qsched/robot.hpp"
#include "qsched/scheduling.hpp"
#include "qsched/synthesis.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace qsched;

namespace {

int g_failures = 0;

void line(const std::string& name, bool ok, const std::string& detail) {
  std::printf("  %-52s %s  %s\n", name.c_str(), ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Mat rand_mat(std::mt19937_64& rng, int r, int c, double scale = 1.0) {
  std::normal_distribution<double> nd;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = scale * nd(rng);
  return m;
}

// Random square matrix with smallest singular value clamped away from zero.
Mat full_rank_square(std::mt19937_64& rng, int n, double floor_sv) {
  Mat g = rand_mat(rng, n, n);
  Eigen::JacobiSVD<Mat> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Vec sv = svd.singularValues();
  for (int i = 0; i < n; ++i) sv[i] = std::max(sv[i], floor_sv);
  return svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
}

Mat hurwitz(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.3, 1.0);
  Mat g = rand_mat(rng, n, n);
  return g - (sv_max(g) + u(rng)) * Mat::Identity(n, n);
}

// ---------------------------------------------------------------------------
// criterion 1: random commuting builds across the four shape classes
// ---------------------------------------------------------------------------

int run_c1() {
  Timer timer;
  std::mt19937_64 rng(101);
  const int shapes[4][2] = {{1, 1}, {2, 3}, {3, 2}, {3, 3}};  // (n_y, n_u)
  const int stamps = 25;
  Vec grid = Vec::LinSpaced(stamps, 0.0, 2.4);

  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n_y = shapes[trial % 4][0], n_u = shapes[trial % 4][1];
    Mat s = rand_mat(rng, n_y, n_u);
    if (trial % 5 == 0 && std::min(n_y, n_u) >= 2) {
      // exercise the rank-deficient branch
      Eigen::JacobiSVD<Mat> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Vec sv = svd.singularValues();
      sv[sv.size() - 1] = 0.0;
      Mat sig = Mat::Zero(n_y, n_u);
      sig.diagonal() = sv;
      s = svd.matrixU() * sig * svd.matrixV().transpose();
    }
    int rho = svd_reduced(s).rank;
    FactorBlocks blocks;
    for (int k = 0; k < stamps; ++k) {
      blocks.z11.push_back(rand_mat(rng, rho, rho));
      if (n_u > rho) {
        blocks.z21.push_back(rand_mat(rng, n_u - rho, rho));
        blocks.z22.push_back(rand_mat(rng, n_u - rho, n_u - rho));
      }
      if (n_y > rho) {
        blocks.w21.push_back(rand_mat(rng, n_y - rho, rho));
        blocks.w22.push_back(rand_mat(rng, n_y - rho, n_y - rho));
      }
    }
    auto fam = build_pseudo_commuting(s, grid, blocks, trial);
    auto chk = verify_pseudo_commute(fam, s, 1e-10);
    worst = std::max(worst, chk.max_residual);
  }
  double wall = timer.s();
  line("1000 builds, residual <= 1e-10", worst <= 1e-10, fmt("max residual %.3e", worst));
  line("wall time < 5 s", wall < 5.0, fmt("%.2f s", wall));
  return g_failures ? 1 : 0;
}

// ---------------------------------------------------------------------------
// criterion 2: randomized certified banks keep the composed supply nonneg
// ---------------------------------------------------------------------------

struct CertSub {
  LtiSystem sys;
  QsrTriple tr;
  Mat p;
  double resid;
};

CertSub cert_core(const Mat& a, const Mat& c, const Mat& d, QsrTriple tr, const Mat& m_rhs,
                  const Mat& s_hat) {
  Mat p = solve_lyapunov(a, m_rhs);
  Mat b = p.ldlt().solve(s_hat);
  LtiSystem sys(a, b, c, d);
  double resid = dissipativity_residual(sys, tr, p).max_eig;
  return {sys, tr, p, resid};
}

// Subsystems are certified by construction: P solves a Lyapunov equation
// that makes the storage block exactly [-beta I, 0; 0, -R_hat].
CertSub make_certified(std::mt19937_64& rng, Kind kind, int m) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int n = 2 + int(u01(rng) * 3);  // 2..4 states
  Mat a = hurwitz(rng, n);
  Mat c = rand_mat(rng, m, n, 0.7);
  double beta = 0.1 + 0.9 * u01(rng);
  Mat eye = Mat::Identity(m, m);
  switch (kind) {
    case Kind::Passive:
      return cert_core(a, c, Mat::Zero(m, m), make_special(SpecialCase::passive(), m),
                       -beta * Mat::Identity(n, n), 0.5 * c.transpose());
    case Kind::OSP: {
      double eps = 0.2 + 1.3 * u01(rng);
      return cert_core(a, c, Mat::Zero(m, m), make_special(SpecialCase::osp(eps), m),
                       -eps * c.transpose() * c - beta * Mat::Identity(n, n),
                       0.5 * c.transpose());
    }
    case Kind::ISP: {
      double delta = 0.05 + 0.35 * u01(rng);
      double d = delta + 0.5;
      return cert_core(a, c, d * eye, make_special(SpecialCase::isp(delta), m),
                       -beta * Mat::Identity(n, n), 0.5 * c.transpose());
    }
    case Kind::VSP: {
      double delta = 0.05 + 0.25 * u01(rng);
      double d = 2.0 * delta;
      double eps = 0.8 * (d - delta) / (d * d);
      return cert_core(a, c, d * eye, make_special(SpecialCase::vsp(eps, delta), m),
                       -eps * c.transpose() * c - beta * Mat::Identity(n, n),
                       (0.5 - eps * d) * c.transpose());
    }
    case Kind::FiniteL2Gain: {
      double gamma = 0.8 + 1.7 * u01(rng);
      double d = 0.3 * gamma * (u01(rng) < 0.5 ? 1.0 : -1.0);
      return cert_core(a, c, d * eye, make_special(SpecialCase::finite_l2(gamma), m),
                       -c.transpose() * c - beta * Mat::Identity(n, n),
                       -d * c.transpose());
    }
    default: {  // general cross weight, strictly output-strict
      double eps = 0.2 + 1.3 * u01(rng);
      Mat s = full_rank_square(rng, m, 0.4);
      QsrTriple tr(-eps * eye, s, Mat::Zero(m, m));
      return cert_core(a, c, Mat::Zero(m, m), tr,
                       -eps * c.transpose() * c - beta * Mat::Identity(n, n),
                       c.transpose() * s);
    }
  }
}

// Sinusoid-coefficient bundle for one matrix-valued path.
struct SmoothMat {
  Mat c0, amp, freq, phase;
  Mat at(double t) const {
    Mat m = c0;
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        m(i, j) += amp(i, j) * std::sin(freq(i, j) * t + phase(i, j));
    return m;
  }
};

SmoothMat smooth_mat(std::mt19937_64& rng, int r, int c, double scale) {
  std::uniform_real_distribution<double> fr(0.3, 2.5), ph(0.0, 6.2831853);
  SmoothMat sm;
  sm.c0 = rand_mat(rng, r, c, scale);
  sm.amp = rand_mat(rng, r, c, 0.5 * scale).cwiseAbs();
  sm.freq = Mat::Zero(r, c);
  sm.phase = Mat::Zero(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      sm.freq(i, j) = fr(rng);
      sm.phase(i, j) = ph(rng);
    }
  return sm;
}

// Family over `grid` for a square full-rank S: the z11 block alone decides
// both gains.  `constant` freezes the family in time (required soundness
// margin for members whose R has a negative eigenvalue: the inf-side
// envelope of an interpolated gain is only grid-exact when the gain is
// constant).
SchedulingFamily member_family(std::mt19937_64& rng, const Mat& s, const Vec& grid,
                               bool constant, int index) {
  int m = static_cast<int>(s.rows());
  FactorBlocks blocks;
  if (constant) {
    Mat z = full_rank_square(rng, m, 0.4);
    blocks.z11.assign(grid.size(), z);
  } else {
    SmoothMat sm = smooth_mat(rng, m, m, 0.5);
    for (int k = 0; k < grid.size(); ++k) blocks.z11.push_back(sm.at(grid[k]));
  }
  return build_pseudo_commuting(s, grid, blocks, index);
}

SchedulingFamily l2_family(std::mt19937_64& rng, int m, const Vec& grid, int index) {
  FactorBlocks blocks;
  SmoothMat su = smooth_mat(rng, m, m, 0.4);
  SmoothMat sy = smooth_mat(rng, m, m, 0.4);
  Mat bias = 0.5 * Mat::Identity(m, m);  // keeps the output side active
  for (int k = 0; k < grid.size(); ++k) {
    blocks.z22.push_back(su.at(grid[k]));
    blocks.w22.push_back(sy.at(grid[k]) + bias);
  }
  return build_pseudo_commuting(Mat::Zero(m, m), grid, blocks, index);
}

Mat interp_stamp(const SchedulingFamily& fam, const std::vector<Mat>& mats, double t) {
  const Vec& g = fam.grid;
  int n = static_cast<int>(g.size());
  if (t <= g[0]) return mats.front();
  if (t >= g[n - 1]) return mats.back();
  int k = static_cast<int>((t - g[0]) / (g[1] - g[0]));
  while (k + 1 < n && g[k + 1] < t) ++k;
  while (k > 0 && g[k] > t) --k;
  double a = (t - g[k]) / (g[k + 1] - g[k]);
  return (1.0 - a) * mats[k] + a * mats[k + 1];
}

int run_c2() {
  Timer timer;
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  const double dt = 1e-3, horizon = 4.0;
  const int steps = static_cast<int>(std::lround(horizon / dt));
  Vec sim_grid = Vec::LinSpaced(steps + 1, 0.0, horizon);
  Vec fam_grid = Vec::LinSpaced(81, 0.0, horizon);  // gains sampled at 50 ms

  double worst_resid = 0.0;
  double min_prefix = 0.0;
  int verified = 0;

  for (int bank_id = 0; bank_id < 100; ++bank_id) {
    int route = bank_id % 3;
    int m = 1 + int(u01(rng) * 3);
    int count = 2 + int(u01(rng) * 2);
    std::vector<CertSub> subs;
    std::vector<SchedulingFamily> fams;
    std::vector<QsrTriple> triples;
    std::vector<SpecialCase> params;

    if (route == 0) {
      // subsystem-specific cross weights
      for (int i = 0; i < count; ++i) {
        Kind kind = (u01(rng) < 0.5) ? Kind::OSP : Kind::General;
        subs.push_back(make_certified(rng, kind, m));
        fams.push_back(member_family(rng, subs.back().tr.s, fam_grid, false, i));
      }
    } else if (route == 1) {
      // one shared cross weight, mixed strictness
      const Kind menu[4] = {Kind::Passive, Kind::OSP, Kind::ISP, Kind::VSP};
      for (int i = 0; i < count; ++i) {
        Kind kind = menu[int(u01(rng) * 4)];
        subs.push_back(make_certified(rng, kind, m));
        bool constant = (i == 0) || kind == Kind::ISP || kind == Kind::VSP;
        fams.push_back(member_family(rng, subs.back().tr.s, fam_grid, constant, i));
      }
    } else {
      for (int i = 0; i < count; ++i) {
        subs.push_back(make_certified(rng, Kind::FiniteL2Gain, m));
        fams.push_back(l2_family(rng, m, fam_grid, i));
        params.push_back(classify(subs.back().tr));
      }
    }
    for (auto& s : subs) {
      triples.push_back(s.tr);
      worst_resid = std::max(worst_resid, s.resid);
    }

    CompositionReport rep = route == 0   ? compose_theorem1(triples, fams)
                            : route == 1 ? compose_theorem2(triples, fams)
                                         : compose_special(Kind::FiniteL2Gain, params,
                                                           fams, m);

    // gain lookups shared by the ten runs: index j holds t = j dt/2
    std::vector<std::vector<Mat>> pu(count), py(count);
    for (int i = 0; i < count; ++i) {
      pu[i].reserve(2 * steps + 1);
      py[i].reserve(2 * steps + 1);
      for (int j = 0; j <= 2 * steps; ++j) {
        double t = 0.5 * dt * j;
        pu[i].push_back(interp_stamp(fams[i], fams[i].phi_u, t));
        py[i].push_back(interp_stamp(fams[i], fams[i].phi_y, t));
      }
    }

    for (int run = 0; run < 10; ++run) {
      SmoothMat usig = smooth_mat(rng, m, 1, 0.5);
      std::vector<Vec> u_half(2 * steps + 1);
      for (int j = 0; j <= 2 * steps; ++j) u_half[j] = usig.at(0.5 * dt * j);

      std::vector<Vec> x(count);
      for (int i = 0; i < count; ++i) x[i] = Vec::Zero(subs[i].sys.n_x());

      std::vector<Vec> us(steps + 1), ys(steps + 1);
      auto output = [&](int j, const std::vector<Vec>& xs) {
        Vec y = Vec::Zero(m);
        for (int i = 0; i < count; ++i) {
          Vec ui = pu[i][j] * u_half[j];
          y += py[i][j] * (subs[i].sys.c * xs[i] + subs[i].sys.d * ui);
        }
        return y;
      };
      us[0] = u_half[0];
      ys[0] = output(0, x);

      std::vector<Vec> k1(count), k2(count), k3(count), k4(count), xt(count);
      for (int k = 0; k < steps; ++k) {
        auto deriv = [&](int j, const std::vector<Vec>& xs, std::vector<Vec>& out) {
          for (int i = 0; i < count; ++i)
            out[i] = subs[i].sys.a * xs[i] + subs[i].sys.b * (pu[i][j] * u_half[j]);
        };
        deriv(2 * k, x, k1);
        for (int i = 0; i < count; ++i) xt[i] = x[i] + 0.5 * dt * k1[i];
        deriv(2 * k + 1, xt, k2);
        for (int i = 0; i < count; ++i) xt[i] = x[i] + 0.5 * dt * k2[i];
        deriv(2 * k + 1, xt, k3);
        for (int i = 0; i < count; ++i) xt[i] = x[i] + dt * k3[i];
        deriv(2 * k + 2, xt, k4);
        for (int i = 0; i < count; ++i)
          x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        us[k + 1] = u_half[2 * k + 2];
        ys[k + 1] = output(2 * k + 2, x);
      }

      SampledSignal u_s(sim_grid, us), y_s(sim_grid, ys);
      Vec prefix = supply_prefix(u_s, y_s, rep.composed);
      min_prefix = std::min(min_prefix, prefix.minCoeff());
      if (verify_dissipation(rep.composed, u_s, y_s, 0.0, 0.0, 1e-6)) ++verified;
    }
  }

  double wall = timer.s();
  line("subsystem certificates, residual <= 1e-7", worst_resid <= 1e-7,
       fmt("max residual %.3e", worst_resid));
  line("1000 runs, composed supply prefix >= -1e-6", min_prefix >= -1e-6,
       fmt("min prefix %.3e, verified %d/1000", min_prefix, verified));
  line("wall time < 120 s", wall < 120.0, fmt("%.1f s", wall));
  return g_failures ? 1 : 0;
}

// ---------------------------------------------------------------------------
// criterion 3: scalar-scheduled base cases match their closed forms
// ---------------------------------------------------------------------------

int run_c3() {
  Timer timer;
  const int n = 2, stamps = 12001;
  Vec grid(stamps);
  for (int k = 0; k < stamps; ++k) grid[k] = 1e-3 * k;

  // scalar families: both gains are s_i(t) I_n
  std::vector<SchedulingFamily> fams;
  Mat sample(stamps, 3);
  for (int i = 0; i < 3; ++i) {
    std::vector<Mat> pu(stamps), py(stamps);
    for (int k = 0; k < stamps; ++k) {
      double s = scheduling_signals(grid[k])[i];
      sample(k, i) = s;
      pu[k] = s * Mat::Identity(n, n);
      py[k] = s * Mat::Identity(n, n);
    }
    fams.emplace_back(i, grid, pu, py);
  }

  // envelope quantities recomputed straight from the signal samples
  Vec sig_bar(3), nu_bar(3);
  double sup_sum = 0.0, inf_masked = 1e300;
  for (int i = 0; i < 3; ++i) {
    sig_bar[i] = sample.col(i).maxCoeff();
    // the gain floor ranges over every stamp; each window closes somewhere,
    // so the floor is zero and the narrow conic branches get no credit
    nu_bar[i] = sample.col(i).minCoeff();
  }
  for (int k = 0; k < stamps; ++k) {
    double sum = 0.0, masked = 0.0;
    for (int i = 0; i < 3; ++i) {
      double s = sample(k, i);
      sum += s * s;
      if (s > 1e-8 * std::max(s, 1.0)) masked += s * s;
    }
    sup_sum = std::max(sup_sum, sum);
    inf_masked = std::min(inf_masked, masked);
  }

  auto rel = [](double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
  };

  {
    std::vector<SpecialCase> p = {SpecialCase::isp(0.4), SpecialCase::isp(0.25),
                                  SpecialCase::isp(0.6)};
    auto rep = compose_special(Kind::ISP, p, fams, n);
    double want = 0.25 * inf_masked;
    double err = rel(rep.label.delta, want);
    err = std::max(err, rel(-rep.composed.r(0, 0), want));
    err = std::max(err, rel(rep.composed.s(0, 0), 0.5));
    err = std::max(err, std::abs(rep.composed.r(0, 1)));
    bool ok = err <= 1e-12 && rep.label.kind == Kind::ISP;
    line("ISP closed form", ok, fmt("delta %.12g, err %.2e", rep.label.delta, err));
  }
  {
    std::vector<SpecialCase> p = {SpecialCase::osp(1.2), SpecialCase::osp(0.8),
                                  SpecialCase::osp(2.0)};
    auto rep = compose_special(Kind::OSP, p, fams, n);
    double want = 0.8 / sup_sum;
    double err = rel(rep.label.epsilon, want);
    err = std::max(err, rel(-rep.composed.q(0, 0), want));
    bool ok = err <= 1e-12 && rep.label.kind == Kind::OSP;
    line("OSP closed form", ok, fmt("eps %.12g, err %.2e", rep.label.epsilon, err));
  }
  {
    std::vector<SpecialCase> p = {SpecialCase::finite_l2(2.0), SpecialCase::finite_l2(3.0),
                                  SpecialCase::finite_l2(1.5)};
    auto rep = compose_special(Kind::FiniteL2Gain, p, fams, n);
    double want = 3.0 * sup_sum;
    double err = rel(rep.label.gamma, want);
    err = std::max(err, rel(rep.composed.r(0, 0), want * want));
    err = std::max(err, rel(-rep.composed.q(0, 0), 1.0));
    bool ok = err <= 1e-12 && rep.label.kind == Kind::FiniteL2Gain;
    line("L2 closed form", ok, fmt("gamma %.12g, err %.2e", rep.label.gamma, err));
  }
  {
    std::vector<SpecialCase> p = {SpecialCase::conic(-3.0, 1.0), SpecialCase::conic(-2.0, 2.0),
                                  SpecialCase::conic(0.5, 4.0)};
    auto rep = compose_special(Kind::Conic, p, fams, n);
    double c_hat = 0.0, sum_r2 = 0.0;
    for (int i = 0; i < 3; ++i) {
      double sb = sig_bar[i], nb = nu_bar[i], ci = p[i].c, ri = p[i].r;
      c_hat += ci * sb * sb;
      // with equal envelopes on both sides the two wide-sector branches agree
      double rbar = (ri > std::abs(ci))
                        ? sb * sb * ri
                        : sb * std::sqrt(nb * nb * ri * ri + (sb * sb - nb * nb) * ci * ci);
      sum_r2 += rbar * rbar;
    }
    double r_hat = std::sqrt(3.0 * sum_r2);
    double err = rel(rep.label.c, c_hat);
    err = std::max(err, rel(rep.label.r, r_hat));
    err = std::max(err, rel(rep.composed.s(0, 0), c_hat));
    err = std::max(err, rel(rep.composed.r(0, 0), r_hat * r_hat - c_hat * c_hat));
    bool ok = err <= 1e-12 && rep.label.kind == Kind::Conic;
    line("conic closed form", ok,
         fmt("c %.12g r %.12g, err %.2e", rep.label.c, rep.label.r, err));
  }
  line("wall time", timer.s() < 30.0, fmt("%.1f s", timer.s()));
  return g_failures ? 1 : 0;
}

// ---------------------------------------------------------------------------
// shared plant fixtures (criteria 4..6)
// ---------------------------------------------------------------------------

PlantModel table_model() {
  Vec len(3), len_m(3), mass(3), mass_m(3), damp(3);
  len << 1.10, 0.60, 0.50;
  len_m << 1.21, 0.54, 0.55;
  mass << 2.00, 0.90, 0.30;
  mass_m << 2.40, 0.72, 0.36;
  damp << 5.0, 2.5, 2.5;
  Mat kp = Eigen::Vector3d(5.0, 35.0, 35.0).asDiagonal();
  return PlantModel(len, len_m, mass, mass_m, damp, kp);
}

Vec deg3(double a, double b, double c) {
  Vec q(3);
  q << a, b, c;
  return q * (M_PI / 180.0);
}

std::vector<Vec> design_poses() {
  return {deg3(0, 160, -90), deg3(0, 45, 45), deg3(0, -90, 160)};
}

QsrTriple plant_triple() {
  Mat q = -Eigen::Vector3d(5.0, 2.5, 2.5).asDiagonal().toDenseMatrix();
  return QsrTriple(q, 0.5 * PlantModel::b_hat(), Mat::Zero(2, 2));
}

// ---------------------------------------------------------------------------
// criterion 4: every design point certifies and closes the loop
// ---------------------------------------------------------------------------

int run_c4() {
  Timer timer;
  auto model = table_model();
  auto bank = synthesize_bank(model, design_poses(), LqrWeights::defaults());
  QsrTriple plant = plant_triple();

  double worst_resid = 0.0, worst_eig = -1e300;
  for (const auto& sub : bank) {
    worst_resid = std::max(worst_resid, std::abs(sub.residual_max_eig));
    LtiSystem closed(sub.a_c, sub.b_c, sub.c_c, Mat::Zero(2, 3));
    double again = dissipativity_residual(closed, sub.triple(), sub.p).max_eig;
    worst_resid = std::max(worst_resid, again);
    auto cert = stability_check(plant, sub.triple(), 1.0);
    worst_eig = std::max(worst_eig, cert.block_max_eig);
  }
  line("bank certificates, residual <= 1e-7", worst_resid <= 1e-7,
       fmt("max residual %.3e", worst_resid));
  line("per-point loop certificate < -1e-9", worst_eig < -1e-9,
       fmt("max block eig %.6g", worst_eig));

  Vec grid(12001);
  for (int k = 0; k < 12001; ++k) grid[k] = 1e-3 * k;
  auto rep = controller_bank_compose(bank, example_families(grid));
  auto cert = stability_check(plant, rep.composed, 1.0);
  line("scheduled-loop certificate < -1e-9", cert.feasible && cert.block_max_eig < -1e-9,
       fmt("eps %.6g, block eig %.6g", rep.eps, cert.block_max_eig));
  line("wall time", timer.s() < 60.0, fmt("%.1f s", timer.s()));
  return g_failures ? 1 : 0;
}

// ---------------------------------------------------------------------------
/// criterion 5: simulation energy accounting
// ---------------------------------------------------------------------------

int run_c5() {
  Timer timer;
  // undamped unforced run keeps kinetic energy
  {
    Vec len(3), mass(3);
    len << 1.10, 0.60, 0.50;
    mass << 2.00, 0.90, 0.30;
    PlantModel lossless(len, len, mass, mass, Vec::Zero(3), Mat::Zero(3, 3));
    Waypoints rest;
    rest.times = Vec::Zero(1);
    Vec q0(3), qd0(3);
    q0 << 0.4, 0.8, -0.5;
    qd0 << 0.3, -0.2, 0.1;
    rest.q = {q0};
    SimOptions opt;
    opt.dt = 1e-3;
    opt.horizon = 10.0;
    opt.q0 = q0;
    opt.qd0 = qd0;
    auto res = simulate_closed_loop(lossless, {}, SchedMode::None, nullptr, rest, opt);
    double v0 = res.storage[0], drift = 0.0;
    for (int k = 0; k < res.storage.size(); ++k)
      drift = std::max(drift, std::abs(res.storage[k] - v0));
    line("energy drift < 1e-6 relative over 10 s", drift / v0 < 1e-6,
         fmt("drift %.3e", drift / v0));
  }
  // storage matches the supply integral for a constant target
  {
    auto model = table_model();
    auto bank = synthesize_bank(model, design_poses(), LqrWeights::defaults());
    Waypoints rest;
    rest.times = Vec::Zero(1);
    rest.q = {design_poses()[1]};
    SimOptions opt;
    opt.dt = 1e-4;  // observer modes near -8e3 1/s put dt=1e-3 outside RK4 stability
    opt.horizon = 6.0;
    Vec off(3);
    off << 0.15, -0.2, 0.25;
    opt.q0 = design_poses()[1] + off;
    auto res = simulate_closed_loop(model, bank, SchedMode::Identity, nullptr, rest, opt);
    double v0 = res.storage[0], worst = 0.0;
    for (int k = 0; k < res.storage.size(); ++k)
      worst = std::max(worst, std::abs(res.storage[k] - v0 - res.supply[k]));
    double bound = 1e-5 * std::max(1.0, std::abs(v0));
    line("storage-supply identity <= 1e-5 scaled", worst <= bound,
         fmt("max gap %.3e (bound %.3e)", worst, bound));
  }
  // rate coupling stays workless
  {
    auto model = table_model();
    std::mt19937_64 rng(55);
    std::normal_distribution<double> nd;
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
      Vec q(3), qd(3);
      for (int i = 0; i < 3; ++i) {
        q[i] = nd(rng);
        qd[i] = nd(rng);
      }
      auto parts = mass_matrix_partials(model, q);
      Mat mdot = qd[0] * parts[0] + qd[1] * parts[1] + qd[2] * parts[2];
      double fn = qd.dot(nonlinear_forces(model, q, qd));
      double md = 0.5 * qd.dot(mdot * qd);
      worst = std::max(worst, std::abs(fn + md) / std::max(1.0, std::abs(fn) + std::abs(md)));
    }
    line("power balance <= 1e-10 scaled, 1e4 states", worst <= 1e-10,
         fmt("max %.3e", worst));
  }
  line("wall time", timer.s() < 120.0, fmt("%.1f s", timer.s()));
  return g_failures ? 1 : 0;
}

// ---------------------------------------------------------------------------
// criterion 6: the three-way comparison run, via the installed CLI
// ---------------------------------------------------------------------------

int run_c6(const std::string& gsctl, const std::string& scenario) {
  Timer timer;
  auto outdir = std::filesystem::temp_directory_path() / "qsched_c6";
  std::filesystem::create_directories(outdir);
  std::string cmd = "\"" + gsctl + "\" simulate --compare \"" + scenario +
                    "\" --output-dir \"" + outdir.string() + "\" 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    line("launch CLI", false, "popen failed");
    return 1;
  }
  char buf[4096];
  while (fgets(buf, sizeof buf, pipe)) out += buf;
  int status = pclose(pipe);
  double wall = timer.s();

  std::map<std::string, double> kv;
  std::istringstream ss(out);
  std::string ln;
  while (std::getline(ss, ln)) {
    auto eq = ln.find('=');
    if (eq == std::string::npos) continue;
    std::string key = ln.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    try {
      kv[key] = std::stod(ln.substr(eq + 1));
    } catch (...) {
    }
  }

  line("CLI exits cleanly", status == 0, fmt("exit status %d", status));
  auto get = [&](const std::string& k) -> double {
    auto it = kv.find(k);
    if (it == kv.end()) {
      line("report key " + k, false, "missing");
      return std::nan("");
    }
    return it->second;
  };

  const char* modes[3] = {"unscheduled", "scalar", "matrix"};
  double ang[3][3], rate[3][3], tau[3];
  for (int mth = 0; mth < 3; ++mth) {
    for (int j = 0; j < 3; ++j) {
      ang[mth][j] = get(fmt("rms_angle_deg_%s_j%d", modes[mth], j + 1));
      rate[mth][j] = get(fmt("rms_rate_deg_%s_j%d", modes[mth], j + 1));
    }
    tau[mth] = get(fmt("tau_max_%s", modes[mth]));
  }

  bool sane = true;
  for (int mth = 0; mth < 3; ++mth)
    for (int j = 0; j < 3; ++j)
      sane = sane && ang[mth][j] > 0.0 && ang[mth][j] <= 5.0;
  line("all RMS angle errors in (0, 5] deg", sane, "");
  bool bounded = tau[0] < 50.0 && tau[1] < 50.0 && tau[2] < 50.0;
  line("peak torques bounded (< 50 N m)", bounded,
       fmt("%.2f / %.2f / %.2f", tau[0], tau[1], tau[2]));

  for (int j = 1; j <= 2; ++j) {  // joints 2 and 3
    double margin;
    margin = (ang[0][j] - ang[1][j]) / ang[0][j] * 100.0;
    line(fmt("angle j%d: scalar < unscheduled", j + 1), ang[1][j] < ang[0][j],
         fmt("%+.2f%%", margin));
    margin = (ang[1][j] - ang[2][j]) / ang[1][j] * 100.0;
    line(fmt("angle j%d: matrix < scalar", j + 1), ang[2][j] < ang[1][j],
         fmt("%+.2f%%", margin));
    margin = (rate[0][j] - rate[1][j]) / rate[0][j] * 100.0;
    line(fmt("rate  j%d: scalar < unscheduled", j + 1), rate[1][j] < rate[0][j],
         fmt("%+.2f%%", margin));
    margin = (rate[1][j] - rate[2][j]) / rate[1][j] * 100.0;
    line(fmt("rate  j%d: matrix < scalar", j + 1), rate[2][j] < rate[1][j],
         fmt("%+.2f%%", margin));
  }
  line("wall time < 60 s", wall < 60.0, fmt("%.1f s", wall));
  return g_failures ? 1 : 0;
}

// ---------------------------------------------------------------------------
// criterion 7: random-coefficient solver checks
// ---------------------------------------------------------------------------

int run_c7() {
  Timer timer;
  std::mt19937_64 rng(707);
  std::uniform_int_distribution<int> nsz(1, 12), msz(1, 4);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  double worst_lyap = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    int n = nsz(rng);
    Mat a = hurwitz(rng, n);
    Mat m = symmetric_part(rand_mat(rng, n, n, 2.0));
    Mat p = solve_lyapunov(a, m);
    Mat res = p * a + a.transpose() * p - m;
    double scale = std::max(1.0, m.norm() + 2.0 * (p * a).norm());
    worst_lyap = std::max(worst_lyap, res.norm() / scale);
  }
  line("500 Lyapunov solves, residual <= 1e-9 scaled", worst_lyap <= 1e-9,
       fmt("max %.3e", worst_lyap));

  double worst_are = 0.0;
  int spd_fail = 0, unstable = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int n = nsz(rng), m = msz(rng);
    Mat a = (trial % 2 == 0) ? hurwitz(rng, n) : rand_mat(rng, n, n);
    Mat b = rand_mat(rng, n, m);
    Mat gq = rand_mat(rng, n, n, 0.7);
    Mat q = gq.transpose() * gq + 0.1 * Mat::Identity(n, n);
    Mat gr = rand_mat(rng, m, m, 0.7);
    Mat r = gr.transpose() * gr + 0.5 * Mat::Identity(m, m);
    auto sol = solve_are(a, b, q, r);
    Mat res = a.transpose() * sol.p + sol.p * a -
              sol.p * b * r.llt().solve(b.transpose() * sol.p) + q;
    double scale = std::max(1.0, 2.0 * (sol.p * a).norm() + q.norm() +
                                     (sol.p * b * r.llt().solve(b.transpose() * sol.p)).norm());
    worst_are = std::max(worst_are, res.norm() / scale);
    if (sym_eig_min(sol.p) < -1e-9) ++spd_fail;
    if (spectral_abscissa(a - b * sol.k) >= 0.0) ++unstable;
  }
  line("500 regulator solves, residual <= 1e-8 scaled", worst_are <= 1e-8,
       fmt("max %.3e", worst_are));
  line("solutions PSD and stabilizing", spd_fail == 0 && unstable == 0,
       fmt("%d indefinite, %d unstable", spd_fail, unstable));
  double wall = timer.s();
  line("wall time < 30 s", wall < 30.0, fmt("%.1f s", wall));
  return g_failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <criterion 1..7> [gsctl scenario]\n");
    return 2;
  }
  int n = std::atoi(argv[1]);
  int rc = 1;
  std::printf("criterion %d\n", n);
  switch (n) {
    case 1: rc = run_c1(); break;
    case 2: rc = run_c2(); break;
    case 3: rc = run_c3(); break;
    case 4: rc = run_c4(); break;
    case 5: rc = run_c5(); break;
    case 6:
      if (argc < 4) {
        std::fprintf(stderr, "criterion 6 needs the CLI path and a scenario file\n");
        return 2;
      }
      rc = run_c6(argv[2], argv[3]);
      break;
    case 7: rc = run_c7(); break;
    default:
      std::fprintf(stderr, "unknown criterion %d\n", n);
      return 2;
  }
  std::printf("criterion %d: %s\n", n, rc == 0 ? "PASS" : "FAIL");
  return rc;
}
