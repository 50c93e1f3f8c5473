#include "qsched/robot.hpp"

#include "qsched/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qsched {

namespace {

using M3 = Eigen::Matrix3d;
using V3 = Eigen::Vector3d;

// Lumped coefficients of the chain inertia for uniform rods: a_i carry the
// diagonal, b_ij the angle couplings.  Centers sit at half length.
struct MassCoeffs {
  double a1, a2, a3, b12, b13, b23;
};

MassCoeffs mass_coeffs(const Vec& mass, const Vec& len) {
  const double r1 = 0.5 * len[0], r2 = 0.5 * len[1], r3 = 0.5 * len[2];
  MassCoeffs co;
  co.a1 = mass[0] * len[0] * len[0] / 12.0 + mass[0] * r1 * r1 +
          (mass[1] + mass[2]) * len[0] * len[0];
  co.a2 = mass[1] * len[1] * len[1] / 12.0 + mass[1] * r2 * r2 +
          mass[2] * len[1] * len[1];
  co.a3 = mass[2] * len[2] * len[2] / 12.0 + mass[2] * r3 * r3;
  co.b12 = (mass[1] * r2 + mass[2] * len[1]) * len[0];
  co.b13 = mass[2] * r3 * len[0];
  co.b23 = mass[2] * r3 * len[1];
  return co;
}

M3 mass_m3(const MassCoeffs& co, const V3& q) {
  const double c2 = std::cos(q[1]), c3 = std::cos(q[2]);
  const double c23 = std::cos(q[1] + q[2]);
  M3 m;
  m(0, 0) = co.a1 + co.a2 + co.a3 + 2 * co.b12 * c2 + 2 * co.b13 * c23 +
            2 * co.b23 * c3;
  m(0, 1) = m(1, 0) = co.a2 + co.a3 + co.b12 * c2 + co.b13 * c23 + 2 * co.b23 * c3;
  m(0, 2) = m(2, 0) = co.a3 + co.b13 * c23 + co.b23 * c3;
  m(1, 1) = co.a2 + co.a3 + 2 * co.b23 * c3;
  m(1, 2) = m(2, 1) = co.a3 + co.b23 * c3;
  m(2, 2) = co.a3;
  return m;
}

// dM/dq2 and dM/dq3; dM/dq1 vanishes because the base angle is cyclic.
void partials_m3(const MassCoeffs& co, const V3& q, M3& d2, M3& d3) {
  const double s2 = std::sin(q[1]), s3 = std::sin(q[2]);
  const double s23 = std::sin(q[1] + q[2]);
  d2.setZero();
  d2(0, 0) = -2 * co.b12 * s2 - 2 * co.b13 * s23;
  d2(0, 1) = d2(1, 0) = -co.b12 * s2 - co.b13 * s23;
  d2(0, 2) = d2(2, 0) = -co.b13 * s23;
  d3.setZero();
  d3(0, 0) = -2 * co.b13 * s23 - 2 * co.b23 * s3;
  d3(0, 1) = d3(1, 0) = -co.b13 * s23 - 2 * co.b23 * s3;
  d3(0, 2) = d3(2, 0) = -co.b13 * s23 - co.b23 * s3;
  d3(1, 1) = -2 * co.b23 * s3;
  d3(1, 2) = d3(2, 1) = -co.b23 * s3;
}

// -C(q, qd) qd with C in Christoffel form, so dM/dt - 2C stays skew.
V3 rate_force(const MassCoeffs& co, const V3& q, const V3& qd) {
  M3 t[3];
  t[0].setZero();
  partials_m3(co, q, t[1], t[2]);
  M3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k)
        acc += (t[k](i, j) + t[j](i, k) - t[i](j, k)) * qd[k];
      c(i, j) = 0.5 * acc;
    }
  return -(c * qd);
}

double quartic_shoulder(double x) {
  const double x2 = x * x;
  return 1.0 - x2 * x2;
}

Mat demo_mixer() {
  Mat v = Mat::Zero(3, 3);
  v(0, 2) = 1.0;
  v(1, 0) = 1.0;
  v(2, 1) = 1.0;
  return v;
}

// Free blocks of the matrix schedule; the top-right 2x1 stays zero so the
// gains commute with the bank cross weight.  Family 1 keeps its middle row
// zero and is therefore never full rank on the input side.
Mat demo_zbar(int i, const Vec& s) {
  Mat z = Mat::Zero(3, 3);
  switch (i) {
    case 0:
      z(0, 0) = s[0];
      z(0, 1) = -0.5 * s[0];
      z(2, 0) = s[2];
      z(2, 1) = s[1];
      z(2, 2) = s[0];
      break;
    case 1:
      z(0, 0) = s[0] + s[1];
      z(1, 1) = s[1] + s[2];
      z(2, 2) = s[1];
      break;
    default:
      z(0, 0) = s[2];
      z(1, 0) = s[0];
      z(1, 1) = s[2];
      z(2, 2) = s[1] + s[2];
  }
  return z;
}

void demo_gain_pair(int i, double t, bool scalar_only, Mat& pu, Mat& py) {
  const Vec s = scheduling_signals(t);
  if (scalar_only) {
    pu = s[i] * Mat::Identity(3, 3);
    py = s[i] * Mat::Identity(2, 2);
    return;
  }
  static const Mat v = demo_mixer();
  const Mat z = demo_zbar(i, s);
  pu = v * z * v.transpose();
  py = z.topLeftCorner(2, 2).transpose();
}

void interp_gains(const SchedulingFamily& f, double t, Mat& pu, Mat& py) {
  const Vec& g = f.grid;
  const int n = static_cast<int>(g.size());
  if (t <= g[0]) {
    pu = f.phi_u.front();
    py = f.phi_y.front();
    return;
  }
  if (t >= g[n - 1]) {
    pu = f.phi_u.back();
    py = f.phi_y.back();
    return;
  }
  const int hi = static_cast<int>(std::upper_bound(g.data(), g.data() + n, t) - g.data());
  const double w = (t - g[hi - 1]) / (g[hi] - g[hi - 1]);
  pu = (1.0 - w) * f.phi_u[hi - 1] + w * f.phi_u[hi];
  py = (1.0 - w) * f.phi_y[hi - 1] + w * f.phi_y[hi];
}

}  // namespace

PlantModel::PlantModel(Vec length_in, Vec length_measured_in, Vec mass_in,
                       Vec mass_measured_in, Vec damping_in, Mat kp_in)
    : length(std::move(length_in)),
      length_measured(std::move(length_measured_in)),
      mass(std::move(mass_in)),
      mass_measured(std::move(mass_measured_in)),
      damping(std::move(damping_in)),
      kp(std::move(kp_in)) {
  if (length.size() != 3 || length_measured.size() != 3 || mass.size() != 3 ||
      mass_measured.size() != 3)
    throw dim_error("the arm has three links");
  if (damping.size() != 3) throw dim_error("damping wants one entry per joint");
  if (kp.rows() != 3 || kp.cols() != 3) throw dim_error("the wrap gain is 3x3");
  for (int i = 0; i < 3; ++i) {
    if (!(length[i] > 0.0) || !(length_measured[i] > 0.0))
      throw param_error("link lengths must be positive");
    if (!(mass[i] > 0.0) || !(mass_measured[i] > 0.0))
      throw param_error("link masses must be positive");
    if (damping[i] < 0.0) throw param_error("joint damping cannot be negative");
    if (kp(i, i) < 0.0) throw param_error("the wrap gain cannot pull outward");
    for (int j = 0; j < 3; ++j)
      if (i != j && kp(i, j) != 0.0) throw param_error("the wrap gain must be diagonal");
  }
}

Mat PlantModel::b_hat() {
  Mat b = Mat::Zero(3, 2);
  b(1, 0) = 1.0;
  b(2, 1) = 1.0;
  return b;
}

Mat mass_matrix(const PlantModel& model, const Vec& q, bool use_measured) {
  if (q.size() != 3) throw dim_error("pose wants three joint angles");
  const MassCoeffs co = use_measured
                            ? mass_coeffs(model.mass_measured, model.length_measured)
                            : mass_coeffs(model.mass, model.length);
  return mass_m3(co, V3(q));
}

std::vector<Mat> mass_matrix_partials(const PlantModel& model, const Vec& q) {
  if (q.size() != 3) throw dim_error("pose wants three joint angles");
  M3 d2, d3;
  partials_m3(mass_coeffs(model.mass, model.length), V3(q), d2, d3);
  return {Mat::Zero(3, 3), Mat(d2), Mat(d3)};
}

Vec nonlinear_forces(const PlantModel& model, const Vec& q, const Vec& q_dot) {
  if (q.size() != 3 || q_dot.size() != 3) throw dim_error("pose wants three joint angles");
  return rate_force(mass_coeffs(model.mass, model.length), V3(q), V3(q_dot));
}

TrajSample quintic_trajectory(const Waypoints& wp, double t) {
  const Vec& ts = wp.times;
  const int n = static_cast<int>(ts.size());
  if (n < 1 || static_cast<int>(wp.q.size()) != n)
    throw dim_error("waypoint stamps and poses must pair up");
  const Eigen::Index dim = wp.q[0].size();
  for (const Vec& qi : wp.q)
    if (qi.size() != dim) throw dim_error("waypoints mix dimensions");
  for (int i = 0; i + 1 < n; ++i)
    if (!(ts[i + 1] > ts[i])) throw param_error("waypoint stamps must increase");

  TrajSample out;
  out.rate = Vec::Zero(dim);
  if (t <= ts[0]) {
    out.pos = wp.q[0];
    return out;
  }
  if (t >= ts[n - 1]) {
    out.pos = wp.q[n - 1];
    return out;
  }
  const int k =
      static_cast<int>(std::upper_bound(ts.data(), ts.data() + n, t) - ts.data()) - 1;
  const double seg = ts[k + 1] - ts[k];
  const double eta = (t - ts[k]) / seg;
  const double e2 = eta * eta;
  const double p = ((6.0 * eta - 15.0) * eta + 10.0) * (e2 * eta);
  const double pd = ((30.0 * eta - 60.0) * eta + 30.0) * e2 / seg;
  out.pos = wp.q[k] + p * (wp.q[k + 1] - wp.q[k]);
  out.rate = pd * (wp.q[k + 1] - wp.q[k]);
  return out;
}

Vec scheduling_signals(double t) {
  Vec s(3);
  s[0] = t < 1.0 ? 1.0 : (t <= 4.0 ? quartic_shoulder((t - 1.0) / 3.0) : 0.0);
  s[1] = (t >= 1.0 && t <= 9.0) ? quartic_shoulder((t - 5.0) / 4.0) : 0.0;
  s[2] = t < 7.0 ? 0.0 : (t <= 9.0 ? quartic_shoulder((t - 9.0) / 2.0) : 1.0);
  return s;
}

std::vector<SchedulingFamily> example_families(const Vec& grid) {
  std::vector<SchedulingFamily> out;
  out.reserve(3);
  for (int i = 0; i < 3; ++i) {
    std::vector<Mat> pu(grid.size()), py(grid.size());
    for (Eigen::Index k = 0; k < grid.size(); ++k)
      demo_gain_pair(i, grid[k], false, pu[k], py[k]);
    out.emplace_back(i, grid, std::move(pu), std::move(py));
  }
  return out;
}

std::vector<SchedulingFamily> example_families_scalar(const Vec& grid) {
  std::vector<SchedulingFamily> out;
  out.reserve(3);
  for (int i = 0; i < 3; ++i) {
    std::vector<Mat> pu(grid.size()), py(grid.size());
    for (Eigen::Index k = 0; k < grid.size(); ++k)
      demo_gain_pair(i, grid[k], true, pu[k], py[k]);
    out.emplace_back(i, grid, std::move(pu), std::move(py));
  }
  return out;
}

SimResult simulate_closed_loop(const PlantModel& model,
                               const std::vector<Subcontroller>& bank, SchedMode mode,
                               const std::vector<SchedulingFamily>* families,
                               const Waypoints& wp, const SimOptions& opt) {
  if (!(opt.dt > 0.0) || !std::isfinite(opt.dt))
    throw param_error("step size must be positive");
  if (!(opt.horizon > 0.0) || !std::isfinite(opt.horizon))
    throw param_error("horizon must be positive");
  if (opt.output_stride < 1) throw param_error("output stride must be at least 1");
  const long steps = std::lround(opt.horizon / opt.dt);
  if (steps < 1) throw param_error("horizon is shorter than one step");

  const int n_c = mode == SchedMode::None ? 0 : static_cast<int>(bank.size());
  if ((mode == SchedMode::Scalar || mode == SchedMode::Matrix) && n_c != 3)
    throw param_error("the demo schedules drive exactly three controllers");
  if (mode == SchedMode::File) {
    if (families == nullptr) throw param_error("file scheduling needs sampled families");
    if (static_cast<int>(families->size()) != n_c)
      throw dim_error("one family per controller");
  }

  std::vector<int> off(n_c), nx(n_c);
  int nz = 6;
  for (int a = 0; a < n_c; ++a) {
    const Subcontroller& c = bank[a];
    if (c.a_c.rows() != c.a_c.cols()) throw dim_error("controller matrix must be square");
    if (c.b_c.rows() != c.a_c.rows() || c.b_c.cols() != 3)
      throw dim_error("controller input map must take the three joint rates");
    if (c.c_c.cols() != c.a_c.rows() || c.c_c.rows() != 2)
      throw dim_error("controller output map must feed the two actuated joints");
    if (mode == SchedMode::File) {
      const SchedulingFamily& f = (*families)[a];
      if (f.n_u() != 3 || f.n_y() != 2)
        throw dim_error("family gains must be 3x3 on the input side, 2x2 on the output");
    }
    off[a] = nz;
    nx[a] = static_cast<int>(c.a_c.rows());
    nz += nx[a];
  }

  const MassCoeffs co = mass_coeffs(model.mass, model.length);
  const Mat bhat = PlantModel::b_hat();
  const V3 damp = model.damping;
  const M3 kp = model.kp;

  Vec z = Vec::Zero(nz);
  {
    const Vec q0 = opt.q0 ? *opt.q0 : quintic_trajectory(wp, 0.0).pos;
    const Vec qd0 = opt.qd0 ? *opt.qd0 : Vec(Vec::Zero(3));
    if (q0.size() != 3 || qd0.size() != 3)
      throw dim_error("initial state wants three joints");
    z.head(3) = q0;
    z.segment(3, 3) = qd0;
  }

  struct Stage {
    V3 th, thd;
    std::vector<Mat> pu, py;
  };
  auto make_stage = [&] {
    Stage st;
    st.th.setZero();
    st.thd.setZero();
    st.pu.assign(n_c, Mat::Identity(3, 3));
    st.py.assign(n_c, Mat::Identity(2, 2));
    return st;
  };
  Stage st_a = make_stage(), st_b = make_stage(), st_c = make_stage();

  auto fill_stage = [&](double t, Stage& st) {
    const TrajSample tr = quintic_trajectory(wp, t);
    st.th = tr.pos;
    st.thd = tr.rate;
    switch (mode) {
      case SchedMode::Scalar:
      case SchedMode::Matrix:
        for (int a = 0; a < n_c; ++a)
          demo_gain_pair(a, t, mode == SchedMode::Scalar, st.pu[a], st.py[a]);
        break;
      case SchedMode::File:
        for (int a = 0; a < n_c; ++a) interp_gains((*families)[a], t, st.pu[a], st.py[a]);
        break;
      default:
        break;  // None and Identity keep constant gains
    }
  };

  Vec u_c(3), u_bar(2), y2(2), u3(3), bu(3);
  Vec dz1(nz), dz2(nz), dz3(nz), dz4(nz), zt(nz);
  V3 tau, e;
  auto deriv = [&](const Stage& st, const Vec& zz, Vec& dz) {
    const V3 q = zz.head(3);
    const V3 qd = zz.segment(3, 3);
    if (opt.rate_error_input)
      u_c = qd - st.thd;
    else
      u_c = qd;
    u_bar.setZero();
    for (int a = 0; a < n_c; ++a) {
      y2.noalias() = bank[a].c_c * zz.segment(off[a], nx[a]);
      u_bar.noalias() -= st.py[a] * y2;
    }
    e = q - st.th;
    tau.noalias() = bhat * u_bar;
    tau.noalias() -= kp * e;
    V3 rhs = rate_force(co, q, qd);
    rhs -= damp.cwiseProduct(qd);
    rhs += tau;
    dz.head(3) = qd;
    dz.segment(3, 3) = mass_m3(co, q).llt().solve(rhs);
    for (int a = 0; a < n_c; ++a) {
      u3.noalias() = st.pu[a] * u_c;
      dz.segment(off[a], nx[a]).noalias() = bank[a].a_c * zz.segment(off[a], nx[a]);
      dz.segment(off[a], nx[a]).noalias() += bank[a].b_c * u3;
    }
  };

  Vec sq_e = Vec::Zero(3), sq_ed = Vec::Zero(3);
  double tau_max = 0.0, supply_acc = 0.0, p_prev = 0.0;
  std::vector<double> rec_t, rec_v, rec_w;
  std::vector<Vec> rec_q, rec_qd, rec_th, rec_thd, rec_tau, rec_ub;
  const long n_rec = steps / opt.output_stride + 1;
  rec_t.reserve(n_rec);
  rec_v.reserve(n_rec);
  rec_w.reserve(n_rec);
  rec_q.reserve(n_rec);
  rec_qd.reserve(n_rec);
  rec_th.reserve(n_rec);
  rec_thd.reserve(n_rec);
  rec_tau.reserve(n_rec);
  rec_ub.reserve(n_rec);

  const double half = 0.5 * opt.dt;
  for (long k = 0; k <= steps; ++k) {
    const double t0 = static_cast<double>(2 * k) * half;
    fill_stage(t0, st_a);
    deriv(st_a, z, dz1);  // also refreshes e, tau, u_bar at the stamp

    const V3 q = z.head(3);
    const V3 qd = z.segment(3, 3);
    const V3 ed = qd - st_a.thd;
    sq_e += e.cwiseAbs2();
    sq_ed += ed.cwiseAbs2();
    tau_max = std::max(tau_max, tau.cwiseAbs().maxCoeff());
    bu.noalias() = bhat * u_bar;
    const double pw = qd.dot(bu) - qd.dot(damp.cwiseProduct(qd));
    if (k > 0) supply_acc += half * (p_prev + pw);
    p_prev = pw;

    if (k % opt.output_stride == 0) {
      rec_t.push_back(t0);
      rec_q.emplace_back(q);
      rec_qd.emplace_back(qd);
      rec_th.emplace_back(st_a.th);
      rec_thd.emplace_back(st_a.thd);
      rec_tau.emplace_back(tau);
      rec_ub.push_back(u_bar);
      rec_v.push_back(0.5 * qd.dot(mass_m3(co, q) * qd) + 0.5 * e.dot(kp * e));
      rec_w.push_back(supply_acc);
    }
    if (k == steps) break;

    fill_stage(static_cast<double>(2 * k + 1) * half, st_b);
    fill_stage(static_cast<double>(2 * k + 2) * half, st_c);
    zt = z + half * dz1;
    deriv(st_b, zt, dz2);
    zt = z + half * dz2;
    deriv(st_b, zt, dz3);
    zt = z + opt.dt * dz3;
    deriv(st_c, zt, dz4);
    z += (opt.dt / 6.0) * (dz1 + 2.0 * dz2 + 2.0 * dz3 + dz4);
    if (!z.allFinite() || z.cwiseAbs().maxCoeff() > 1e6)
      throw solver_error("state left the integration envelope at t=" +
                         fmt17(static_cast<double>(2 * k + 2) * half));
  }

  SimResult res;
  const Eigen::Index n_out = static_cast<Eigen::Index>(rec_t.size());
  res.t = Eigen::Map<const Vec>(rec_t.data(), n_out);
  res.q = std::move(rec_q);
  res.qd = std::move(rec_qd);
  res.th_d = std::move(rec_th);
  res.thd_d = std::move(rec_thd);
  res.tau = std::move(rec_tau);
  res.u_bar = std::move(rec_ub);
  res.storage = Eigen::Map<const Vec>(rec_v.data(), n_out);
  res.supply = Eigen::Map<const Vec>(rec_w.data(), n_out);
  res.sq_err = sq_e;
  res.sq_rate_err = sq_ed;
  res.n_samples = steps + 1;
  res.tau_max_abs = tau_max;
  return res;
}

RmsMetrics rms_metrics(const SimResult& res) {
  if (res.n_samples <= 0) throw param_error("metrics need at least one sample");
  const double scale = 180.0 / M_PI;
  RmsMetrics m;
  m.e_deg = (res.sq_err / static_cast<double>(res.n_samples)).cwiseSqrt() * scale;
  m.ed_deg = (res.sq_rate_err / static_cast<double>(res.n_samples)).cwiseSqrt() * scale;
  return m;
}

}  // namespace qsched
