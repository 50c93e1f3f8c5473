#pragma once

#include "qsched/linalg.hpp"
#include "qsched/scheduling.hpp"

#include <optional>
#include <vector>

namespace qsched {

struct Subcontroller;  // synthesis.hpp

// Three-link planar arm with joint damping and a proportional wrap
//   M(q) q'' + C(q,q') q' + D q' = B_hat u_bar - K_p (q - theta_d).
// Links are uniform rods.  The measured lengths/masses feed design-time
// models; the true ones drive simulation.
struct PlantModel {
  Vec length;           // true link lengths, m
  Vec length_measured;  // design copy
  Vec mass;             // true link masses, kg
  Vec mass_measured;
  Vec damping;          // joint damping diag(d1,d2,d3), N m s/rad
  Mat kp;               // proportional wrap, 3x3 diagonal, N m/rad

  PlantModel(Vec length, Vec length_measured, Vec mass, Vec mass_measured,
             Vec damping, Mat kp);

  // Actuation map: torque enters joints 2 and 3 only.
  static Mat b_hat();  // 3x2
};

// Configuration-dependent inertia, closed form for uniform rods.
Mat mass_matrix(const PlantModel& model, const Vec& q, bool use_measured);

// d M / d q_k stack (true parameters), k = 0..2; entry 0 is zero by the
// cyclic symmetry of the chain.
std::vector<Mat> mass_matrix_partials(const PlantModel& model, const Vec& q);

// Coriolis/centrifugal joint force -C(q, q') q' (true parameters,
// Christoffel form, so dM/dt - 2C stays skew).
Vec nonlinear_forces(const PlantModel& model, const Vec& q, const Vec& q_dot);

// Piecewise-quintic interpolation through waypoints with zero end rates and
// accelerations per segment; held flat before the first and after the last.
struct Waypoints {
  Vec times;
  std::vector<Vec> q;  // radians
};
struct TrajSample {
  Vec pos;
  Vec rate;
};
TrajSample quintic_trajectory(const Waypoints& wp, double t);

// The three overlapping activation windows used by the demo scenario
// (quartic shoulders, plateaus at 1).
Vec scheduling_signals(double t);

// Demo scheduling bank: three families on the given grid driven by
// scheduling_signals, built to commute with the cross weight of the
// synthesized controllers (s_c = b_hat^T / 2).  Scalar variant multiplies
// both sides by s_i; the matrix variant mixes channels and de-ranks family 1
// on its input side.
std::vector<SchedulingFamily> example_families(const Vec& grid);
std::vector<SchedulingFamily> example_families_scalar(const Vec& grid);

enum class SchedMode { None, Identity, Scalar, Matrix, File };

struct SimOptions {
  double dt = 1e-3;
  double horizon = 12.0;
  int output_stride = 1;
  bool rate_error_input = true;  // controllers see q' - theta_d'; false: raw q'
  std::optional<Vec> q0;         // default: theta_d(0)
  std::optional<Vec> qd0;        // default: zero
};

struct SimResult {
  Vec t;  // output stamps (strided)
  std::vector<Vec> q, qd, th_d, thd_d, tau;  // 3-vectors per output stamp
  std::vector<Vec> u_bar;                    // 2-vector per output stamp
  Vec storage;      // V = q'^T M q'/2 + e^T K_p e/2
  Vec supply;       // running integral of q'^T (B_hat u_bar - D q')
  Vec sq_err;       // per joint, sum over the full step grid of e^2 (rad^2)
  Vec sq_rate_err;  // same for q' - theta_d'
  long n_samples = 0;  // full-grid samples behind the sums (steps + 1)
  double tau_max_abs = 0.0;
};

// Monolithic RK4 roll-out of the plant plus the scheduled controller bank.
/// `families` backs SchedMode::File (sampled gains, linearly interpolated);
// the Scalar/Matrix modes evaluate their closed forms at the stage times and
// Identity runs the bank unscheduled.  None runs the bare wrapped plant
// (u_bar = 0, bank may be empty).  Divergence (any |state| > 1e6 or NaN)
// raises solver_error with the time stamp.
SimResult simulate_closed_loop(const PlantModel& model,
                               const std::vector<Subcontroller>& bank,
                               SchedMode mode,
                               const std::vector<SchedulingFamily>* families,
                               const Waypoints& wp, const SimOptions& opt);

// Joint-wise RMS tracking errors in degrees over the full step grid.
struct RmsMetrics {
  Vec e_deg;
  Vec ed_deg;
};
RmsMetrics rms_metrics(const SimResult& res);

}  // namespace qsched
