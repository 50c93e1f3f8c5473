#include "qsched/synthesis.hpp"

namespace qsched {

LqrWeights LqrWeights::defaults() {
  LqrWeights w;
  w.state_w = Vec(6);
  w.state_w << 15.0, 15.0, 15.0, 10.0, 10.0, 10.0;
  w.input_w = Vec(2);
  w.input_w << 25.0, 25.0;
  return w;
}

QsrTriple Subcontroller::triple() const {
  const int m = static_cast<int>(s_c.rows());
  const int q = static_cast<int>(s_c.cols());
  return QsrTriple(-eps * Mat::Identity(m, m), s_c, Mat::Zero(q, q));
}

LtiSystem linearize_prewrapped(const PlantModel& model, const Vec& q_bar) {
  if (q_bar.size() != 3) throw dim_error("pose must have three joint angles");
  Mat mi = mass_matrix(model, q_bar, true).inverse();
  Mat d = model.damping.asDiagonal();

  Mat a = Mat::Zero(6, 6);
  a.topRightCorner(3, 3) = Mat::Identity(3, 3);
  a.bottomLeftCorner(3, 3) = -mi * model.kp;
  a.bottomRightCorner(3, 3) = -mi * d;

  Mat b = Mat::Zero(6, 3);
  b.bottomRows(3) = mi;

  Mat c = Mat::Zero(3, 6);
  c.rightCols(3) = Mat::Identity(3, 3);

  return LtiSystem(a, b, c, Mat::Zero(3, 3));
}

std::vector<Subcontroller> synthesize_bank(const PlantModel& model,
                                           const std::vector<Vec>& poses,
                                           const LqrWeights& weights) {
  if (poses.empty()) throw dim_error("no design points");
  if (weights.state_w.size() != 6 || weights.input_w.size() != 2)
    throw dim_error("weights must scale 6 states and 2 inputs");
  if (weights.state_w.minCoeff() <= 0.0 || weights.input_w.minCoeff() <= 0.0)
    throw param_error("weight scales must be positive");

  Mat q_w = weights.state_w.array().square().inverse().matrix().asDiagonal();
  Mat r_w = weights.input_w.array().square().inverse().matrix().asDiagonal();
  Mat s_c = 0.5 * PlantModel::b_hat().transpose();

  std::vector<Subcontroller> bank;
  bank.reserve(poses.size());
  for (size_t i = 0; i < poses.size(); ++i) {
    auto sys = linearize_prewrapped(model, poses[i]);
    Mat b_lqr = sys.b * PlantModel::b_hat();
    auto lqr = solve_are(sys.a, b_lqr, q_w, r_w);
    Mat a_hat = sys.a - b_lqr * lqr.k;

    auto cert = certify_controller(a_hat, lqr.k, sys.c, s_c);
    if (!cert.feasible)
      throw solver_error("design point " + std::to_string(i) +
                         " has no storage certificate on the search grid (best "
                         "lambda_min " +
                         fmt17(cert.best_lambda_min) + ")");

    Subcontroller sub;
    sub.index = static_cast<int>(i);
    sub.q_bar = poses[i];
    sub.a_c = a_hat - cert.b_c * sys.c;
    sub.b_c = cert.b_c;
    sub.c_c = lqr.k;
    sub.a_lin = sys.a;
    sub.b_lin = b_lqr;
    sub.p = cert.p;
    sub.eps = cert.eps;
    sub.beta = cert.beta;
    sub.residual_max_eig = cert.residual_max_eig;
    sub.s_c = s_c;
    bank.push_back(std::move(sub));
  }
  return bank;
}

CompositionReport controller_bank_compose(const std::vector<Subcontroller>& bank,
                                          const std::vector<SchedulingFamily>& fams) {
  std::vector<QsrTriple> subs;
  subs.reserve(bank.size());
  for (const auto& sub : bank) subs.push_back(sub.triple());
  return compose_theorem2(subs, fams);
}

}  // namespace qsched
