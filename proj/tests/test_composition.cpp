#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsched/composition.hpp"

#include <cmath>
#include <random>

using namespace qsched;

namespace {

std::mt19937_64 rng(202);
std::normal_distribution<double> nd;

Vec lingrid(int n, double t1) {
  Vec g(n);
  for (int i = 0; i < n; ++i) g[i] = t1 * i / (n - 1);
  return g;
}

// scalar gain s(t) on both sides
SchedulingFamily scalar_family(const Vec& grid, const std::function<double(double)>& s,
                               int n_u, int n_y, int index = 0) {
  SchedulingFamily f;
  f.index = index;
  f.grid = grid;
  for (int k = 0; k < grid.size(); ++k) {
    f.phi_u.push_back(s(grid[k]) * Mat::Identity(n_u, n_u));
    f.phi_y.push_back(s(grid[k]) * Mat::Identity(n_y, n_y));
  }
  return f;
}

SchedulingFamily const_family(const Vec& grid, double s, int n, int index = 0) {
  return scalar_family(grid, [s](double) { return s; }, n, n, index);
}

}  // namespace

TEST_CASE("independent-S path recovers a single OSP subsystem exactly") {
  // one subsystem, unit-envelope scalar schedule: the composed triple is the
  // original one
  auto sub = make_special(SpecialCase::osp(1.0), 2);
  Vec grid = lingrid(201, 2.0 * M_PI);
  auto fam = scalar_family(grid, [](double t) { return std::cos(t); }, 2, 2);
  auto rep = compose_theorem1({sub}, {fam});
  CHECK(rep.theorem == 1);
  CHECK(rep.eps_min == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rep.sigma_bar_y[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((rep.composed.q + Mat::Identity(2, 2)).norm() < 1e-12);
  CHECK((rep.composed.s - 0.5 * Mat::Identity(2, 2)).norm() < 1e-12);
  CHECK(rep.composed.r.norm() < 1e-12);
  CHECK(rep.r_coeff == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("independent-S path on two identical unit subsystems cancels R") {
  auto sub = make_special(SpecialCase::osp(1.0), 2);
  Vec grid = lingrid(11, 1.0);
  auto f = const_family(grid, 1.0, 2);
  auto rep = compose_theorem1({sub, sub}, {f, f});
  // s_bar = I, nu = 1, so R = (2*(1/4 + 1/4) - 1) I = 0
  CHECK((rep.composed.s - Mat::Identity(2, 2)).norm() < 1e-12);
  CHECK(std::abs(rep.r_coeff) < 1e-14);
  CHECK(rep.nu_s_bar == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("independent-S R stays PSD over random output-strict banks") {
  // Q_i < 0, R_i = 0: the composed input weight can never go negative
  std::uniform_real_distribution<double> pos(0.2, 2.0);
  Vec grid = lingrid(31, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    int n_subs = 1 + static_cast<int>(rng() % 3);
    std::vector<QsrTriple> subs;
    std::vector<SchedulingFamily> fams;
    for (int i = 0; i < n_subs; ++i) {
      subs.push_back(make_special(SpecialCase::osp(pos(rng)), 2));
      double amp = pos(rng), om = pos(rng);
      fams.push_back(scalar_family(
          grid, [=](double t) { return amp * std::sin(om * t + 0.3); }, 2, 2, i));
    }
    auto rep = compose_theorem1(subs, fams);
    CHECK(rep.r_coeff >= -1e-12);
  }
}

TEST_CASE("independent-S R carries the aggregation slack for distinct subsystems") {
  // with x_i = a_i^2/eps_i the coefficient is
  //   N sum eps_i x_i^2 - eps_min (sum x_i)^2  (times sigma_s^2 = 1/4),
  // zero only when every eps_i and x_i coincide; here x1 = 0.64, x2 = 0.32:
  //   2*(0.4096 + 4*0.1024)/4 - (0.48)^2 = 0.4096 - 0.2304 = 0.1792
  Vec grid = lingrid(11, 1.0);
  double e1 = 1.0, e2 = 4.0;
  double a1 = 0.8, a2 = a1 * std::pow(e2 / e1, 0.25);
  auto rep = compose_theorem1(
      {make_special(SpecialCase::osp(e1), 2), make_special(SpecialCase::osp(e2), 2)},
      {const_family(grid, a1, 2, 0), const_family(grid, a2, 2, 1)});
  CHECK(rep.r_coeff == doctest::Approx(0.1792).epsilon(1e-12));
  // growing one envelope only adds input weight
  auto rep2 = compose_theorem1(
      {make_special(SpecialCase::osp(e1), 2), make_special(SpecialCase::osp(e2), 2)},
      {const_family(grid, a1, 2, 0), const_family(grid, 2.0 * a2, 2, 1)});
  CHECK(rep2.r_coeff > rep.r_coeff);
}

TEST_CASE("input-weight folding splits on the sign of lambda_max(R_i)") {
  Vec grid = lingrid(11, 1.0);
  // R = +0.5 I: fold with the sup envelope
  Mat q = -Mat::Identity(2, 2), s = 0.5 * Mat::Identity(2, 2);
  auto fam = const_family(grid, 0.7, 2);
  auto rep = compose_theorem1({QsrTriple(q, s, 0.5 * Mat::Identity(2, 2))}, {fam});
  // delta_1 = 0.5 * (0.7^2) * (0.7^2)
  CHECK(rep.delta_i[0] == doctest::Approx(0.5 * 0.2401).epsilon(1e-12));
  CHECK(rep.r_pos == std::vector<int>{0});
  // R = -0.5 I: fold with the inf envelope
  auto rep2 = compose_theorem1({QsrTriple(q, s, -0.5 * Mat::Identity(2, 2))}, {fam});
  CHECK(rep2.delta_i[0] == doctest::Approx(-0.5 * 0.2401).epsilon(1e-12));
  CHECK(rep2.r_neg == std::vector<int>{0});
  // rank-deficient gain zeroes the inf envelope (both sides drop the channel
  // so the family still commutes with the full-rank S)
  SchedulingFamily thin = fam;
  for (auto& m : thin.phi_u) m(1, 1) = 0.0;
  for (auto& m : thin.phi_y) m(1, 1) = 0.0;
  auto rep3 = compose_theorem1({QsrTriple(q, s, -0.5 * Mat::Identity(2, 2))}, {thin});
  CHECK(rep3.delta_i[0] == 0.0);
}

TEST_CASE("independent-S preconditions") {
  Vec grid = lingrid(5, 1.0);
  auto fam = const_family(grid, 1.0, 2);
  // passive: Q = 0 is not strictly negative
  CHECK_THROWS_AS(compose_theorem1({make_special(SpecialCase::passive(), 2)}, {fam}),
                  precondition_error);
  // family that does not commute with S
  Mat s(2, 2);
  s << 0.5, 0.1, 0.0, 0.5;
  QsrTriple sub(-Mat::Identity(2, 2), s, Mat::Zero(2, 2));
  SchedulingFamily bad = fam;
  bad.phi_u[2] << 1.0, 0.4, 0.0, 1.0;
  CHECK_THROWS_AS(compose_theorem1({sub}, {bad}), precondition_error);
  // count mismatch
  CHECK_THROWS_AS(compose_theorem1({sub, sub}, {fam}), dim_error);
}

TEST_CASE("common-S path composes OSP banks") {
  Vec grid = lingrid(11, 1.0);
  auto rep = compose_theorem2(
      {make_special(SpecialCase::osp(1.0), 2), make_special(SpecialCase::osp(2.0), 2)},
      {const_family(grid, 1.0, 2, 0), const_family(grid, 1.0, 2, 1)});
  CHECK(rep.theorem == 2);
  // stacked envelope: sigma([I I]) = sqrt(2)
  CHECK(rep.sigma_bar_psi == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rep.eps == doctest::Approx(0.5).epsilon(1e-12));
  CHECK((rep.composed.q + 0.5 * Mat::Identity(2, 2)).norm() < 1e-12);
  CHECK((rep.composed.s - 0.5 * Mat::Identity(2, 2)).norm() < 1e-12);
  CHECK(rep.composed.r.norm() < 1e-14);
  CHECK(rep.delta_sign == "zero");
  CHECK(rep.label.kind == Kind::OSP);
}

TEST_CASE("common-S path folds ISP input weights through the full-rank inf") {
  Vec grid = lingrid(101, 1.5);
  // windows [0,1] and [0.5,1.5]; overlap keeps the bank strongly active
  auto w1 = scalar_family(grid, [](double t) { return t <= 1.0 ? 1.0 : 0.0; }, 2, 2, 0);
  auto w2 = scalar_family(grid, [](double t) { return t >= 0.5 ? 1.0 : 0.0; }, 2, 2, 1);
  auto rep = compose_theorem2(
      {make_special(SpecialCase::isp(0.5), 2), make_special(SpecialCase::isp(0.2), 2)},
      {w1, w2});
  // at the edges only one window is up: inf sum = 1, delta_min = 0.2
  CHECK(rep.inf_sum_neg == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.delta == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK((rep.composed.r + 0.2 * Mat::Identity(2, 2)).norm() < 1e-12);
  CHECK(rep.delta_sign == "negative");
  CHECK(rep.label.kind == Kind::ISP);
  CHECK(rep.label.delta == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(rep.eps == doctest::Approx(0.0).epsilon(1e-14));  // Q_i = 0 bank
}

TEST_CASE("common-S delta sign labels") {
  Vec grid = lingrid(11, 1.0);
  auto on = const_family(grid, 1.0, 2, 0);
  auto q = -Mat::Identity(2, 2);
  auto s = 0.5 * Mat::Identity(2, 2);
  auto rp = QsrTriple(q, s, 0.3 * Mat::Identity(2, 2));   // lambda_max > 0
  auto rn = QsrTriple(q, s, -0.3 * Mat::Identity(2, 2));  // lambda_max < 0
  auto rz = QsrTriple(q, s, Mat::Zero(2, 2));

  CHECK(compose_theorem2({rp}, {on}).delta_sign == "positive");
  CHECK(compose_theorem2({rn}, {on}).delta_sign == "negative");
  CHECK(compose_theorem2({rz}, {on}).delta_sign == "zero");
  auto mixed = compose_theorem2({rp, rn}, {on, const_family(grid, 1.0, 2, 1)});
  CHECK(mixed.delta_sign == "indeterminate");
  CHECK(mixed.delta == doctest::Approx(0.3 - 0.3).epsilon(1e-12));

  // a coverage gap on the negative set's input side blocks the strict label
  auto gap = scalar_family(grid, [](double t) { return t <= 0.5 ? 1.0 : 0.0; }, 2, 2, 1);
  auto repn = compose_theorem2({rn, rz}, {gap, on});
  CHECK(repn.delta_sign == "nonpositive");
  CHECK(repn.delta == 0.0);

  // positive set whose input gain never wakes up: sign only bounded below
  auto dead = const_family(grid, 0.0, 2, 0);
  auto repp = compose_theorem2({rp, rz}, {dead, on});
  CHECK(repp.delta_sign == "nonnegative");
  CHECK(repp.delta == 0.0);
}

TEST_CASE("common-S preconditions") {
  Vec grid = lingrid(11, 1.0);
  auto on = const_family(grid, 1.0, 2, 0);
  auto q_bad = QsrTriple(0.1 * Mat::Identity(2, 2), 0.5 * Mat::Identity(2, 2),
                         Mat::Zero(2, 2));
  CHECK_THROWS_AS(compose_theorem2({q_bad}, {on}), precondition_error);

  // mismatched S across the bank
  auto a = make_special(SpecialCase::osp(1.0), 2);
  QsrTriple b(-Mat::Identity(2, 2), 0.4 * Mat::Identity(2, 2), Mat::Zero(2, 2));
  CHECK_THROWS_AS(compose_theorem2({a, b}, {on, const_family(grid, 1.0, 2, 1)}),
                  precondition_error);

  // output side must stay active: a window bank with a hole fails
  auto hole = scalar_family(grid, [](double t) { return t < 0.5 ? 1.0 : 0.0; }, 2, 2, 0);
  CHECK_THROWS_AS(compose_theorem2({a}, {hole}), precondition_error);
}

TEST_CASE("closed-form special composition recovers single subsystems") {
  Vec grid = lingrid(11, 1.0);
  auto on = const_family(grid, 1.0, 2, 0);

  auto pas = compose_special(Kind::Passive, {SpecialCase::passive()}, {on}, 2);
  CHECK(pas.label.kind == Kind::Passive);

  auto osp = compose_special(Kind::OSP, {SpecialCase::osp(0.7)}, {on}, 2);
  CHECK(osp.label.epsilon == doctest::Approx(0.7).epsilon(1e-12));

  auto isp = compose_special(Kind::ISP, {SpecialCase::isp(0.4)}, {on}, 2);
  CHECK(isp.label.delta == doctest::Approx(0.4).epsilon(1e-12));

  auto vsp = compose_special(Kind::VSP, {SpecialCase::vsp(0.7, 0.4)}, {on}, 2);
  CHECK(vsp.label.epsilon == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(vsp.label.delta == doctest::Approx(0.4).epsilon(1e-12));

  auto l2 = compose_special(Kind::FiniteL2Gain, {SpecialCase::finite_l2(2.5)}, {on}, 2);
  CHECK(l2.label.gamma == doctest::Approx(2.5).epsilon(1e-12));

  // conic, all three radius branches
  auto c1 = compose_special(Kind::Conic, {SpecialCase::conic_center(2.0, 1.0)}, {on}, 2);
  CHECK(c1.label.c == doctest::Approx(2.0).epsilon(1e-12));  // r <= |c|
  CHECK(c1.label.r == doctest::Approx(1.0).epsilon(1e-12));
  auto c2 = compose_special(Kind::Conic, {SpecialCase::conic_center(1.0, 2.0)}, {on}, 2);
  CHECK(c2.label.c == doctest::Approx(1.0).epsilon(1e-12));  // r > |c| != 0
  CHECK(c2.label.r == doctest::Approx(2.0).epsilon(1e-12));
  auto c3 = compose_special(Kind::Conic, {SpecialCase::conic_center(0.0, 2.0)}, {on}, 2);
  CHECK(std::abs(c3.label.c) < 1e-12);  // r > |c| = 0 (zero cross weight)
  CHECK(c3.label.r == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("closed-form gain composition scales with the stacked envelope") {
  Vec grid = lingrid(11, 1.0);
  auto on0 = const_family(grid, 1.0, 2, 0);
  auto on1 = const_family(grid, 1.0, 2, 1);
  auto rep = compose_special(Kind::FiniteL2Gain,
                             {SpecialCase::finite_l2(2.0), SpecialCase::finite_l2(1.0)},
                             {on0, on1}, 2);
  // scalar base form: max gamma * sup_t sum s_i^2 = 2 * 2
  CHECK(rep.label.gamma == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("conic composition aggregates centers by output envelopes") {
  Vec grid = lingrid(11, 1.0);
  auto rep = compose_special(
      Kind::Conic, {SpecialCase::conic_center(1.0, 2.0), SpecialCase::conic_center(-1.0, 3.0)},
      {const_family(grid, 1.0, 2, 0), const_family(grid, 1.0, 2, 1)}, 2);
  CHECK(std::abs(rep.label.c) < 1e-12);  // centers cancel at unit envelopes
  CHECK(rep.label.r == doctest::Approx(std::sqrt(2.0 * (4.0 + 9.0))).epsilon(1e-12));
}

TEST_CASE("dissipation check on synthetic signal pairs") {
  auto t = make_special(SpecialCase::passive(), 1);
  Vec grid = lingrid(11, 1.0);
  std::vector<Vec> u(11, Vec::Constant(1, 1.0));
  std::vector<Vec> ym(11, Vec::Constant(1, -1.0));
  // y = -u burns supply: integral is -t, strictly below zero storage change
  CHECK_FALSE(verify_dissipation(t, SampledSignal(grid, u), SampledSignal(grid, ym),
                                 0.0, 0.0, 1e-6));
  std::vector<Vec> yp(11, Vec::Constant(1, 1.0));
  CHECK(verify_dissipation(t, SampledSignal(grid, u), SampledSignal(grid, yp), 0.0, 0.0,
                           1e-6));
  // a positive storage gain tightens the bound
  CHECK_FALSE(verify_dissipation(t, SampledSignal(grid, u), SampledSignal(grid, yp), 0.0,
                                 2.0, 1e-6));
  CHECK(verify_dissipation(t, SampledSignal(grid, u), SampledSignal(grid, yp), 0.0, 1.0,
                           1e-6));
}
