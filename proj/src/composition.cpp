#include "qsched/composition.hpp"

#include <cmath>

namespace qsched {

namespace {

constexpr double kSignTol = 1e-12;

void check_sizes(const std::vector<QsrTriple>& subs,
                 const std::vector<SchedulingFamily>& fams) {
  if (subs.empty()) throw dim_error("nothing to compose");
  if (subs.size() != fams.size())
    throw dim_error("one scheduling family per subsystem required");
  for (size_t i = 0; i < subs.size(); ++i) {
    if (subs[i].n_u() != subs[0].n_u() || subs[i].n_y() != subs[0].n_y())
      throw dim_error("subsystems disagree on signal dimensions");
    if (fams[i].n_u() != subs[i].n_u() || fams[i].n_y() != subs[i].n_y())
      throw dim_error("family gains do not match the subsystem dimensions");
  }
}

void check_commute(const SchedulingFamily& fam, const Mat& s, int index) {
  auto chk = verify_pseudo_commute(fam, s, 1e-8);
  if (!chk.ok)
    throw precondition_error("family " + std::to_string(index) +
                             " does not commute with its cross weight (residual " +
                             fmt17(chk.max_residual) + ")");
}

// Envelope and sign bookkeeping shared by both paths.
void fill_common(CompositionReport& rep, const std::vector<QsrTriple>& subs,
                 const std::vector<SchedulingFamily>& fams) {
  const int n = static_cast<int>(subs.size());
  rep.eps_i = Vec(n);
  rep.lam_max_r = Vec(n);
  rep.delta_i = Vec::Zero(n);
  rep.sigma_bar_u = Vec(n);
  rep.sigma_bar_y = Vec(n);
  rep.nu_bar_u = Vec(n);
  rep.sigma_s = Vec(n);
  for (int i = 0; i < n; ++i) {
    rep.eps_i[i] = -sym_eig_max(subs[i].q);
    rep.lam_max_r[i] = sym_eig_max(subs[i].r);
    auto b = sv_bounds(fams[i]);
    rep.sigma_bar_u[i] = b.sigma_bar_u;
    rep.sigma_bar_y[i] = b.sigma_bar_y;
    rep.nu_bar_u[i] = b.nu_bar_u;
    rep.sigma_s[i] = sv_max(subs[i].s);
    if (rep.lam_max_r[i] > kSignTol)
      rep.r_pos.push_back(i);
    else if (rep.lam_max_r[i] < -kSignTol)
      rep.r_neg.push_back(i);
    else
      rep.r_zero.push_back(i);
  }
}

}  // namespace

CompositionReport compose_theorem1(const std::vector<QsrTriple>& subs,
                                   const std::vector<SchedulingFamily>& fams) {
  check_sizes(subs, fams);
  const int n = static_cast<int>(subs.size());
  const int n_y = subs[0].n_y(), n_u = subs[0].n_u();

  CompositionReport rep;
  rep.theorem = 1;
  fill_common(rep, subs, fams);
  for (int i = 0; i < n; ++i) {
    if (rep.eps_i[i] < 1e-12)
      throw precondition_error("subsystem " + std::to_string(i) +
                               " is not strictly output-dissipative");
    check_commute(fams[i], subs[i].s, i);
  }

  rep.eps_min = rep.eps_i.minCoeff();
  rep.s_bar = Mat::Zero(n_y, n_u);
  double coeff_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double sy2 = rep.sigma_bar_y[i] * rep.sigma_bar_y[i];
    rep.s_bar += (sy2 / rep.eps_i[i]) * subs[i].s;
    // input-side contribution of R_i through its signed envelope
    double lam = rep.lam_max_r[i];
    double env = (lam > 0.0) ? rep.sigma_bar_u[i] * rep.sigma_bar_u[i]
                             : rep.nu_bar_u[i] * rep.nu_bar_u[i];
    rep.delta_i[i] = lam * sy2 * env;
    coeff_sum += rep.delta_i[i] + sy2 * sy2 * rep.sigma_s[i] * rep.sigma_s[i] / rep.eps_i[i];
  }
  rep.nu_s_bar = sv_min(rep.s_bar);
  rep.r_coeff = n * coeff_sum - rep.eps_min * rep.nu_s_bar * rep.nu_s_bar;

  rep.composed = QsrTriple(-rep.eps_min * Mat::Identity(n_y, n_y), rep.eps_min * rep.s_bar,
                           rep.r_coeff * Mat::Identity(n_u, n_u));
  rep.label = classify(rep.composed);
  return rep;
}

CompositionReport compose_theorem2(const std::vector<QsrTriple>& subs,
                                   const std::vector<SchedulingFamily>& fams) {
  check_sizes(subs, fams);
  const int n = static_cast<int>(subs.size());
  const int n_y = subs[0].n_y(), n_u = subs[0].n_u();

  for (int i = 1; i < n; ++i)
    if ((subs[i].s - subs[0].s).cwiseAbs().maxCoeff() != 0.0)
      throw precondition_error("subsystems must share one cross weight exactly");
  const Mat& s = subs[0].s;

  CompositionReport rep;
  rep.theorem = 2;
  fill_common(rep, subs, fams);
  for (int i = 0; i < n; ++i) {
    if (rep.eps_i[i] < -1e-12)
      throw precondition_error("subsystem " + std::to_string(i) +
                               " has an indefinite output weight");
    check_commute(fams[i], s, i);
  }
  if (!activity(fams, Side::Output).active)
    throw precondition_error("output side of the schedule goes dark somewhere");

  rep.sigma_bar_psi = stacked_sigma(fams);
  double eps_min = rep.eps_i.minCoeff();
  rep.eps_min = eps_min;
  rep.eps = std::max(eps_min, 0.0) / (rep.sigma_bar_psi * rep.sigma_bar_psi);

  // per-stamp scans once; the sums live inside the sup/inf
  const int stamps = static_cast<int>(fams[0].grid.size());
  std::vector<kern::SvScan> scans;
  std::vector<std::vector<bool>> full_rank;
  scans.reserve(n);
  for (int i = 0; i < n; ++i) {
    scans.push_back(kern::sv_scan(fams[i].phi_u, kern::Exec::Parallel));
    full_rank.push_back(sv_bounds(fams[i]).full_rank_u);
  }

  for (int i = 0; i < n; ++i) rep.delta_i[i] = std::abs(rep.lam_max_r[i]);
  rep.delta_max = 0.0;
  for (int i : rep.r_pos) rep.delta_max = std::max(rep.delta_max, rep.delta_i[i]);
  rep.delta_min = 0.0;
  for (int i : rep.r_neg)
    rep.delta_min = rep.delta_min == 0.0 ? rep.delta_i[i]
                                         : std::min(rep.delta_min, rep.delta_i[i]);

  rep.sup_sum_pos = 0.0;
  rep.inf_sum_neg = rep.r_neg.empty() ? 0.0 : 1e300;
  for (int k = 0; k < stamps; ++k) {
    double sum_pos = 0.0, sum_neg = 0.0;
    for (int i : rep.r_pos) sum_pos += scans[i].smax[k] * scans[i].smax[k];
    for (int i : rep.r_neg)
      if (full_rank[i][k]) sum_neg += scans[i].smin[k] * scans[i].smin[k];
    rep.sup_sum_pos = std::max(rep.sup_sum_pos, sum_pos);
    rep.inf_sum_neg = std::min(rep.inf_sum_neg, sum_neg);
  }
  if (rep.r_neg.empty()) rep.inf_sum_neg = 0.0;

  rep.delta = rep.delta_max * rep.sup_sum_pos - rep.delta_min * rep.inf_sum_neg;

  bool pos_live = false;
  for (int i : rep.r_pos) pos_live = pos_live || rep.sigma_bar_u[i] > kSignTol;
  if (rep.r_pos.empty() && rep.r_neg.empty())
    rep.delta_sign = "zero";
  else if (rep.r_neg.empty())
    rep.delta_sign = pos_live ? "positive" : "nonnegative";
  else if (rep.r_pos.empty())
    rep.delta_sign = rep.inf_sum_neg > 0.0 ? "negative" : "nonpositive";
  else
    rep.delta_sign = "indeterminate";

  rep.composed = QsrTriple(-rep.eps * Mat::Identity(n_y, n_y), s,
                           rep.delta * Mat::Identity(n_u, n_u));
  rep.label = classify(rep.composed);
  return rep;
}

CompositionReport compose_special(Kind kind, const std::vector<SpecialCase>& params,
                                  const std::vector<SchedulingFamily>& fams, int n) {
  if (params.empty()) throw dim_error("nothing to compose");
  if (params.size() != fams.size())
    throw dim_error("one scheduling family per subsystem required");
  for (const auto& p : params)
    if (p.kind != kind) throw param_error("mixed families in a single-family composition");

  std::vector<QsrTriple> subs;
  subs.reserve(params.size());
  for (const auto& p : params) subs.push_back(make_special(p, n));

  switch (kind) {
    case Kind::Passive:
    case Kind::ISP:
    case Kind::OSP:
    case Kind::VSP:
      return compose_theorem2(subs, fams);

    case Kind::FiniteL2Gain: {
      CompositionReport rep = compose_theorem2(subs, fams);
      // rescale to a unit output weight so the result reads as a gain bound
      double scale = 1.0 / rep.eps;  // eps = 1/sigma_bar_psi^2 here
      double gamma = std::sqrt(scale * rep.delta);
      rep.composed = QsrTriple(-Mat::Identity(n, n), Mat::Zero(n, n),
                               gamma * gamma * Mat::Identity(n, n));
      rep.label = SpecialCase::finite_l2(gamma);
      return rep;
    }

    case Kind::Conic: {
      const int count = static_cast<int>(params.size());
      CompositionReport rep;
      rep.theorem = 1;
      fill_common(rep, subs, fams);
      double c_sum = 0.0, r2_sum = 0.0;
      for (int i = 0; i < count; ++i) {
        check_commute(fams[i], subs[i].s, i);
        auto b = sv_bounds(fams[i]);
        double sy = b.sigma_bar_y, su = b.sigma_bar_u;
        double ci = params[i].c, ri = params[i].r;
        c_sum += ci * sy * sy;
        double rbar;
        if (ri > std::abs(ci) && std::abs(ci) <= kSignTol) {
          rbar = sy * su * ri;
        } else {
          // the narrow branches need matching envelopes on both sides
          if (std::abs(su - sy) > 1e-9)
            throw precondition_error("subsystem " + std::to_string(i) +
                                     " schedules its two sides unevenly");
          if (ri > std::abs(ci)) {
            rbar = sy * sy * ri;
          } else {
            if (std::abs(b.nu_bar_u - b.nu_bar_y) > 1e-9)
              throw precondition_error("subsystem " + std::to_string(i) +
                                       " schedules its two sides unevenly");
            double nu = b.nu_bar_u;
            rbar = sy * std::sqrt(nu * nu * ri * ri + (sy * sy - nu * nu) * ci * ci);
          }
        }
        r2_sum += rbar * rbar;
      }
      double r_c = std::sqrt(count * r2_sum);
      rep.r_coeff = r_c * r_c - c_sum * c_sum;
      rep.composed = QsrTriple(-Mat::Identity(n, n), c_sum * Mat::Identity(n, n),
                               rep.r_coeff * Mat::Identity(n, n));
      rep.label = SpecialCase::conic_center(c_sum, r_c);
      return rep;
    }

    default:
      throw param_error("no closed composition for the general family");
  }
}

bool verify_dissipation(const QsrTriple& t, const SampledSignal& u, const SampledSignal& y,
                        double v0, double vT, double tol) {
  Vec prefix = supply_prefix(u, y, t);
  const int last = static_cast<int>(prefix.size()) - 1;
  if (prefix[last] < (vT - v0) - tol) return false;
  for (int k = 0; k < last; ++k)
    if (prefix[k] < -v0 - tol) return false;
  return true;
}

}  // namespace qsched
