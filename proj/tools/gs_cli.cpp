// gsctl: scenario-driven synthesis, certification, composition, scheduling
// file tooling, and closed-loop simulation.  Exit codes: 0 success,
// 1 internal/numerical failure, 2 bad configuration, 3 violated theorem
// precondition.  No environment-variable overrides: configuration comes from
// files and flags only, so identical invocations produce identical bytes.

#include "qsched/certification.hpp"
#include "qsched/composition.hpp"
#include "qsched/io.hpp"
#include "qsched/robot.hpp"
#include "qsched/scheduling.hpp"
#include "qsched/synthesis.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace qsched;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

// The damped wrapped arm is output-strict from u_bar to q' with margin
// min_i d_i; the cross term is the fixed actuation split.
QsrTriple arm_triple(const PlantModel& model) {
  Mat q = Mat::Zero(3, 3);
  q.diagonal() = -model.damping;
  return QsrTriple(q, 0.5 * PlantModel::b_hat(), Mat::Zero(2, 2));
}

Vec uniform_grid(double dt, double horizon) {
  const long n = std::lround(horizon / dt);
  if (n < 1) throw param_error("grid horizon is shorter than one step");
  Vec g(n + 1);
  for (long k = 0; k <= n; ++k) g[k] = static_cast<double>(k) * dt;
  return g;
}

// Scheduling families the scenario's mode implies.  Demo modes are sampled
// at 1 ms, dense enough that the grid sup/inf envelopes are converged.
std::vector<SchedulingFamily> families_for(const io::ScenarioConfig& cfg,
                                           const fs::path& scen_dir) {
  switch (cfg.mode) {
    case SchedMode::Matrix:
      return example_families(uniform_grid(1e-3, cfg.sim.horizon));
    case SchedMode::Scalar:
      return example_families_scalar(uniform_grid(1e-3, cfg.sim.horizon));
    case SchedMode::File: {
      if (cfg.family_files.empty())
        throw param_error("scheduling mode file needs family1..familyN entries");
      std::vector<SchedulingFamily> out;
      for (const std::string& f : cfg.family_files) {
        fs::path p = f;
        if (p.is_relative()) p = scen_dir / p;
        out.push_back(io::load_family(p));
      }
      return out;
    }
    default:
      return {};
  }
}

const char* mode_name(SchedMode m) {
  switch (m) {
    case SchedMode::None: return "none";
    case SchedMode::Identity: return "identity";
    case SchedMode::Scalar: return "scalar";
    case SchedMode::Matrix: return "matrix";
    default: return "file";
  }
}

Vec column(const std::vector<Vec>& rows, int j) {
  Vec out(static_cast<Eigen::Index>(rows.size()));
  for (size_t k = 0; k < rows.size(); ++k) out[static_cast<Eigen::Index>(k)] = rows[k][j];
  return out;
}

std::string label_text(const SpecialCase& sc) {
  switch (sc.kind) {
    case Kind::Passive:
      return "passive";
    case Kind::ISP:
      return "isp(delta = " + fmt17(sc.delta) + ")";
    case Kind::OSP:
      return "osp(epsilon = " + fmt17(sc.epsilon) + ")";
    case Kind::VSP:
      return "vsp(epsilon = " + fmt17(sc.epsilon) + ", delta = " + fmt17(sc.delta) + ")";
    case Kind::FiniteL2Gain:
      return "finite_l2(gamma = " + fmt17(sc.gamma) + ")";
    case Kind::Conic:
      return "conic(c = " + fmt17(sc.c) + ", r = " + fmt17(sc.r) + ")";
    default:
      return "general";
  }
}

void print_set(const char* name, const std::vector<int>& v) {
  std::printf("%s = {", name);
  for (size_t i = 0; i < v.size(); ++i) std::printf("%s%d", i ? ", " : "", v[i]);
  std::printf("}\n");
}

void print_report(const CompositionReport& rep) {
  std::printf("theorem = %d\n", rep.theorem);
  const int n = static_cast<int>(rep.eps_i.size());
  std::printf("n_subsystems = %d\n", n);
  for (int i = 0; i < n; ++i)
    std::printf(
        "subsystem %d: eps_i = %s, lam_max_r = %s, delta_i = %s, sigma_bar_u = %s, "
        "sigma_bar_y = %s, nu_bar_u = %s, sigma_s = %s\n",
        i, fmt17(rep.eps_i[i]).c_str(), fmt17(rep.lam_max_r[i]).c_str(),
        fmt17(rep.delta_i[i]).c_str(), fmt17(rep.sigma_bar_u[i]).c_str(),
        fmt17(rep.sigma_bar_y[i]).c_str(), fmt17(rep.nu_bar_u[i]).c_str(),
        fmt17(rep.sigma_s[i]).c_str());
  print_set("r_pos", rep.r_pos);
  print_set("r_neg", rep.r_neg);
  print_set("r_zero", rep.r_zero);
  if (rep.theorem == 1) {
    std::printf("eps_min = %s\n", fmt17(rep.eps_min).c_str());
    std::printf("nu_s_bar = %s\n", fmt17(rep.nu_s_bar).c_str());
    std::printf("r_coeff = %s\n", fmt17(rep.r_coeff).c_str());
    io::write_matrix(std::cout, "S_bar", rep.s_bar);
  } else {
    std::printf("sigma_bar_psi = %s\n", fmt17(rep.sigma_bar_psi).c_str());
    std::printf("eps = %s\n", fmt17(rep.eps).c_str());
    std::printf("delta_max = %s\n", fmt17(rep.delta_max).c_str());
    std::printf("delta_min = %s\n", fmt17(rep.delta_min).c_str());
    std::printf("sup_sum_pos = %s\n", fmt17(rep.sup_sum_pos).c_str());
    std::printf("inf_sum_neg = %s\n", fmt17(rep.inf_sum_neg).c_str());
    std::printf("delta = %s\n", fmt17(rep.delta).c_str());
    std::printf("delta_sign = %s\n", rep.delta_sign.c_str());
  }
  io::write_matrix(std::cout, "Q", rep.composed.q);
  io::write_matrix(std::cout, "S", rep.composed.s);
  io::write_matrix(std::cout, "R", rep.composed.r);
  std::printf("label = %s\n", label_text(rep.label).c_str());
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

int cmd_synthesize(const std::string& scen, const std::string& outdir_flag) {
  auto cfg = io::load_scenario(scen);
  if (!outdir_flag.empty()) cfg.output_dir = outdir_flag;
  auto bank = synthesize_bank(cfg.plant, cfg.poses, cfg.weights);
  auto manifest = io::save_bank(cfg.output_dir, "controller", bank);
  std::printf("synthesized %d controllers\n", static_cast<int>(bank.size()));
  if (cfg.weights_defaulted) std::printf("lqr weights: built-in defaults\n");
  for (const auto& c : bank) {
    std::printf("controller %d: eps = %s, beta = %s, residual_max_eig = %s\n", c.index,
                fmt17(c.eps).c_str(), fmt17(c.beta).c_str(),
                fmt17(c.residual_max_eig).c_str());
  }
  std::printf("manifest = %s\n", manifest.string().c_str());
  return 0;
}

int cmd_certify(const std::string& scen, const std::string& bankfile) {
  auto cfg = io::load_scenario(scen);
  auto bank = bankfile.empty() ? synthesize_bank(cfg.plant, cfg.poses, cfg.weights)
                               : io::load_bank(bankfile);
  const QsrTriple plant = arm_triple(cfg.plant);
  bool pass = true;
  for (const auto& c : bank) {
    LtiSystem closed(c.a_c, c.b_c, c.c_c, Mat::Zero(c.c_c.rows(), c.b_c.cols()));
    const double resid = dissipativity_residual(closed, c.triple(), c.p).max_eig;
    const auto loop = stability_check(plant, c.triple(), 1.0);
    std::printf("controller %d: residual_max_eig = %s, loop_block_max_eig = %s\n", c.index,
                fmt17(resid).c_str(), fmt17(loop.block_max_eig).c_str());
    pass = pass && resid <= 1e-7 && loop.feasible;
  }
  auto fams = families_for(cfg, fs::path(scen).parent_path());
  if (!fams.empty()) {
    auto rep = controller_bank_compose(bank, fams);
    const auto loop = stability_check(plant, rep.composed, 1.0);
    std::printf("scheduled bank: eps = %s, loop_block_max_eig = %s\n", fmt17(rep.eps).c_str(),
                fmt17(loop.block_max_eig).c_str());
    pass = pass && loop.feasible;
  }
  std::printf("certify: %s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

int cmd_compose(const std::string& scen, const std::vector<std::string>& triple_files,
                const std::vector<std::string>& family_files, const std::string& theorem,
                const std::string& special) {
  std::vector<QsrTriple> triples;
  std::vector<SchedulingFamily> fams;
  if (!triple_files.empty()) {
    for (const auto& f : triple_files) triples.push_back(io::load_triple(f));
    for (const auto& f : family_files) fams.push_back(io::load_family(f));
  } else if (!scen.empty()) {
    auto cfg = io::load_scenario(scen);
    auto bank = synthesize_bank(cfg.plant, cfg.poses, cfg.weights);
    for (const auto& c : bank) triples.push_back(c.triple());
    fams = families_for(cfg, fs::path(scen).parent_path());
  } else {
    throw param_error("compose needs --triple/--family files or a scenario");
  }
  if (triples.size() != fams.size())
    throw dim_error("got " + std::to_string(triples.size()) + " triples but " +
                    std::to_string(fams.size()) + " families");

  CompositionReport rep;
  if (!special.empty()) {
    const Kind want = kind_from_name(special);
    std::vector<SpecialCase> params;
    for (size_t i = 0; i < triples.size(); ++i) {
      SpecialCase sc = classify(triples[i]);
      if (sc.kind != want)
        throw precondition_error("triple " + std::to_string(i) + " classifies as " +
                                 std::string(kind_name(sc.kind)) + ", not " + special);
      params.push_back(sc);
    }
    rep = compose_special(want, params, fams, triples[0].n_u());
  } else if (theorem == "1") {
    rep = compose_theorem1(triples, fams);
  } else if (theorem == "2") {
    rep = compose_theorem2(triples, fams);
  } else {
    bool common = true;
    for (size_t i = 1; i < triples.size() && common; ++i)
      common = triples[i].s.rows() == triples[0].s.rows() &&
               triples[i].s.cols() == triples[0].s.cols() &&
               (triples[i].s - triples[0].s).cwiseAbs().maxCoeff() == 0.0;
    rep = common ? compose_theorem2(triples, fams) : compose_theorem1(triples, fams);
  }
  print_report(rep);
  return 0;
}

int cmd_sched_build(const std::string& outdir, const std::string& demo,
                    const std::string& triple_file, unsigned long long seed, double dt,
                    double horizon) {
  fs::create_directories(outdir.empty() ? "." : outdir);
  const fs::path dir = outdir.empty() ? "." : outdir;
  const Vec grid = uniform_grid(dt, horizon);
  if (!triple_file.empty()) {
    const QsrTriple t = io::load_triple(triple_file);
    const auto dec = svd_reduced(t.s);
    const int rho = dec.rank;
    const int nu = static_cast<int>(t.s.cols()), ny = static_cast<int>(t.s.rows());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto rnd = [&](int r, int c) {
      Mat m(r, c);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = unit(rng);
      return m;
    };
    FactorBlocks blocks;
    for (Eigen::Index k = 0; k < grid.size(); ++k) {
      blocks.z11.push_back(rnd(rho, rho));
      blocks.z21.push_back(rnd(nu - rho, rho));
      blocks.z22.push_back(rnd(nu - rho, nu - rho));
      blocks.w21.push_back(rnd(ny - rho, rho));
      blocks.w22.push_back(rnd(ny - rho, ny - rho));
    }
    auto fam = build_pseudo_commuting(t.s, grid, blocks, 0);
    const auto pc = verify_pseudo_commute(fam, t.s, 1e-8);
    const fs::path p = dir / "family_0.fam";
    io::save_family(p, fam);
    std::printf("wrote %s (%d stamps)\n", p.string().c_str(), static_cast<int>(grid.size()));
    std::printf("pc_residual = %s\n", fmt17(pc.max_residual).c_str());
    return 0;
  }
  auto fams = demo == "scalar" ? example_families_scalar(grid) : example_families(grid);
  for (const auto& fam : fams) {
    const fs::path p = dir / ("family_" + std::to_string(fam.index) + ".fam");
    io::save_family(p, fam);
    std::printf("wrote %s\n", p.string().c_str());
  }
  return 0;
}

int cmd_sched_verify(const std::string& triple_file, const std::vector<std::string>& family_files,
                     double tol) {
  const QsrTriple t = io::load_triple(triple_file);
  bool all_ok = true;
  for (const auto& f : family_files) {
    const auto fam = io::load_family(f);
    const auto pc = verify_pseudo_commute(fam, t.s, tol);
    std::printf("family %d: max_residual = %s -> %s\n", fam.index,
                fmt17(pc.max_residual).c_str(), pc.ok ? "ok" : "FAIL");
    all_ok = all_ok && pc.ok;
  }
  if (!all_ok)
    throw precondition_error("a family fails phi_y^T S = S phi_u at the given tolerance");
  return 0;
}

int cmd_sched_bounds(const std::vector<std::string>& family_files) {
  std::vector<SchedulingFamily> fams;
  for (const auto& f : family_files) fams.push_back(io::load_family(f));
  for (const auto& fam : fams) {
    const auto b = sv_bounds(fam);
    std::printf(
        "family %d: sigma_bar_u = %s, sigma_bar_y = %s, nu_bar_u = %s, nu_bar_y = %s\n",
        fam.index, fmt17(b.sigma_bar_u).c_str(), fmt17(b.sigma_bar_y).c_str(),
        fmt17(b.nu_bar_u).c_str(), fmt17(b.nu_bar_y).c_str());
  }
  std::printf("sigma_bar_psi = %s\n", fmt17(stacked_sigma(fams)).c_str());
  return 0;
}

void emit_plots(const fs::path& outdir, const SimResult& primary, double horizon) {
  std::vector<Vec> cols;
  cols.reserve(16);  // series hold pointers into cols; never exceed this per plot
  auto col = [&](const std::vector<Vec>& rows, int j) -> const Vec* {
    cols.push_back(column(rows, j));
    return &cols.back();
  };
  // trajectories: joints against their references
  {
    std::vector<io::Series> s;
    for (int j = 0; j < 3; ++j)
      s.push_back({"q" + std::to_string(j + 1), &primary.t, col(primary.q, j)});
    for (int j = 0; j < 3; ++j)
      s.push_back({"ref " + std::to_string(j + 1), &primary.t, col(primary.th_d, j)});
    io::write_svg(outdir / "trajectories.svg", "joint trajectories", "t (s)", "angle (rad)", s);
  }
  cols.clear();
  {
    std::vector<io::Series> s;
    for (int j = 0; j < 3; ++j) {
      cols.push_back(column(primary.q, j) - column(primary.th_d, j));
      s.push_back({"e" + std::to_string(j + 1), &primary.t, &cols.back()});
    }
    io::write_svg(outdir / "errors.svg", "tracking errors", "t (s)", "angle error (rad)", s);
  }
  cols.clear();
  {
    std::vector<io::Series> s;
    for (int j = 0; j < 3; ++j)
      s.push_back({"tau" + std::to_string(j + 1), &primary.t, col(primary.tau, j)});
    io::write_svg(outdir / "torques.svg", "joint torques", "t (s)", "torque (N m)", s);
  }
  cols.clear();
  {
    const Vec grid = uniform_grid(1e-2, horizon);
    Vec s1(grid.size()), s2(grid.size()), s3(grid.size());
    for (Eigen::Index k = 0; k < grid.size(); ++k) {
      const Vec sg = scheduling_signals(grid[k]);
      s1[k] = sg[0];
      s2[k] = sg[1];
      s3[k] = sg[2];
    }
    std::vector<io::Series> s = {{"s1", &grid, &s1}, {"s2", &grid, &s2}, {"s3", &grid, &s3}};
    io::write_svg(outdir / "signals.svg", "scheduling signals", "t (s)", "activation", s);
  }
}

void print_rms(const char* name, const SimResult& res) {
  const auto m = rms_metrics(res);
  for (int j = 0; j < 3; ++j)
    std::printf("rms_angle_deg_%s_j%d = %s\n", name, j + 1, fmt17(m.e_deg[j]).c_str());
  for (int j = 0; j < 3; ++j)
    std::printf("rms_rate_deg_%s_j%d = %s\n", name, j + 1, fmt17(m.ed_deg[j]).c_str());
  std::printf("tau_max_%s = %s\n", name, fmt17(res.tau_max_abs).c_str());
}

int cmd_simulate(const std::string& scen, bool compare, const std::string& outdir_flag,
                 double dt_flag) {
  auto cfg = io::load_scenario(scen);
  if (!outdir_flag.empty()) cfg.output_dir = outdir_flag;
  if (dt_flag > 0.0) cfg.sim.dt = dt_flag;
  const fs::path outdir = cfg.output_dir;
  fs::create_directories(outdir);
  const fs::path scen_dir = fs::path(scen).parent_path();

  auto bank = synthesize_bank(cfg.plant, cfg.poses, cfg.weights);

  if (compare) {
    // the fixed baseline runs the final design point alone, unscheduled
    std::vector<Subcontroller> last = {bank.back()};
    auto f_un = std::async(std::launch::async, [&] {
      return simulate_closed_loop(cfg.plant, last, SchedMode::Identity, nullptr, cfg.traj,
                                  cfg.sim);
    });
    auto f_sc = std::async(std::launch::async, [&] {
      return simulate_closed_loop(cfg.plant, bank, SchedMode::Scalar, nullptr, cfg.traj,
                                  cfg.sim);
    });
    auto f_ma = std::async(std::launch::async, [&] {
      return simulate_closed_loop(cfg.plant, bank, SchedMode::Matrix, nullptr, cfg.traj,
                                  cfg.sim);
    });
    const SimResult res[3] = {f_un.get(), f_sc.get(), f_ma.get()};
    const char* names[3] = {"unscheduled", "scalar", "matrix"};
    RmsMetrics met[3];
    for (int m = 0; m < 3; ++m) {
      io::write_csv(outdir / ("compare_" + std::string(names[m]) + ".csv"), res[m]);
      met[m] = rms_metrics(res[m]);
    }

    std::printf("%-22s %14s %14s %14s\n", "metric", names[0], names[1], names[2]);
    for (int j = 0; j < 3; ++j)
      std::printf("rms angle j%d [deg]    %14.4f %14.4f %14.4f\n", j + 1, met[0].e_deg[j],
                  met[1].e_deg[j], met[2].e_deg[j]);
    for (int j = 0; j < 3; ++j)
      std::printf("rms rate  j%d [deg/s]  %14.4f %14.4f %14.4f\n", j + 1, met[0].ed_deg[j],
                  met[1].ed_deg[j], met[2].ed_deg[j]);
    std::printf("tau max      [N m]    %14.4f %14.4f %14.4f\n", res[0].tau_max_abs,
                res[1].tau_max_abs, res[2].tau_max_abs);
    std::printf("\n");
    for (int m = 0; m < 3; ++m) print_rms(names[m], res[m]);

    emit_plots(outdir, res[2], cfg.sim.horizon);
    return 0;
  }

  std::vector<SchedulingFamily> fams;
  if (cfg.mode == SchedMode::File) fams = families_for(cfg, scen_dir);
  const SimResult res = simulate_closed_loop(
      cfg.plant, bank, cfg.mode, cfg.mode == SchedMode::File ? &fams : nullptr, cfg.traj,
      cfg.sim);
  io::write_csv(outdir / "trace.csv", res);
  print_rms(mode_name(cfg.mode), res);
  emit_plots(outdir, res, cfg.sim.horizon);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrix gain scheduling for dissipative systems"};
  app.require_subcommand(1);

  std::string scen, outdir, bankfile, triple_file, special, theorem = "auto";
  std::string demo = "matrix";
  std::vector<std::string> triple_files, family_files;
  double dt = 0.0, horizon = 12.0, tol = 1e-8, build_dt = 1e-3;
  unsigned long long seed = 0;
  bool compare = false;
  int rc = 0;

  auto* synth = app.add_subcommand("synthesize", "design and certify a controller bank");
  synth->add_option("scenario", scen, "scenario file")->required()->check(CLI::ExistingFile);
  synth->add_option("--output-dir", outdir, "where the controller files go");
  synth->callback([&] { rc = cmd_synthesize(scen, outdir); });

  auto* cert = app.add_subcommand("certify", "re-check the storage and loop certificates");
  cert->add_option("scenario", scen, "scenario file")->required()->check(CLI::ExistingFile);
  cert->add_option("--bank", bankfile, "bank manifest (default: synthesize in place)")
      ->check(CLI::ExistingFile);
  cert->callback([&] { rc = cmd_certify(scen, bankfile); });

  auto* comp = app.add_subcommand("compose", "compose subsystem supply rates");
  comp->add_option("scenario", scen, "scenario file (bank + families from the scenario)")
      ->check(CLI::ExistingFile);
  comp->add_option("--triple", triple_files, "subsystem triple files")
      ->check(CLI::ExistingFile);
  comp->add_option("--family", family_files, "scheduling family files, one per triple")
      ->check(CLI::ExistingFile);
  comp->add_option("--theorem", theorem, "composition path: auto, 1, or 2")
      ->check(CLI::IsMember({"auto", "1", "2"}));
  comp->add_option("--special", special,
                   "closed-form path; triples must classify as this kind "
                   "(passive, isp, osp, vsp, finite_l2, conic)");
  comp->callback([&] { rc = cmd_compose(scen, triple_files, family_files, theorem, special); });

  auto* sched = app.add_subcommand("schedule", "scheduling-family tooling");
  sched->require_subcommand(1);
  auto* sb = sched->add_subcommand("build", "write family files");
  sb->add_option("--output-dir", outdir, "target directory");
  sb->add_option("--demo", demo, "built-in demo bank: matrix or scalar")
      ->check(CLI::IsMember({"matrix", "scalar"}));
  sb->add_option("--triple", triple_file,
                 "draw random factor blocks commuting with this triple's S")
      ->check(CLI::ExistingFile);
  sb->add_option("--seed", seed, "random draw seed for --triple");
  sb->add_option("--dt", build_dt, "grid step, s");
  sb->add_option("--horizon", horizon, "grid end, s");
  sb->callback([&] { rc = cmd_sched_build(outdir, demo, triple_file, seed, build_dt, horizon); });

  auto* sv = sched->add_subcommand("verify", "check phi_y^T S = S phi_u per stamp");
  sv->add_option("--triple", triple_file, "triple carrying S")
      ->required()
      ->check(CLI::ExistingFile);
  sv->add_option("--family", family_files, "family files")->required()->check(CLI::ExistingFile);
  sv->add_option("--tol", tol, "residual tolerance");
  sv->callback([&] { rc = cmd_sched_verify(triple_file, family_files, tol); });

  auto* sbo = sched->add_subcommand("bounds", "singular-value envelopes of families");
  sbo->add_option("--family", family_files, "family files")->required()->check(CLI::ExistingFile);
  sbo->callback([&] { rc = cmd_sched_bounds(family_files); });

  auto* sim = app.add_subcommand("simulate", "closed-loop roll-out");
  sim->add_option("scenario", scen, "scenario file")->required()->check(CLI::ExistingFile);
  sim->add_flag("--compare", compare,
                "run unscheduled / scalar / matrix side by side and print the metric table");
  sim->add_option("--output-dir", outdir, "where CSV traces and plots go");
  sim->add_option("--dt", dt, "override the scenario step, s");
  sim->callback([&] { rc = cmd_simulate(scen, compare, outdir, dt); });

  app.add_subcommand("version", "print the tool version")->callback([&] {
    std::printf("gsctl %s\n", kVersion);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const precondition_error& e) {
    std::fprintf(stderr, "precondition violated: %s\n", e.what());
    return 3;
  } catch (const param_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const dim_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const solver_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return rc;
}
