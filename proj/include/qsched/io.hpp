#pragma once

#include "qsched/qsr.hpp"
#include "qsched/robot.hpp"
#include "qsched/scheduling.hpp"
#include "qsched/synthesis.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace qsched::io {

namespace fs = std::filesystem;

// Named plain-text matrix block: "<name> <rows> <cols>" then one row per
// line, %.17g fields (lossless round trip).
void write_matrix(std::ostream& os, const std::string& name, const Mat& m);
Mat read_matrix(std::istream& is, const std::string& expect_name);

// Triple files: line "gs-triple v1 n_u=<..> n_y=<..>" then Q, S, R blocks.
void save_triple(const fs::path& p, const QsrTriple& t);
QsrTriple load_triple(const fs::path& p);

// Family files: line "gs-family v1 i=<idx> n_u=<..> n_y=<..> dt=<..>", then
// one line per stamp with the row-major phi_u entries followed by the
// row-major phi_y entries.  The grid is implicit: t_k = k*dt.
void save_family(const fs::path& p, const SchedulingFamily& fam);
SchedulingFamily load_family(const fs::path& p);

// Controller files: line "controller i=<idx>", then A_c, B_c, C_c, P, Q_c
// blocks.  The cross weight is the fixed actuation split b_hat^T/2 and is
// not serialized.
void save_controller(const fs::path& p, const Subcontroller& c);
Subcontroller load_controller(const fs::path& p);

// Bank manifest: "gs-bank v1 n=<N>" plus one "controller <idx> <file>" line
// per member (paths relative to the manifest).  Returns the manifest path.
fs::path save_bank(const fs::path& dir, const std::string& stem,
                   const std::vector<Subcontroller>& bank);
std::vector<Subcontroller> load_bank(const fs::path& manifest);

// Scenario file: [plant] [controller] [trajectory] [scheduling] [sim]
// sections, "key = value" lines, '#' comments.  Angles in degrees.  Unknown
// keys or malformed values raise param_error naming the key.
struct ScenarioConfig {
  PlantModel plant;
  std::vector<Vec> poses;  // radians after parse
  LqrWeights weights;
  bool weights_defaulted = false;
  Waypoints traj;
  SchedMode mode = SchedMode::Matrix;
  std::vector<std::string> family_files;  // mode file
  SimOptions sim;
  std::string output_dir = "out";

  ScenarioConfig();  // Table I-III defaults
};
ScenarioConfig load_scenario(const fs::path& p);

// Simulation trace, one row per output stamp:
// t,q1,q2,q3,qd1,qd2,qd3,e1,e2,e3,tau1,tau2,tau3,u1,u2,V,supply
void write_csv(const fs::path& p, const SimResult& r);

// Minimal standalone SVG line plot; one polyline per series.
struct Series {
  std::string name;
  const Vec* x = nullptr;
  const Vec* y = nullptr;
};
void write_svg(const fs::path& p, const std::string& title, const std::string& x_label,
               const std::string& y_label, const std::vector<Series>& series);

}  // namespace qsched::io
