#include "qsched/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace qsched::io {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end == t.c_str() || *end != '\0')
    throw param_error(what + " is not a number: '" + t + "'");
  return v;
}

long parse_long(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (end == t.c_str() || *end != '\0')
    throw param_error(what + " is not an integer: '" + t + "'");
  return v;
}

// "n_u=3" style header fields
long tagged_long(const std::string& tok, const std::string& tag) {
  if (tok.rfind(tag + "=", 0) != 0) throw param_error("expected " + tag + "=, got '" + tok + "'");
  return parse_long(tok.substr(tag.size() + 1), tag);
}

double tagged_double(const std::string& tok, const std::string& tag) {
  if (tok.rfind(tag + "=", 0) != 0) throw param_error("expected " + tag + "=, got '" + tok + "'");
  return parse_double(tok.substr(tag.size() + 1), tag);
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw param_error("cannot write " + p.string());
  return out;
}

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw param_error("cannot read " + p.string());
  return in;
}

Vec parse_vec(const std::string& value, const std::string& key) {
  std::istringstream ss(value);
  std::vector<double> vals;
  std::string t;
  while (ss >> t) vals.push_back(parse_double(t, key));
  if (vals.empty()) throw param_error(key + " has no values");
  return Eigen::Map<const Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

}  // namespace

void write_matrix(std::ostream& os, const std::string& name, const Mat& m) {
  os << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << fmt17(m(i, j));
    }
    os << '\n';
  }
}

Mat read_matrix(std::istream& is, const std::string& expect_name) {
  std::string name;
  long rows = 0, cols = 0;
  if (!(is >> name >> rows >> cols))
    throw param_error("matrix block header for '" + expect_name + "' is missing");
  if (name != expect_name)
    throw param_error("expected block '" + expect_name + "', found '" + name + "'");
  if (rows < 0 || cols < 0 || rows > 10000 || cols > 10000)
    throw param_error("block '" + name + "' has an implausible shape");
  Mat m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j)
      if (!(is >> m(i, j))) throw param_error("block '" + name + "' is truncated");
  return m;
}

void save_triple(const fs::path& p, const QsrTriple& t) {
  auto out = open_out(p);
  out << "gs-triple v1 n_u=" << t.n_u() << " n_y=" << t.n_y() << '\n';
  write_matrix(out, "Q", t.q);
  write_matrix(out, "S", t.s);
  write_matrix(out, "R", t.r);
}

QsrTriple load_triple(const fs::path& p) {
  auto in = open_in(p);
  std::string header;
  std::getline(in, header);
  const auto tok = tokens(header);
  if (tok.size() != 4 || tok[0] != "gs-triple")
    throw param_error(p.string() + " is not a triple file");
  if (tok[1] != "v1") throw param_error("unsupported triple file version " + tok[1]);
  const long n_u = tagged_long(tok[2], "n_u");
  const long n_y = tagged_long(tok[3], "n_y");
  const Mat q = read_matrix(in, "Q");
  const Mat s = read_matrix(in, "S");
  const Mat r = read_matrix(in, "R");
  if (q.rows() != n_y || s.rows() != n_y || s.cols() != n_u || r.rows() != n_u)
    throw param_error("triple blocks disagree with the header dimensions");
  return QsrTriple(q, s, r);
}

void save_family(const fs::path& p, const SchedulingFamily& fam) {
  const Eigen::Index stamps = fam.grid.size();
  if (stamps < 2) throw param_error("family files need at least two stamps");
  const double dt = fam.grid[1] - fam.grid[0];
  if (!(dt > 0.0)) throw param_error("family grid must increase");
  for (Eigen::Index k = 0; k < stamps; ++k) {
    const double want = static_cast<double>(k) * dt;
    if (std::abs(fam.grid[k] - want) > 1e-9 * std::max(1.0, std::abs(want)))
      throw param_error("family files hold uniform grids from zero only");
  }
  auto out = open_out(p);
  out << "gs-family v1 i=" << fam.index << " n_u=" << fam.n_u() << " n_y=" << fam.n_y()
      << " dt=" << fmt17(dt) << '\n';
  for (Eigen::Index k = 0; k < stamps; ++k) {
    bool first = true;
    for (const Mat* m : {&fam.phi_u[k], &fam.phi_y[k]}) {
      for (Eigen::Index i = 0; i < m->rows(); ++i)
        for (Eigen::Index j = 0; j < m->cols(); ++j) {
          if (!first) out << ' ';
          out << fmt17((*m)(i, j));
          first = false;
        }
    }
    out << '\n';
  }
}

SchedulingFamily load_family(const fs::path& p) {
  auto in = open_in(p);
  std::string header;
  std::getline(in, header);
  const auto tok = tokens(header);
  if (tok.size() != 6 || tok[0] != "gs-family")
    throw param_error(p.string() + " is not a family file");
  if (tok[1] != "v1") throw param_error("unsupported family file version " + tok[1]);
  const int index = static_cast<int>(tagged_long(tok[2], "i"));
  const long n_u = tagged_long(tok[3], "n_u");
  const long n_y = tagged_long(tok[4], "n_y");
  const double dt = tagged_double(tok[5], "dt");
  if (n_u < 1 || n_y < 1) throw param_error("family dimensions must be positive");
  if (!(dt > 0.0)) throw param_error("family dt must be positive");

  std::vector<Mat> pu, py;
  std::string line;
  long stamp = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::istringstream ss(line);
    Mat u(n_u, n_u), y(n_y, n_y);
    for (Mat* m : {&u, &y})
      for (long i = 0; i < m->rows(); ++i)
        for (long j = 0; j < m->cols(); ++j)
          if (!(ss >> (*m)(i, j)))
            throw param_error("stamp row " + std::to_string(stamp) + " has too few entries");
    std::string extra;
    if (ss >> extra)
      throw param_error("stamp row " + std::to_string(stamp) + " has trailing entries");
    pu.push_back(std::move(u));
    py.push_back(std::move(y));
    ++stamp;
  }
  if (stamp == 0) throw param_error(p.string() + " has no stamps");
  Vec grid(stamp);
  for (long k = 0; k < stamp; ++k) grid[k] = static_cast<double>(k) * dt;
  return SchedulingFamily(index, grid, std::move(pu), std::move(py));
}

void save_controller(const fs::path& p, const Subcontroller& c) {
  auto out = open_out(p);
  out << "controller i=" << c.index << '\n';
  write_matrix(out, "A_c", c.a_c);
  write_matrix(out, "B_c", c.b_c);
  write_matrix(out, "C_c", c.c_c);
  write_matrix(out, "P", c.p);
  const Mat q_c = -c.eps * Mat::Identity(c.c_c.rows(), c.c_c.rows());
  write_matrix(out, "Q_c", q_c);
  write_matrix(out, "q_bar", c.q_bar);
}

Subcontroller load_controller(const fs::path& p) {
  auto in = open_in(p);
  std::string header;
  std::getline(in, header);
  const auto tok = tokens(header);
  if (tok.size() != 2 || tok[0] != "controller")
    throw param_error(p.string() + " is not a controller file");
  Subcontroller c;
  c.index = static_cast<int>(tagged_long(tok[1], "i"));
  c.a_c = read_matrix(in, "A_c");
  c.b_c = read_matrix(in, "B_c");
  c.c_c = read_matrix(in, "C_c");
  c.p = read_matrix(in, "P");
  const Mat q_c = read_matrix(in, "Q_c");
  if (q_c.rows() < 1 || q_c.rows() != q_c.cols())
    throw param_error("Q_c block must be square");
  c.eps = -q_c(0, 0);
  const Mat qb = read_matrix(in, "q_bar");
  if (qb.cols() != 1) throw param_error("q_bar block must be a column");
  c.q_bar = qb.col(0);
  c.s_c = 0.5 * PlantModel::b_hat().transpose();
  return c;
}

fs::path save_bank(const fs::path& dir, const std::string& stem,
                   const std::vector<Subcontroller>& bank) {
  fs::create_directories(dir);
  const fs::path manifest = dir / (stem + ".bank");
  auto out = open_out(manifest);
  out << "gs-bank v1 n=" << bank.size() << '\n';
  for (const Subcontroller& c : bank) {
    const std::string fname = stem + "_c" + std::to_string(c.index) + ".txt";
    save_controller(dir / fname, c);
    out << "controller " << c.index << ' ' << fname << '\n';
  }
  return manifest;
}

std::vector<Subcontroller> load_bank(const fs::path& manifest) {
  auto in = open_in(manifest);
  std::string header;
  std::getline(in, header);
  const auto tok = tokens(header);
  if (tok.size() != 3 || tok[0] != "gs-bank")
    throw param_error(manifest.string() + " is not a bank manifest");
  if (tok[1] != "v1") throw param_error("unsupported bank version " + tok[1]);
  const long n = tagged_long(tok[2], "n");
  std::vector<Subcontroller> bank;
  std::string line;
  while (std::getline(in, line)) {
    const auto lt = tokens(line);
    if (lt.empty()) continue;
    if (lt.size() != 3 || lt[0] != "controller")
      throw param_error("bad manifest line: '" + line + "'");
    bank.push_back(load_controller(manifest.parent_path() / lt[2]));
  }
  if (static_cast<long>(bank.size()) != n)
    throw param_error("manifest promises " + std::to_string(n) + " controllers, lists " +
                      std::to_string(bank.size()));
  return bank;
}

namespace {

constexpr double kDeg = M_PI / 180.0;

PlantModel table_plant() {
  Vec len(3), lenm(3), mass(3), massm(3), damp(3);
  len << 1.10, 0.60, 0.50;
  lenm << 1.21, 0.54, 0.55;
  mass << 2.00, 0.90, 0.30;
  massm << 2.40, 0.72, 0.36;
  damp << 5.0, 2.5, 2.5;
  const Mat kp = Eigen::Vector3d(5.0, 35.0, 35.0).asDiagonal();
  return PlantModel(len, lenm, mass, massm, damp, kp);
}

Vec deg3(double a, double b, double c) {
  Vec q(3);
  q << a * kDeg, b * kDeg, c * kDeg;
  return q;
}

}  // namespace

ScenarioConfig::ScenarioConfig() : plant(table_plant()), weights(LqrWeights::defaults()) {
  poses = {deg3(0, 160, -90), deg3(0, 45, 45), deg3(0, -90, 160)};
  traj.times.resize(5);
  traj.times << 0.0, 2.0, 3.0, 7.0, 9.0;
  traj.q = {deg3(0, 160, -90), deg3(0, 160, -90), deg3(0, 45, 45), deg3(0, 45, 45),
            deg3(0, -90, 160)};
}

ScenarioConfig load_scenario(const fs::path& p) {
  auto in = open_in(p);

  // pending plant fields, prefilled with the defaults so partial sections work
  const ScenarioConfig defaults;
  Vec len = defaults.plant.length, lenm = defaults.plant.length_measured;
  Vec mass = defaults.plant.mass, massm = defaults.plant.mass_measured;
  Vec damp = defaults.plant.damping;
  Vec kp_diag(3);
  kp_diag << defaults.plant.kp(0, 0), defaults.plant.kp(1, 1), defaults.plant.kp(2, 2);

  std::map<int, Vec> poses, waypoints;
  std::map<int, std::string> families;
  std::optional<Vec> times, state_w, input_w;
  std::optional<std::string> mode_name;

  ScenarioConfig cfg;
  std::string line, section;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw param_error("malformed section header: " + t);
      section = t.substr(1, t.size() - 2);
      if (section != "plant" && section != "controller" && section != "trajectory" &&
          section != "scheduling" && section != "sim")
        throw param_error("unknown section [" + section + "]");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw param_error("line " + std::to_string(line_no) + " is not key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (section.empty()) throw param_error("key '" + key + "' appears before any section");

    auto numbered = [&](const std::string& prefix) -> int {
      // -1 when the key does not carry the prefix + positive suffix shape
      if (key.rfind(prefix, 0) != 0) return -1;
      const std::string suffix = key.substr(prefix.size());
      if (suffix.empty()) return -1;
      char* end = nullptr;
      const long v = std::strtol(suffix.c_str(), &end, 10);
      if (*end != '\0' || v < 1) return -1;
      return static_cast<int>(v);
    };

    if (section == "plant") {
      if (key == "length")
        len = parse_vec(value, key);
      else if (key == "length_measured")
        lenm = parse_vec(value, key);
      else if (key == "mass")
        mass = parse_vec(value, key);
      else if (key == "mass_measured")
        massm = parse_vec(value, key);
      else if (key == "damping")
        damp = parse_vec(value, key);
      else if (key == "kp")
        kp_diag = parse_vec(value, key);
      else
        throw param_error("unknown key '" + key + "' in [plant]");
    } else if (section == "controller") {
      const int idx = numbered("pose");
      if (idx > 0)
        poses[idx] = parse_vec(value, key);
      else if (key == "state_w")
        state_w = parse_vec(value, key);
      else if (key == "input_w")
        input_w = parse_vec(value, key);
      else
        throw param_error("unknown key '" + key + "' in [controller]");
    } else if (section == "trajectory") {
      const int idx = numbered("waypoint");
      if (idx > 0)
        waypoints[idx] = parse_vec(value, key);
      else if (key == "times")
        times = parse_vec(value, key);
      else
        throw param_error("unknown key '" + key + "' in [trajectory]");
    } else if (section == "scheduling") {
      const int idx = numbered("family");
      if (idx > 0)
        families[idx] = value;
      else if (key == "mode")
        mode_name = value;
      else
        throw param_error("unknown key '" + key + "' in [scheduling]");
    } else {  // [sim]
      if (key == "dt")
        cfg.sim.dt = parse_double(value, key);
      else if (key == "horizon")
        cfg.sim.horizon = parse_double(value, key);
      else if (key == "output_stride")
        cfg.sim.output_stride = static_cast<int>(parse_long(value, key));
      else if (key == "rate_error_input") {
        if (value == "true" || value == "1")
          cfg.sim.rate_error_input = true;
        else if (value == "false" || value == "0")
          cfg.sim.rate_error_input = false;
        else
          throw param_error("rate_error_input wants true or false, got '" + value + "'");
      } else if (key == "output_dir")
        cfg.output_dir = value;
      else
        throw param_error("unknown key '" + key + "' in [sim]");
    }
  }

  if (kp_diag.size() != 3) throw param_error("kp wants three diagonal entries");
  cfg.plant = PlantModel(len, lenm, mass, massm, damp,
                         Mat(Eigen::Vector3d(kp_diag).asDiagonal()));

  auto collect = [](const std::map<int, Vec>& m, const std::string& what) {
    std::vector<Vec> out;
    int expect = 1;
    for (const auto& [idx, v] : m) {
      if (idx != expect)
        throw param_error(what + " indices must run 1.." + std::to_string(m.size()));
      out.push_back(v);
      ++expect;
    }
    return out;
  };

  if (!poses.empty()) {
    cfg.poses.clear();
    for (Vec& q : collect(poses, "pose")) cfg.poses.push_back(q * kDeg);
  }
  if (state_w || input_w) {
    if (state_w) cfg.weights.state_w = *state_w;
    if (input_w) cfg.weights.input_w = *input_w;
  } else {
    cfg.weights_defaulted = true;
  }
  if (times || !waypoints.empty()) {
    if (!times || waypoints.empty())
      throw param_error("trajectory needs both times and waypoints");
    auto q = collect(waypoints, "waypoint");
    if (static_cast<Eigen::Index>(q.size()) != times->size())
      throw param_error("waypoint count must match times");
    cfg.traj.times = *times;
    cfg.traj.q.clear();
    for (Vec& w : q) cfg.traj.q.push_back(w * kDeg);
  }
  if (mode_name) {
    if (*mode_name == "none")
      cfg.mode = SchedMode::None;
    else if (*mode_name == "identity")
      cfg.mode = SchedMode::Identity;
    else if (*mode_name == "scalar")
      cfg.mode = SchedMode::Scalar;
    else if (*mode_name == "matrix")
      cfg.mode = SchedMode::Matrix;
    else if (*mode_name == "file")
      cfg.mode = SchedMode::File;
    else
      throw param_error("unknown scheduling mode '" + *mode_name + "'");
  }
  if (!families.empty()) {
    int expect = 1;
    for (const auto& [idx, f] : families) {
      if (idx != expect) throw param_error("family indices must run 1..n");
      cfg.family_files.push_back(f);
      ++expect;
    }
  }
  return cfg;
}

void write_csv(const fs::path& p, const SimResult& r) {
  auto out = open_out(p);
  out << "t,q1,q2,q3,qd1,qd2,qd3,e1,e2,e3,tau1,tau2,tau3,u1,u2,V,supply\n";
  for (Eigen::Index k = 0; k < r.t.size(); ++k) {
    out << fmt17(r.t[k]);
    for (int j = 0; j < 3; ++j) out << ',' << fmt17(r.q[k][j]);
    for (int j = 0; j < 3; ++j) out << ',' << fmt17(r.qd[k][j]);
    for (int j = 0; j < 3; ++j) out << ',' << fmt17(r.q[k][j] - r.th_d[k][j]);
    for (int j = 0; j < 3; ++j) out << ',' << fmt17(r.tau[k][j]);
    for (int j = 0; j < 2; ++j) out << ',' << fmt17(r.u_bar[k][j]);
    out << ',' << fmt17(r.storage[k]) << ',' << fmt17(r.supply[k]) << '\n';
  }
}

void write_svg(const fs::path& p, const std::string& title, const std::string& x_label,
               const std::string& y_label, const std::vector<Series>& series) {
  if (series.empty()) throw param_error("a plot needs at least one series");
  for (const Series& s : series) {
    if (s.x == nullptr || s.y == nullptr) throw param_error("series '" + s.name + "' has no data");
    if (s.x->size() != s.y->size() || s.x->size() < 1)
      throw dim_error("series '" + s.name + "' sizes disagree");
  }
  double xmin = (*series[0].x).minCoeff(), xmax = (*series[0].x).maxCoeff();
  double ymin = (*series[0].y).minCoeff(), ymax = (*series[0].y).maxCoeff();
  for (const Series& s : series) {
    xmin = std::min(xmin, s.x->minCoeff());
    xmax = std::max(xmax, s.x->maxCoeff());
    ymin = std::min(ymin, s.y->minCoeff());
    ymax = std::max(ymax, s.y->maxCoeff());
  }
  if (!(xmax > xmin)) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (!(ymax > ymin)) {
    ymin -= 1.0;
    ymax += 1.0;
  }

  const double w = 960, h = 600, ml = 70, mr = 160, mt = 50, mb = 60;
  const double pw = w - ml - mr, ph = h - mt - mb;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  const int n_pal = 8;

  auto out = open_out(p);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << w / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"18\" "
         "font-family=\"sans-serif\">"
      << xml_escape(title) << "</text>\n";

  // frame and ticks
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  char buf[64];
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    std::snprintf(buf, sizeof buf, "%.4g", xv);
    out << "<line x1=\"" << px(xv) << "\" y1=\"" << mt + ph << "\" x2=\"" << px(xv) << "\" y2=\""
        << mt + ph + 5 << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << px(xv) << "\" y=\"" << mt + ph + 20
        << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" << buf
        << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g", yv);
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml << "\" y2=\""
        << py(yv) << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">" << buf
        << "</text>\n";
  }
  out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << h - 15
      << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\">"
      << xml_escape(x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 18 "
      << mt + ph / 2 << ")\">" << xml_escape(y_label) << "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = palette[si % n_pal];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (Eigen::Index k = 0; k < s.x->size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.6g,%.6g ", px((*s.x)[k]), py((*s.y)[k]));
      out << buf;
    }
    out << "\"/>\n";
    // legend row
    const double ly = mt + 18 + 20 * static_cast<double>(si);
    out << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw + 40
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << ml + pw + 46 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << xml_escape(s.name)
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace qsched::io
