// Serial vs OpenMP timing for the per-stamp scan kernels.  Prints one line
// per kernel with both wall times and the speedup; exits nonzero if the two
// paths disagree beyond roundoff.

#include "qsched/kernels.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

using namespace qsched;
using kern::Exec;

namespace {

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

Mat rand_mat(std::mt19937_64& rng, int r, int c) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = u(rng);
  return m;
}

template <class F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const double t0 = now_s();
    f();
    best = std::min(best, now_s() - t0);
  }
  return best;
}

void report(const char* name, double serial_s, double parallel_s, bool agree) {
  std::printf("%-18s serial %9.4f ms   parallel %9.4f ms   speedup %5.2fx   %s\n", name,
              serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
              agree ? "agree" : "DISAGREE");
}

}  // namespace

int main(int argc, char** argv) {
  int stamps = 200000;
  if (argc > 1) stamps = std::atoi(argv[1]);
  if (stamps < 1) {
    std::fprintf(stderr, "usage: bench_kernels [stamps]\n");
    return 2;
  }
  const int reps = 3;
  std::mt19937_64 rng(42);

  std::vector<Mat> phi_u(stamps), phi_y(stamps);
  for (int k = 0; k < stamps; ++k) {
    phi_u[k] = rand_mat(rng, 3, 3);
    phi_y[k] = rand_mat(rng, 2, 2);
  }
  const Mat s = rand_mat(rng, 2, 3);
  int bad = 0;

  {
    double rs = 0, rp = 0;
    const double ts = time_best_of(reps, [&] { rs = kern::pc_residual_max(phi_u, phi_y, s, Exec::Serial); });
    const double tp = time_best_of(reps, [&] { rp = kern::pc_residual_max(phi_u, phi_y, s, Exec::Parallel); });
    const bool ok = rs == rp;  // max reduction of identical per-stamp values
    report("pc_residual_max", ts, tp, ok);
    bad += !ok;
  }
  {
    kern::SvScan a, b;
    const double ts = time_best_of(reps, [&] { a = kern::sv_scan(phi_u, Exec::Serial); });
    const double tp = time_best_of(reps, [&] { b = kern::sv_scan(phi_u, Exec::Parallel); });
    const bool ok = (a.smax - b.smax).cwiseAbs().maxCoeff() == 0.0 &&
                    (a.smin - b.smin).cwiseAbs().maxCoeff() == 0.0;
    report("sv_scan", ts, tp, ok);
    bad += !ok;
  }
  {
    std::vector<const std::vector<Mat>*> bankref = {&phi_y, &phi_y, &phi_y};
    double rs = 0, rp = 0;
    const double ts = time_best_of(reps, [&] { rs = kern::stacked_sigma_max(bankref, Exec::Serial); });
    const double tp = time_best_of(reps, [&] { rp = kern::stacked_sigma_max(bankref, Exec::Parallel); });
    const bool ok = rs == rp;
    report("stacked_sigma_max", ts, tp, ok);
    bad += !ok;
  }
  {
    std::vector<Vec> u(stamps), y(stamps);
    for (int k = 0; k < stamps; ++k) {
      u[k] = rand_mat(rng, 3, 1).col(0);
      y[k] = rand_mat(rng, 2, 1).col(0);
    }
    const Mat q = rand_mat(rng, 2, 2), r = rand_mat(rng, 3, 3);
    Vec a, b;
    const double ts =
        time_best_of(reps, [&] { a = kern::supply_rate_scan(u, y, q, s, r, Exec::Serial); });
    const double tp =
        time_best_of(reps, [&] { b = kern::supply_rate_scan(u, y, q, s, r, Exec::Parallel); });
    const bool ok = (a - b).cwiseAbs().maxCoeff() == 0.0;  // per-stamp values, no reduction
    report("supply_rate_scan", ts, tp, ok);
    bad += !ok;
  }

  return bad ? 1 : 0;
}
