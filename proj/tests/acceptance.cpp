// Acceptance suite: one line per criterion, PASS/FAIL with measured values.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "wb/density.hpp"
#include "wb/droplets.hpp"
#include "wb/energy.hpp"
#include "wb/io.hpp"
#include "wb/search.hpp"
#include "wb/toy.hpp"

using namespace wb;

namespace {

struct Criterion {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [FAILED: " << what << "]";
    }
  }
};

int g_failures = 0;

void run_criterion(int number, const std::string& title, double time_limit_s,
                   const std::function<void(Criterion&)>& body) {
  Criterion c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail << " [EXCEPTION: " << e.what() << "]";
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (time_limit_s > 0.0 && secs > time_limit_s) {
    c.ok = false;
    c.detail << " [FAILED: runtime " << secs << "s exceeds " << time_limit_s
             << "s]";
  }
  std::string detail = c.detail.str();
  std::printf("%s %2d  %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", number,
              title.c_str(), secs, detail.empty() ? "" : " | ",
              detail.c_str());
  std::fflush(stdout);
  if (!c.ok) ++g_failures;
}

double lcg_uniform(uint64_t& state) {
  state = state * 6364136223846793005ull + 1442695040888963407ull;
  return double(state >> 11) * 0x1.0p-53;
}

template <typename F>
double golden(F&& f, double a, double b, double tol = 1e-12) {
  const double phi = 0.6180339887498949;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// The droplet-regime kernel used across the search criteria: power-law well
// r^2 - 1 up to a = 2, barrier 5 on (2, 7], structural margin a+w <= W-2w.
KernelPtr acceptance_kernel(Profile tail = Profile::zero()) {
  return make_power_law(2.0, 1.0, 2.0, 5.0, 5.0, tail);
}

GridDensity ball_on_box(double center, double radius, double h, double lo,
                        double hi) {
  int n = static_cast<int>(std::llround((hi - lo) / h));
  GridDensity g = GridDensity::zeros(1, {lo, 0.0}, h, {n, 1});
  for (int i = 0; i < n; ++i) {
    double x = g.cell_center(i)[0];
    if (std::abs(x - center) <= radius) g.set_value(i, 1.0);
  }
  return g;
}

void criterion_1(Criterion& c) {
  double c12 = c_np(1, 2.0, CnpMethod::closed_form);
  c.detail << "C12=" << c12;
  c.require(std::abs(c12 - 1.0 / 6.0) <= 1e-12, "C_{1,2} closed form");

  double c22_mc = c_np(2, 2.0, CnpMethod::monte_carlo, 10'000'000, 12345);
  c.detail << " C22_mc_err=" << std::abs(c22_mc - 1.0 / M_PI);
  c.require(std::abs(c22_mc - 1.0 / M_PI) <= 1e-3,
            "C_{2,2} Monte Carlo within 1e-3");

  double c22_pq = c_np(2, 2.0, CnpMethod::product_quadrature);
  c.detail << " C22_pq_err=" << std::abs(c22_pq - 1.0 / M_PI);
  c.require(std::abs(c22_pq - 1.0 / M_PI) <= 1e-6,
            "C_{2,2} quadrature within 1e-6");
}

void criterion_2(Criterion& c) {
  SplitThresholds th = split_thresholds(PowerLawParams(1, 2.0, 1.0));
  c.detail << "m0=" << th.m0 << " m1=" << th.m1;
  c.require(std::abs(th.m0 - std::sqrt(3.0)) <= 1e-9, "m0 = sqrt(3)");
  c.require(std::abs(th.m1 - 2.0) <= 1e-9, "m1 = 2");

  uint64_t state = 1001;
  for (int i = 0; i < 100; ++i) {
    double p = 1.0 + 3.0 * lcg_uniform(state);
    if (p <= 1.0) p = 1.000001;
    double d = 5.0 * lcg_uniform(state);
    if (d <= 0.0) d = 1e-3;
    SplitThresholds t = split_thresholds(PowerLawParams(1, p, d));
    if (!(t.m0 < t.m1)) {
      c.require(false, "m0 < m1 violated at p=" + std::to_string(p) +
                           " d=" + std::to_string(d));
      return;
    }
  }
  c.detail << " m0<m1 held for 100 random (p,d)";
}

void criterion_3(Criterion& c) {
  PowerLawParams params(1, 2.0, 1.0);

  auto [t15, f15] = best_two_ball_split(params, 1.5);
  c.require(t15 == 0.0, "m=1.5 gives t*=0");

  auto [t25, f25] = best_two_ball_split(params, 2.5);
  c.require(t25 == 0.5, "m=2.5 gives t*=1/2");

  auto [t19, f19] = best_two_ball_split(params, 1.9);
  double oracle = golden(
      [&](double t) { return split_function_f(params, 1.9, t); }, 0.0, 0.5,
      1e-13);
  c.detail << "t*(1.9)=" << t19 << " oracle=" << oracle;
  c.require(std::abs(t19 - oracle) <= 1e-8, "interior t* matches oracle");

  uint64_t state = 77;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    double m = 0.5 + 4.0 * lcg_uniform(state);
    double t = 0.05 + 0.4 * lcg_uniform(state);
    double fd = (split_function_f(params, m, t + 1e-6) -
                 split_function_f(params, m, t - 1e-6)) /
                2e-6;
    double an = split_function_df(params, m, t);
    worst = std::max(worst, std::abs(an - fd) / std::max(1.0, std::abs(fd)));
  }
  c.detail << " worst_fd_rel=" << worst;
  c.require(worst <= 1e-6, "f' matches finite differences to 1e-6");
}

void criterion_4(Criterion& c) {
  PowerLawParams params(1, 2.0, 1.0);
  auto g = [&](double m) { return ball_energy_g(params, m); };
  uint64_t state = 4242;
  double worst_excess = 0.0;

  for (int trial = 0; trial < 20; ++trial) {
    double m = 0.05 + 9.95 * lcg_uniform(state);
    GeneralizedMinimizer gm = optimal_partition(params, m, 6);

    std::vector<double> sorted = gm.masses;
    std::sort(sorted.begin(), sorted.end());
    double large = sorted.back();
    int smaller = 0;
    for (double mi : sorted) {
      bool is_large = std::abs(mi - large) <= 1e-6;
      bool is_small = std::abs(mi - sorted.front()) <= 1e-6;
      if (!is_large && !is_small) {
        c.require(false, "more than two distinct masses at m=" +
                             std::to_string(m));
        return;
      }
      if (!is_large) ++smaller;
    }
    if (smaller > 1) {
      c.require(false, "smaller mass occurs twice at m=" + std::to_string(m));
      return;
    }

    // structure-free oracle: 100 random starts of projected coordinate
    // descent over the k-simplex, k = 1..4
    double oracle = g(m);
    for (int k = 2; k <= 4; ++k) {
      for (int start = 0; start < 100; ++start) {
        std::vector<double> masses(k);
        double sum = 0.0;
        for (double& mi : masses) {
          mi = 0.01 + lcg_uniform(state);
          sum += mi;
        }
        for (double& mi : masses) mi *= m / sum;

        double total = 0.0;
        for (double mi : masses) total += g(mi);
        for (int sweep = 0; sweep < 60; ++sweep) {
          double before = total;
          for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
              auto pair_cost = [&](double t) {
                return g(masses[i] - t) + g(masses[j] + t);
              };
              double t = golden(pair_cost, -masses[j], masses[i], 1e-11);
              double gain = g(masses[i]) + g(masses[j]) - pair_cost(t);
              if (gain > 0.0) {
                masses[i] -= t;
                masses[j] += t;
                total -= gain;
              }
            }
          if (before - total < 1e-13) break;
        }
        oracle = std::min(oracle, total);
      }
    }
    worst_excess = std::max(worst_excess, gm.total_energy - oracle);
  }
  c.detail << "worst partition excess over oracle=" << worst_excess;
  c.require(worst_excess <= 1e-7, "oracle never improves by more than 1e-7");
}

void criterion_5(Criterion& c) {
  PowerLawParams params(1, 2.0, 1.0);
  const double limit = -2.0 * std::sqrt(2.0) / 3.0;
  double e100 = minimal_energy_E(params, 100.0) / 100.0;
  c.detail << "E(100)/100=" << e100 << " limit=" << limit;
  c.require(std::abs(e100 - limit) <= 0.01 * std::abs(limit),
            "E(100)/100 within 1% of the limit");

  uint64_t state = 555;
  for (int i = 0; i < 50; ++i) {
    double m = 1e-3 + 10.0 * lcg_uniform(state);
    double n = 1e-3 + 10.0 * lcg_uniform(state);
    SubadditivityReport rep = subadditivity_probe(params, m, n);
    if (!rep.ok) {
      c.require(false, "subadditivity failed at m=" + std::to_string(m) +
                           " n=" + std::to_string(n));
      return;
    }
  }
  c.detail << " subadditivity held for 50 pairs";
}

void criterion_6(Criterion& c) {
  for (double a : {0.25, 0.5, 0.75}) {
    auto [cfg, energy] = w_zero_example(a);
    if (std::abs(energy - (-1.0 - a * a)) > 1e-12) {
      c.require(false, "w=0 example off at a=" + std::to_string(a));
      return;
    }
  }
  c.detail << "w=0 example exact for a in {0.25, 0.5, 0.75};";

  for (double m : {1.0, 2.0, 3.0}) {
    ToyMinimum tm = toy_minimal_energy(m, 0.5, 1);
    EnergyResult we =
        exact_interval_energy(ToyKernel(0.5), *tm.interval_witness);
    if (tm.value != -m || std::abs(we.value - (-m)) > 1e-12) {
      c.require(false, "narrow regime off at m=" + std::to_string(m));
      return;
    }
  }
  c.detail << " narrow m=1,2,3 exact;";

  ToyMinimum wide = toy_minimal_energy(2.5, 1.5, 1);
  EnergyResult we =
      exact_interval_energy(ToyKernel(1.5), *wide.interval_witness);
  c.detail << " wide(2.5)=" << wide.value;
  c.require(std::abs(wide.value - (-2.25)) <= 1e-12 &&
                std::abs(we.value - (-2.25)) <= 1e-12,
            "wide regime m=2.5 gives -2.25 via witness");
}

void criterion_7(Criterion& c) {
  const double C = 1.0;  // pinned empirical constant for the C*h bound

  auto t0 = std::chrono::steady_clock::now();
  BruteForceResult small = brute_force_min(6.0, 0.5, 1.0, 1.5);
  double small_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  double err_small = std::abs(small.energy - (-1.0));
  c.detail << "exh(6,0.5,m=1): E=" << small.energy;
  c.require(small.exhaustive, "instance 1 runs exhaustively");
  c.require(err_small <= C * 0.5 + 1e-12, "instance 1 within C*h");
  c.require(small_secs < 60.0, "instance 1 under a minute");

  t0 = std::chrono::steady_clock::now();
  BruteForceResult big = brute_force_min(8.0, 0.5, 2.0, 1.5);
  double big_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  double err_h = std::abs(big.energy - (-2.0));
  c.detail << " exh(8,0.5,m=2): E=" << big.energy << " err=" << err_h;
  c.require(big.exhaustive, "instance 2 runs exhaustively");
  c.require(err_h <= C * 0.5 + 1e-12, "instance 2 within C*h");
  c.require(big_secs < 60.0, "instance 2 under a minute");

  t0 = std::chrono::steady_clock::now();
  BruteForceResult fine = brute_force_min(8.0, 0.25, 2.0, 1.5, 42);
  double fine_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  double err_h2 = std::abs(fine.energy - (-2.0));
  c.detail << " anneal(8,0.25,m=2): E=" << fine.energy << " err=" << err_h2;
  c.require(!fine.exhaustive, "h=0.25 instance uses annealing mode");
  c.require(err_h2 <= C * 0.25 + 1e-12, "h=0.25 instance within C*h");
  c.require(fine_secs < 60.0, "h=0.25 instance under a minute");

  // The halving-ratio gate as stated. The grid convention packs 1/h+1 cells
  // into centre-span 1 (cluster mass 1+h), making the defect 2h^2; the
  // measured ratio is 4, not in [1.5, 2.5]. Reported honestly.
  double ratio = err_h2 > 0.0 ? err_h / err_h2 : kInf;
  c.detail << " ratio=" << ratio;
  c.require(ratio >= 1.5 && ratio <= 2.5,
            "error halving ratio in [1.5, 2.5] (defect scales as 2h^2; see "
            "notes)");
}

void criterion_8(Criterion& c) {
  KernelPtr k = acceptance_kernel();

  GridDensity ball = ball_on_box(0.0, 0.5, 0.05, -2.5, 2.5);
  ELReport el = el_check(*k, ball, 1e-9);
  c.detail << "lambda=" << el.lambda
           << " viol0=" << el.violations_on_zero_set
           << " viol1=" << el.violations_on_one_set;
  c.require(el.lambda < 0.0, "lambda < 0");
  c.require(el.violations_on_zero_set == 0.0, "zero-set violations are 0");
  c.require(el.violations_on_one_set == 0.0, "one-set violations are 0");

  c.require(separation_check(*k, ball, 1.0).empty(),
            "separation empty on the small ball");

  GridDensity far = GridDensity::zeros(1, {-2.0, 0.0}, 0.05, {240, 1});
  for (int i = 0; i < far.size(); ++i) {
    double x = far.cell_center(i)[0];
    if (std::abs(x) <= 0.525 || std::abs(x - 8.0) <= 0.525)
      far.set_value(i, 1.0);
  }
  c.require(separation_check(*k, far, 1.0).empty(),
            "separation empty on well-separated droplets");

  // deliberately violating pair: centre distance 3.5 inside [a+w, a+W-w] =
  // [3,4] of a constant-well kernel, potentials just above 0
  KernelPtr cw = make_well_barrier(4.9, 1.5, 1.5, 5.0, 4.0,
                                   Profile::constant(-4.9),
                                   Profile::constant(5.0), Profile::zero());
  GridDensity bad = grid_from_intervals(
      IntervalConfig({{-0.6, 0.6}, {2.9, 4.1}}), 0.1);
  SeparationReport rep = separation_check(*cw, bad, 1.0);
  c.detail << " offending_pairs=" << rep.offending_pairs.size();
  c.require(!rep.empty(), "separation flags the violating two-ball config");
}

void criterion_9(Criterion& c) {
  PowerLawParams params(1, 2.0, 1.0);
  std::vector<double> masses{1.05, 1.05};

  KernelPtr tail_kernel = acceptance_kernel(Profile::inverse_power(0.1, 2.0));
  SequenceTrace trace =
      minimizing_sequence(params, masses, {10.0, 20.0, 40.0}, *tail_kernel);
  for (const auto& row : trace.rows) {
    c.detail << " D=" << row.separation << " gap=" << row.gap
             << " bound=" << row.bound << ";";
    if (!row.within_bound) {
      c.require(false, "tail bound violated at D=" +
                           std::to_string(row.separation));
      return;
    }
  }
  c.require(trace.rows[1].gap < trace.rows[0].gap &&
                trace.rows[2].gap < trace.rows[1].gap,
            "gap decreases monotonically");

  KernelPtr trunc = truncate_kernel(acceptance_kernel(), 7.0);
  SequenceTrace exact = minimizing_sequence(params, masses, {10.0}, *trunc);
  c.detail << " truncated_gap=" << exact.rows[0].gap;
  c.require(exact.rows[0].gap <= 1e-12, "truncated kernel gap <= 1e-12");
}

void criterion_10(Criterion& c) {
  KernelPtr k = truncate_kernel(acceptance_kernel(), 7.0);
  PowerLawParams params(1, 2.0, 1.0);

  AnnealSchedule sched;
  sched.seed = 42;

  auto t0 = std::chrono::steady_clock::now();
  AnnealResult one = anneal(*k, 1.5, default_anneal_box(*k, 1.5, 1), 0.05, sched);
  double secs1 =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  double target = ball_energy_g(params, 1.5);
  c.detail << "m=1.5: E=" << one.best_energy << " target=" << target;
  c.require(std::abs(one.best_energy - target) <= 0.05 * std::abs(target),
            "m=1.5 energy within 5%");
  c.require(cluster_decompose(one.best, 7.0).clusters.size() == 1,
            "m=1.5 forms one cluster");
  c.require(secs1 < 180.0, "m=1.5 run under 3 minutes");

  t0 = std::chrono::steady_clock::now();
  AnnealResult two = anneal(*k, 2.1, default_anneal_box(*k, 2.1, 1), 0.05, sched);
  double secs2 =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  ClusterSet clusters = cluster_decompose(two.best, 7.0);
  c.detail << " m=2.1: E=" << two.best_energy
           << " clusters=" << clusters.clusters.size() << " masses=";
  for (double m : clusters.masses) c.detail << m << " ";
  c.require(clusters.clusters.size() == 2, "m=2.1 forms two clusters");
  for (double m : clusters.masses)
    c.require(std::abs(m - 1.05) <= 0.105, "cluster mass within 10% of 1.05");
  c.require(secs2 < 180.0, "m=2.1 run under 3 minutes");

  // determinism: identical seeds reproduce the density file byte for byte
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "wb_acceptance_det";
  fs::create_directories(dir);
  AnnealResult rerun = anneal(*k, 1.5, default_anneal_box(*k, 1.5, 1), 0.05, sched);
  save_grid_text(one.best, (dir / "a.txt").string());
  save_grid_text(rerun.best, (dir / "b.txt").string());
  std::ifstream fa(dir / "a.txt", std::ios::binary);
  std::ifstream fb(dir / "b.txt", std::ios::binary);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  c.require(sa.str() == sb.str() && !sa.str().empty(),
            "identical seed reproduces byte-identical density");
  std::error_code ec;
  fs::remove_all(dir, ec);
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");

  run_criterion(1, "C_{1,2}=1/6 closed form; C_{2,2}=1/pi by MC and quadrature",
                30.0, criterion_1);
  run_criterion(2, "thresholds m0=sqrt(3), m1=2; m0<m1 for 100 random (p,d)",
                0.0, criterion_2);
  run_criterion(3, "two-ball split cases and f' vs finite differences", 0.0,
                criterion_3);
  run_criterion(4, "partition structure vs 100-start structure-free oracle",
                120.0, criterion_4);
  run_criterion(5, "linear growth E(100)/100 and subadditivity", 0.0,
                criterion_5);
  run_criterion(6, "toy model exact values (w=0 example, narrow, wide)", 0.0,
                criterion_6);
  run_criterion(7, "brute-force agreement with toy theory", 0.0, criterion_7);
  run_criterion(8, "variational diagnostics (EL + separation)", 0.0,
                criterion_8);
  run_criterion(9, "minimizing-sequence convergence and tail bound", 0.0,
                criterion_9);
  run_criterion(10, "annealer recovery and determinism", 0.0, criterion_10);

  std::printf("%d of 10 criteria failed\n", g_failures);
  return g_failures;
}
