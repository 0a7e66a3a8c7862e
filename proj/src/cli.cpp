#include "wb/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "wb/density.hpp"
#include "wb/droplets.hpp"
#include "wb/energy.hpp"
#include "wb/io.hpp"
#include "wb/search.hpp"
#include "wb/svg.hpp"
#include "wb/toy.hpp"

namespace wb::cli {

namespace {

namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void emit_result(const fs::path& out_dir, const nlohmann::json& j) {
  const std::string text = dump17(j);
  write_text(out_dir / "result.json", text);
  std::cout << text;
}

int default_workers() {
  if (const char* env = std::getenv("WBLAB_WORKERS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  nlohmann::json j;
  in >> j;
  return j;
}

struct CommonOpts {
  std::string out_dir = ".";
  int workers = default_workers();
};

int cmd_energy(const CommonOpts& common, const std::string& kernel_path,
               const std::string& density_path,
               const std::string& intervals_path, double h) {
  KernelPtr kernel = load_kernel_config(kernel_path);
  EnergyResult result;
  if (!intervals_path.empty()) {
    IntervalConfig config =
        interval_config_from_json(load_json_file(intervals_path));
    const ToyKernel* toy = as_toy(*kernel);
    if (toy) {
      result = exact_interval_energy(*toy, config);
    } else {
      if (h <= 0.0)
        throw std::invalid_argument(
            "--h is required to rasterize intervals for non-toy kernels");
      result = interaction_energy(*kernel, grid_from_intervals(config, h),
                                  common.workers);
    }
  } else if (!density_path.empty()) {
    result = interaction_energy(*kernel, load_grid_text(density_path),
                                common.workers);
  } else {
    throw std::invalid_argument("pass --density or --intervals");
  }
  emit_result(common.out_dir, to_json(result));
  return result.infinite() ? 2 : 0;
}

int cmd_droplets(const CommonOpts& common, int n, double p, double d, double m,
                 double m_min, double m_max, int m_steps, int k_max) {
  PowerLawParams params(n, p, d);
  SplitThresholds th = split_thresholds(params);
  auto [m_star, lim] = linear_growth_limit(params);

  nlohmann::json summary = {{"n", n},       {"p", p},
                            {"d", d},       {"m0", th.m0},
                            {"m1", th.m1},  {"C_np", th.C_np},
                            {"m_star", m_star}, {"lim_E_over_m", lim}};

  if (m_steps > 0) {
    if (!(m_min > 0.0) || !(m_max > m_min))
      throw std::invalid_argument("sweep needs 0 < m-min < m-max");
    std::ostringstream csv;
    csv << "m,k,total_energy,energy_per_mass\n";
    std::vector<double> xs, ys;
    for (int i = 0; i < m_steps; ++i) {
      const double mi =
          m_min + (m_max - m_min) * i / std::max(1, m_steps - 1);
      GeneralizedMinimizer gm = optimal_partition(params, mi, k_max);
      csv << format17(mi) << "," << gm.k << "," << format17(gm.total_energy)
          << "," << format17(gm.total_energy / mi) << "\n";
      xs.push_back(mi);
      ys.push_back(gm.total_energy / mi);
    }
    write_text(fs::path(common.out_dir) / "trace.csv", csv.str());
    write_svg_plot((fs::path(common.out_dir) / "plot.svg").string(), xs, ys,
                   {"minimal energy per unit mass", "m (mass)",
                    "E(m)/m (energy/mass)", false});
    summary["sweep_rows"] = m_steps;
    emit_result(common.out_dir, summary);
    return 0;
  }

  GeneralizedMinimizer gm = optimal_partition(params, m, k_max);
  summary["m"] = m;
  summary["k"] = gm.k;
  summary["masses"] = gm.masses;
  summary["energies"] = gm.energies;
  summary["total"] = gm.total_energy;
  summary["k_max_hit"] = gm.k_max_hit;
  emit_result(common.out_dir, summary);
  return 0;
}

int cmd_toy(const CommonOpts& common, double m, double w, int dim) {
  ToyMinimum tm = toy_minimal_energy(m, w, dim);
  emit_result(common.out_dir, to_json(tm));
  return 0;
}

int cmd_anneal(const CommonOpts& common, const std::string& kernel_path,
               double m, double h, double box_side, AnnealSchedule schedule) {
  KernelPtr kernel = load_kernel_config(kernel_path);
  Box box = default_anneal_box(*kernel, m, 1);
  if (box_side > 0.0) {
    box.lo = {-box_side / 2.0, 0.0};
    box.hi = {box_side / 2.0, 0.0};
  }
  AnnealResult result = anneal(*kernel, m, box, h, schedule);

  save_grid_text(result.best, (fs::path(common.out_dir) / "density.txt").string());

  std::ostringstream csv;
  csv << "epoch,T,best_energy,current_energy\n";
  std::vector<double> xs, ys;
  for (const auto& row : result.trace) {
    csv << row.epoch << "," << format17(row.temperature) << ","
        << format17(row.best_energy) << "," << format17(row.current_energy)
        << "\n";
    xs.push_back(row.epoch);
    ys.push_back(row.best_energy);
  }
  write_text(fs::path(common.out_dir) / "trace.csv", csv.str());
  write_svg_plot((fs::path(common.out_dir) / "plot.svg").string(), xs, ys,
                 {"annealing best energy", "epoch", "best energy", false});

  double gap = kernel->support_radius();
  if (!std::isfinite(gap)) {
    auto s = kernel->shape();
    gap = s ? s->a + s->W : 1.0;
  }
  ClusterSet clusters = cluster_decompose(result.best, gap);
  nlohmann::json j = {{"m", m},
                      {"h", h},
                      {"seed", schedule.seed},
                      {"best_energy", result.best_energy},
                      {"clusters", to_json(clusters)}};
  emit_result(common.out_dir, j);
  return 0;
}

int cmd_diagnose(const CommonOpts& common, const std::string& kernel_path,
                 const std::string& density_path,
                 const std::string& intervals_path, double h, double el_tol,
                 double sep_tol) {
  KernelPtr kernel = load_kernel_config(kernel_path);
  GridDensity density = [&]() {
    if (!density_path.empty()) return load_grid_text(density_path);
    if (intervals_path.empty())
      throw std::invalid_argument("pass --density or --intervals");
    if (h <= 0.0)
      throw std::invalid_argument("--h is required with --intervals");
    return grid_from_intervals(
        interval_config_from_json(load_json_file(intervals_path)), h);
  }();

  EnergyResult energy = interaction_energy(*kernel, density, common.workers);
  nlohmann::json j = {{"energy", to_json(energy)}};
  if (energy.infinite()) {
    emit_result(common.out_dir, j);
    return 2;
  }
  j["el"] = to_json(el_check(*kernel, density, el_tol));
  j["separation"] = to_json(separation_check(*kernel, density, sep_tol));
  emit_result(common.out_dir, j);
  return 0;
}

int cmd_sweep(const CommonOpts& common, double w, double m_min, double m_max,
              int m_steps, double h, double length, uint64_t seed) {
  std::ostringstream csv;
  csv << "m,w,theory,brute_force,gap\n";
  std::vector<double> xs, ys;
  for (int i = 0; i < m_steps; ++i) {
    const double m = m_min + (m_max - m_min) * i / std::max(1, m_steps - 1);
    ToyMinimum tm = toy_minimal_energy(m, w, 1);
    BruteForceResult bf = brute_force_min(length, h, m, w, seed);
    const double gap = bf.energy - tm.value;
    csv << format17(m) << "," << format17(w) << "," << format17(tm.value)
        << "," << format17(bf.energy) << "," << format17(gap) << "\n";
    xs.push_back(m);
    ys.push_back(gap);
  }
  write_text(fs::path(common.out_dir) / "trace.csv", csv.str());
  write_svg_plot((fs::path(common.out_dir) / "plot.svg").string(), xs, ys,
                 {"grid search vs toy theory", "m (mass)",
                  "brute force - theory (energy)", true});
  emit_result(common.out_dir,
              {{"w", w}, {"h", h}, {"length", length}, {"rows", m_steps}});
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"wblab: nonlocal interaction energies for well-barrier "
               "kernels under a bathtub constraint"};
  app.require_subcommand(1);
  // --h is a grid-spacing option below; keep help on --help only
  app.set_help_flag("--help", "print help");

  CommonOpts common;
  app.add_option("--out", common.out_dir, "output directory (created)")
      ->capture_default_str();
  app.add_option("--workers", common.workers,
                 "pairwise-sum worker threads (mirrors WBLAB_WORKERS)")
      ->capture_default_str();

  // energy
  auto* energy = app.add_subcommand("energy", "evaluate E[rho]");
  energy->set_help_flag("--help", "print help");
  std::string e_kernel, e_density, e_intervals;
  double e_h = 0.0;
  energy->add_option("--kernel", e_kernel, "kernel config path")->required();
  energy->add_option("--density", e_density, "grid density file");
  energy->add_option("--intervals", e_intervals,
                     "interval-union JSON (1D; exact path for toy kernels)");
  energy->add_option("--h", e_h,
                     "grid spacing (length units; rasterizes intervals)");

  // droplets
  auto* droplets = app.add_subcommand(
      "droplets", "optimal mass partition for power-law wells");
  droplets->set_help_flag("--help", "print help");
  int d_n = 1, d_steps = 0, d_kmax = -1;
  double d_p = 2.0, d_d = 1.0, d_m = 0.0, d_mmin = 0.0, d_mmax = 0.0;
  droplets->add_option("--n", d_n, "dimension (1 or 2)")
      ->capture_default_str();
  droplets->add_option("--p", d_p, "well exponent (> n)")
      ->capture_default_str();
  droplets->add_option("--d", d_d, "well depth (energy units)")
      ->capture_default_str();
  droplets->add_option("--m", d_m, "total mass");
  droplets->add_option("--m-min", d_mmin, "sweep start mass");
  droplets->add_option("--m-max", d_mmax, "sweep end mass");
  droplets->add_option("--m-steps", d_steps, "sweep row count");
  droplets->add_option("--k-max", d_kmax,
                       "max droplet count (default ceil(m/m*)+2)");

  // toy
  auto* toy = app.add_subcommand("toy", "toy-model minimal energy");
  toy->set_help_flag("--help", "print help");
  double t_m = 0.0, t_w = 0.0;
  int t_dim = 1;
  toy->add_option("--m", t_m, "total mass")->required();
  toy->add_option("--w", t_w, "forbidden band width (length units)")
      ->required();
  toy->add_option("--dim", t_dim, "dimension (1 or 2)")->capture_default_str();

  // anneal
  auto* anneal_cmd = app.add_subcommand(
      "anneal", "simulated annealing over grid densities");
  anneal_cmd->set_help_flag("--help", "print help");
  std::string a_kernel;
  double a_m = 0.0, a_h = 0.0, a_box = 0.0;
  AnnealSchedule a_sched;
  anneal_cmd->add_option("--kernel", a_kernel, "kernel config path")
      ->required();
  anneal_cmd->add_option("--m", a_m, "total mass")->required();
  anneal_cmd->add_option("--h", a_h, "grid spacing (length units)")
      ->required();
  anneal_cmd->add_option("--box", a_box,
                         "domain side length (default 4(m/w_N)^{1/N}+2(a+W))");
  anneal_cmd->add_option("--T0", a_sched.T0,
                         "initial temperature (energy units; default d*m*h^N)");
  anneal_cmd->add_option("--cooling", a_sched.cooling,
                         "temperature factor per epoch, in (0,1)")
      ->capture_default_str();
  anneal_cmd->add_option("--epochs", a_sched.epochs, "epoch count")
      ->capture_default_str();
  anneal_cmd->add_option("--moves", a_sched.moves_per_epoch,
                         "moves per epoch (default 50 * occupied cells)");
  anneal_cmd->add_option("--seed", a_sched.seed, "PRNG seed (mt19937_64)")
      ->capture_default_str();

  // diagnose
  auto* diagnose = app.add_subcommand(
      "diagnose", "Euler-Lagrange and separation diagnostics");
  diagnose->set_help_flag("--help", "print help");
  std::string g_kernel, g_density, g_intervals;
  double g_h = 0.0, g_el_tol = 1e-9, g_sep_tol = 1e-9;
  diagnose->add_option("--kernel", g_kernel, "kernel config path")->required();
  diagnose->add_option("--density", g_density, "grid density file");
  diagnose->add_option("--intervals", g_intervals, "interval-union JSON (1D)");
  diagnose->add_option("--h", g_h, "grid spacing for --intervals");
  diagnose->add_option("--el-tol", g_el_tol,
                       "multiplier tolerance (energy units)")
      ->capture_default_str();
  diagnose->add_option("--sep-tol", g_sep_tol,
                       "potential tolerance (energy units)")
      ->capture_default_str();

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "toy theory vs brute-force grid search over a mass range");
  sweep->set_help_flag("--help", "print help");
  double s_w = 0.0, s_mmin = 0.0, s_mmax = 0.0, s_h = 0.5, s_len = 8.0;
  int s_steps = 0;
  uint64_t s_seed = 1;
  sweep->add_option("--w", s_w, "forbidden band width (length units)")
      ->required();
  sweep->add_option("--m-min", s_mmin, "sweep start mass")->required();
  sweep->add_option("--m-max", s_mmax, "sweep end mass")->required();
  sweep->add_option("--m-steps", s_steps, "sweep row count")->required();
  sweep->add_option("--h", s_h, "grid spacing (length units)")
      ->capture_default_str();
  sweep->add_option("--length", s_len, "domain length (length units)")
      ->capture_default_str();
  sweep->add_option("--seed", s_seed, "PRNG seed for annealing fallback")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    std::filesystem::create_directories(common.out_dir);
    if (energy->parsed())
      return cmd_energy(common, e_kernel, e_density, e_intervals, e_h);
    if (droplets->parsed())
      return cmd_droplets(common, d_n, d_p, d_d, d_m, d_mmin, d_mmax, d_steps,
                          d_kmax);
    if (toy->parsed()) return cmd_toy(common, t_m, t_w, t_dim);
    if (anneal_cmd->parsed())
      return cmd_anneal(common, a_kernel, a_m, a_h, a_box, a_sched);
    if (diagnose->parsed())
      return cmd_diagnose(common, g_kernel, g_density, g_intervals, g_h,
                          g_el_tol, g_sep_tol);
    if (sweep->parsed())
      return cmd_sweep(common, s_w, s_mmin, s_mmax, s_steps, s_h, s_len,
                       s_seed);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("wblab");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace wb::cli
