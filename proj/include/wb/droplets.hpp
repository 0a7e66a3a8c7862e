#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wb/kernel.hpp"

namespace wb {

// Parameters of the power-law well r^p - d. p > n is required (it makes the
// single-ball energy concave-then-convex, which the partition structure
// rests on).
struct PowerLawParams {
  int n = 1;
  double p = 2.0;
  double d = 1.0;

  PowerLawParams(int n, double p, double d);
};

enum class CnpMethod { closed_form, monte_carlo, product_quadrature };

// Normalized pair moment of the unit ball,
//   C_{n,p} = |B_1|^{-(2+p/n)} * Int_{B_1} Int_{B_1} |x-y|^p.
// closed_form covers p = 2; the other methods work for any p > 0.
double c_np(int n, double p, CnpMethod method,
            long long mc_samples = 10'000'000, uint64_t seed = 12345);

// Energy of one ball of mass m: g(m) = C_{n,p} m^{2+p/n} - d m^2.
// Valid while the ball diameter stays within the power-law region; pass the
// well end to enforce that (defaults to unbounded).
double ball_energy_g(const PowerLawParams& params, double m,
                     double well_end_a = kInf);

// Two-ball split cost f(t) = g(tm) + g((1-t)m) on [0, 1/2] and its first two
// derivatives in the closed forms used by the threshold analysis.
double split_function_f(const PowerLawParams& params, double m, double t);
double split_function_df(const PowerLawParams& params, double m, double t);
double split_function_d2f(const PowerLawParams& params, double m, double t);

// Masses where splitting one ball first helps (m0) and where equal halves
// become optimal (m1); m0 < m1 always.
struct SplitThresholds {
  double m0 = 0.0;
  double m1 = 0.0;
  double C_np = 0.0;
};

SplitThresholds split_thresholds(const PowerLawParams& params);

// Minimizer of f over [0, 1/2]: t* = 0 for m <= m0, the unique interior root
// of f' for m0 < m < m1 (f' is concave with f'(1/2) = 0, so bisection is
// safe), and t* = 1/2 for m >= m1. Returns (t*, f(t*)).
std::pair<double, double> best_two_ball_split(const PowerLawParams& params,
                                              double m);

// Mass partition realizing the minimal energy: at most two distinct ball
// masses, the smaller one occurring at most once.
struct GeneralizedMinimizer {
  std::vector<double> masses;    // descending
  std::vector<double> energies;  // g(masses[i])
  double total_energy = 0.0;
  int k = 0;
  bool k_max_hit = false;  // best k equals k_max; raise k_max if set
};

// Minimizes sum g(m_i) over partitions with k <= k_max droplets using the
// (k-1 equal balls + one smaller) structure; the scalar smaller mass is
// optimized per k. k_max < 1 selects the default ceil(m/m*) + 2. Ties
// between droplet counts resolve to fewer droplets.
GeneralizedMinimizer optimal_partition(const PowerLawParams& params, double m,
                                       int k_max = -1);

double minimal_energy_E(const PowerLawParams& params, double m);

// Preferred droplet mass and the linear-growth slope:
// m* = argmin g(m)/m = (d / (C_{n,p} (1+p/n)))^{n/p}, returned with g(m*)/m*.
std::pair<double, double> linear_growth_limit(const PowerLawParams& params);

struct SubadditivityReport {
  double lhs = 0.0;  // E(m+n)
  double rhs = 0.0;  // E(m)+E(n)
  double slack = 0.0;
  bool ok = false;
};

SubadditivityReport subadditivity_probe(const PowerLawParams& params, double m,
                                        double n_mass);

}  // namespace wb
