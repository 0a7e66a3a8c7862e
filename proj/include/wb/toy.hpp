#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wb/density.hpp"
#include "wb/energy.hpp"

namespace wb {

enum class ToyRegime { wide, narrow, w_zero };

// Minimal toy-model energy with a witness achieving it.
//   wide   (w >= 1, dim 1 or 2): write m = n*b + alpha with b = |B(0,1/2)|
//          and 0 <= alpha < b; the value is -(n*b^2 + alpha^2).
//   narrow (0 < w < 1, dim 1) and w_zero (w = 0, dim 1): -m for integer m;
//          for non-integer m = n + a the value -(n + a^2) is only a
//          conjecture and is flagged as such.
struct ToyMinimum {
  double m = 0.0;
  double w = 0.0;
  int dim = 1;
  ToyRegime regime = ToyRegime::wide;
  double value = 0.0;
  bool conjecture = false;
  std::optional<IntervalConfig> interval_witness;  // dim 1
  std::optional<DropletConfig> droplet_witness;
};

ToyMinimum toy_minimal_energy(double m, double w, int dim);

// Split of a finite-energy interval union into components of diameter <= 1
// whose mutual distances are >= 1 + w (w >= 1 only; this is exactly the
// transitive closure of "within distance 1").
struct Decomposition {
  std::vector<IntervalConfig> components;
  std::vector<double> gaps;  // distance between consecutive components
};

Decomposition decompose(const IntervalConfig& config, double w);

// Window diagnostic for 0 < w < 1: the support can fill at most length 1 of
// [x-1, x+1], and at most 1-w of it when it spreads over diameter > 1.
struct DiameterReport {
  double x = 0.0;
  double measure = 0.0;
  double diameter = 0.0;
  double bound = 0.0;  // the applicable bound (1 or 1-w)
  bool bound_ok = false;
};

DiameterReport diameter_lemma_check(const IntervalConfig& config, double w,
                                    double x);

// Best {0,1} grid density of exactly m/h occupied cells on [0, length],
// avoiding the toy forbidden band (grid convention with eps = h/2).
// Exhaustive when the subset count is at most C(26,13); otherwise a seeded
// annealing search.
struct BruteForceResult {
  double energy = 0.0;
  GridDensity density;
  bool exhaustive = false;
  uint64_t states = 0;  // states enumerated (exhaustive mode)
};

BruteForceResult brute_force_min(double domain_length, double h, double m,
                                 double w, uint64_t seed = 1);

// The distance-1-forbidden example set
//   A = (0,a) u ((1+a)/2, 1) u (1+a, (3+a)/2) u (2, 2+a), 0 < a < 1,
// whose exact energy is -(1 + a^2) although its pieces interact.
std::pair<IntervalConfig, double> w_zero_example(double a_param);

}  // namespace wb
