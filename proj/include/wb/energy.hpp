#pragma once

#include <array>
#include <utility>
#include <vector>

#include "wb/density.hpp"
#include "wb/kernel.hpp"

namespace wb {

enum class EnergyMethod { grid_quadrature, exact_interval };

// Result of a double-integral energy evaluation. value is +inf exactly when
// forbidden_pairs is non-empty (toy kernels only); the pairs are cell or
// interval indices depending on the method.
struct EnergyResult {
  double value = 0.0;
  EnergyMethod method = EnergyMethod::grid_quadrature;
  std::vector<std::pair<int, int>> forbidden_pairs;
  double h = 0.0;  // 0 for the exact interval path
  double mass = 0.0;

  bool infinite() const { return !forbidden_pairs.empty(); }
};

// E[rho] = h^{2N} * sum_{i,j} K(|x_i - x_j|) rho_i rho_j, self pairs
// included. The pair sum runs over occupied cells only. workers > 1 splits
// the outer loop into fixed contiguous chunks reduced in chunk order, so the
// result is bit-stable for a given worker count.
EnergyResult interaction_energy(const Kernel& kernel,
                                const GridDensity& density, int workers = 1);

// Bilinear form E[rho, eta]; +inf when a forbidden pair spans the two
// supports. Symmetric under argument swap, exactly.
double cross_energy(const Kernel& kernel, const GridDensity& rho,
                    const GridDensity& eta);

// Potential K*rho at an arbitrary point.
double potential(const Kernel& kernel, const GridDensity& density,
                 std::array<double, 2> x);

// Euler-Lagrange diagnostic. lambda is the max of K*rho over cells with
// rho >= 1 - 1e-9 (falling back to {rho > 1e-9} when that set is empty);
// violation fields are measures (cell count * h^N) of cells breaking the
// three-case condition by more than tol.
struct ELReport {
  double lambda = 0.0;
  double violations_on_zero_set = 0.0;
  double violations_on_one_set = 0.0;
  bool lambda_negative = false;
  bool lambda_from_fallback = false;
};

ELReport el_check(const Kernel& kernel, const GridDensity& density,
                  double tol);

// Support pairs contradicting the separation property: occupied cells
// x1, x2 with K*rho(x_i) <= tol at both and a+w <= |x1-x2| <= a+W-w.
// Empty for any true minimizer.
struct SeparationReport {
  struct OffendingPair {
    std::array<double, 2> x1{0.0, 0.0};
    std::array<double, 2> x2{0.0, 0.0};
    double distance = 0.0;
    double pot1 = 0.0;
    double pot2 = 0.0;
  };
  std::vector<OffendingPair> offending_pairs;

  bool empty() const { return offending_pairs.empty(); }
};

SeparationReport separation_check(const Kernel& kernel,
                                  const GridDensity& density, double tol);

// Exact energy of an interval union under the toy kernel, by closed-form
// areas of {|x-y| <= 1} within interval rectangles. For w > 0 a pair is
// forbidden when its open distance range meets the open band (1, 1+w) in a
// set of positive measure; for w = 0 when translating one interval by
// exactly 1 overlaps the other in positive measure.
EnergyResult exact_interval_energy(const ToyKernel& kernel,
                                   const IntervalConfig& config);

// Exact K_w * rho at a point for an interval union; +inf when x sits at
// band distance from a positive-measure part of the support.
double toy_potential(const ToyKernel& kernel, const IntervalConfig& config,
                     double x);

// Area of {(x,y) in I x J : |x-y| <= c}; exact piecewise-linear integral.
double interval_band_area(std::array<double, 2> I, std::array<double, 2> J,
                          double c);

// Unwrap toy kernels (possibly behind a truncation that keeps the whole
// band); nullptr when the kernel is not toy-shaped.
const ToyKernel* as_toy(const Kernel& kernel);

}  // namespace wb
