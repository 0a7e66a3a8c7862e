#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wb/density.hpp"
#include "wb/droplets.hpp"
#include "wb/energy.hpp"
#include "wb/kernel.hpp"

namespace wb {

// Cooling schedule for the exchange-move annealer. Temperatures are in
// energy units.
struct AnnealSchedule {
  double T0 = 0.0;           // initial temperature; <= 0 selects d*m*h^N
  double cooling = 0.95;     // multiplicative factor per epoch, in (0,1)
  int epochs = 200;
  int moves_per_epoch = 0;   // <= 0 selects 50 * occupied-cell count
  uint64_t seed = 1;
};

struct TraceRow {
  int epoch = 0;
  double temperature = 0.0;
  double best_energy = 0.0;
  double current_energy = 0.0;
};

struct AnnealResult {
  GridDensity best;
  double best_energy = 0.0;
  std::vector<TraceRow> trace;  // best_energy column is non-increasing
};

// Thrown when no feasible initial placement exists (toy bands only).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simulated annealing over {0,1} grid densities with a fixed occupied-cell
// count m/h^N (must be integral). Moves relocate one occupied cell to an
// empty cell; moves creating a forbidden pair are always rejected, others
// pass Metropolis at the current temperature. One chain is sequential;
// identical (seed, schedule, grid) reproduce the run bit for bit.
AnnealResult anneal(const Kernel& kernel, double m, const Box& box, double h,
                    const AnnealSchedule& schedule);

// Default domain: cube of side 4*(m/omega_N)^{1/N} + 2*(a+W) centred at the
// origin, so several droplets fit with room past the barrier.
Box default_anneal_box(const Kernel& kernel, double m, int dim);

// Connected components of the occupied cells under "distance <
// gap_threshold" adjacency. With gap_threshold >= the kernel support radius,
// cross terms between clusters vanish.
struct ClusterSet {
  std::vector<GridDensity> clusters;
  std::vector<double> masses;
  double gap_threshold = 0.0;
};

ClusterSet cluster_decompose(const GridDensity& density, double gap_threshold);

// Droplet configurations pulled apart to pairwise centre distance D, with
// the energy gap to the sum of single-ball energies checked against the
// tail bound sum_{i != j} m_i m_j sup_{r >= D_ij - r_i - r_j} K(r).
struct SequenceTrace {
  struct Row {
    double separation = 0.0;
    double energy = 0.0;
    double limit = 0.0;  // sum of g(m_i)
    double gap = 0.0;    // |energy - limit|
    double bound = 0.0;
    bool within_bound = false;
  };
  std::vector<Row> rows;
};

SequenceTrace minimizing_sequence(const PowerLawParams& params,
                                  const std::vector<double>& masses,
                                  const std::vector<double>& separations,
                                  const Kernel& kernel);

// Convergence diagnostic for annealed states.
inline ELReport el_residual_of_annealed(const Kernel& kernel,
                                        const GridDensity& density,
                                        double tol) {
  return el_check(kernel, density, tol);
}

}  // namespace wb
