#include "wb/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "wb/quadrature.hpp"
#include "wb/rng.hpp"

namespace wb {

namespace {

long long integral_cell_count(double m, double cell_volume) {
  double c = m / cell_volume;
  long long rounded = std::llround(c);
  if (rounded <= 0 || std::abs(c - rounded) > 1e-9 * std::max(1.0, c))
    throw std::invalid_argument(
        "mass is not an integral number of grid cells");
  return rounded;
}

}  // namespace

Box default_anneal_box(const Kernel& kernel, double m, int dim) {
  double reach = 1.0;
  if (auto s = kernel.shape())
    reach = s->a + s->W;
  else if (std::isfinite(kernel.support_radius()))
    reach = kernel.support_radius();
  const double omega = dim == 1 ? 2.0 : M_PI;
  const double side = 4.0 * std::pow(m / omega, 1.0 / dim) + 2.0 * reach;
  Box box;
  box.dim = dim;
  box.lo = {-side / 2.0, dim == 2 ? -side / 2.0 : 0.0};
  box.hi = {side / 2.0, dim == 2 ? side / 2.0 : 0.0};
  return box;
}

AnnealResult anneal(const Kernel& kernel, double m, const Box& box, double h,
                    const AnnealSchedule& schedule) {
  if (h <= 0.0) throw std::invalid_argument("anneal: h must be > 0");
  if (schedule.cooling <= 0.0 || schedule.cooling >= 1.0)
    throw std::invalid_argument("anneal: cooling must lie in (0,1)");

  const int dim = box.dim;
  std::array<int, 2> counts{
      std::max(1, static_cast<int>(std::llround((box.hi[0] - box.lo[0]) / h))),
      dim == 2
          ? std::max(1, static_cast<int>(std::llround((box.hi[1] - box.lo[1]) / h)))
          : 1};
  GridDensity state = GridDensity::zeros(dim, box.lo, h, counts);
  const int total = state.size();
  const double cell_vol = state.cell_volume();
  const long long c = integral_cell_count(m, cell_vol);
  if (c > total)
    throw std::invalid_argument("anneal: domain box too small for the mass");

  const double eps = h / 2.0;
  Rng rng(schedule.seed);

  // occ: occupied cell indices; pos: cell -> slot in occ, -1 when empty.
  std::vector<int> occ;
  std::vector<int> pos(total, -1);
  auto feasible_with = [&](int cell, int skip_slot) {
    for (int s = 0; s < static_cast<int>(occ.size()); ++s) {
      if (s == skip_slot) continue;
      if (std::isinf(kernel.grid_value(state.cell_distance(cell, occ[s]), eps)))
        return false;
    }
    return true;
  };

  int failures = 0;
  while (static_cast<long long>(occ.size()) < c) {
    int cell = static_cast<int>(rng.below(total));
    if (pos[cell] >= 0 || !feasible_with(cell, -1)) {
      if (++failures > 10000)
        throw InfeasibleError("anneal: no feasible initial placement found");
      continue;
    }
    pos[cell] = static_cast<int>(occ.size());
    occ.push_back(cell);
    state.set_value(cell, 1.0);
  }

  auto full_energy = [&]() { return interaction_energy(kernel, state).value; };

  double T = schedule.T0 > 0.0 ? schedule.T0 : m * cell_vol;
  if (schedule.T0 <= 0.0) {
    if (auto s = kernel.shape()) T *= s->d;
  }
  const int moves =
      schedule.moves_per_epoch > 0 ? schedule.moves_per_epoch
                                   : 50 * static_cast<int>(c);

  double current = full_energy();
  std::vector<int> best_occ = occ;
  double best = current;

  AnnealResult result{GridDensity::zeros(dim, box.lo, h, counts), 0.0, {}};
  const double pair_scale = 2.0 * cell_vol * cell_vol;

  for (int epoch = 0; epoch < schedule.epochs; ++epoch) {
    for (int mv = 0; mv < moves; ++mv) {
      const int slot = static_cast<int>(rng.below(occ.size()));
      const int from = occ[slot];
      const int to = static_cast<int>(rng.below(total));
      if (pos[to] >= 0) continue;

      bool forbidden = false;
      double delta = 0.0;
      for (int s = 0; s < static_cast<int>(occ.size()); ++s) {
        if (s == slot) continue;
        const int j = occ[s];
        const double vn = kernel.grid_value(state.cell_distance(to, j), eps);
        if (std::isinf(vn)) {
          forbidden = true;
          break;
        }
        delta += vn - kernel.grid_value(state.cell_distance(from, j), eps);
      }
      if (forbidden) continue;
      delta *= pair_scale;

      if (delta > 0.0 && rng.uniform() >= std::exp(-delta / T)) continue;

      state.set_value(from, 0.0);
      state.set_value(to, 1.0);
      pos[to] = slot;
      pos[from] = -1;
      occ[slot] = to;
      current += delta;
      if (current < best) {
        best = current;
        best_occ = occ;
      }
    }
    current = full_energy();  // clear accumulated round-off each epoch
    if (current < best) {
      best = current;
      best_occ = occ;
    }
    result.trace.push_back({epoch, T, best, current});
    T *= schedule.cooling;
  }

  for (int cell : best_occ) result.best.set_value(cell, 1.0);
  result.best_energy = interaction_energy(kernel, result.best).value;
  return result;
}

ClusterSet cluster_decompose(const GridDensity& density, double gap_threshold) {
  if (!(gap_threshold > 0.0))
    throw std::invalid_argument("cluster_decompose: gap threshold must be > 0");
  const std::vector<int> occ = density.occupied();
  const int m = static_cast<int>(occ.size());

  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (density.cell_distance(occ[i], occ[j]) < gap_threshold)
        parent[find(i)] = find(j);

  std::vector<std::vector<int>> groups;
  std::vector<int> root_of(m, -1);
  for (int i = 0; i < m; ++i) {
    int r = find(i);
    if (root_of[r] < 0) {
      root_of[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[root_of[r]].push_back(occ[i]);
  }

  ClusterSet out;
  out.gap_threshold = gap_threshold;
  for (auto& cells : groups) {
    out.clusters.push_back(density.restricted_to(cells));
    out.masses.push_back(out.clusters.back().mass());
  }
  return out;
}

SequenceTrace minimizing_sequence(const PowerLawParams& params,
                                  const std::vector<double>& masses,
                                  const std::vector<double>& separations,
                                  const Kernel& kernel) {
  if (params.n != 1)
    throw std::invalid_argument("minimizing_sequence supports dimension 1");
  if (masses.empty())
    throw std::invalid_argument("minimizing_sequence: no masses");
  auto shape = kernel.shape();
  if (!shape)
    throw std::invalid_argument(
        "minimizing_sequence needs well-barrier parameters");
  const double reach = shape->a + shape->W;

  const int k = static_cast<int>(masses.size());
  std::vector<double> radii(k);
  for (int i = 0; i < k; ++i) radii[i] = ball_radius_from_mass(1, masses[i]);

  double limit = 0.0;
  for (double mi : masses) limit += ball_energy_g(params, mi, shape->a);

  const GaussRule rule = gauss_legendre(64);

  // Non-increasing tail envelope sampled on a log grid; exact for the
  // monotone tails used here.
  auto tail_sup = [&](double s) {
    double sup = kernel.value(s);
    for (int i = 1; i <= 4096; ++i)
      sup = std::max(sup, kernel.value(s * std::pow(1024.0, i / 4096.0)));
    return sup;
  };

  SequenceTrace trace;
  for (double D : separations) {
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (D * (j - i) - radii[i] - radii[j] <= reach)
          throw std::invalid_argument(
              "separation too small: droplets would interact through the "
              "barrier");

    double cross_total = 0.0;
    double bound = 0.0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        const double ci = i * D, cj = j * D;
        auto inner = [&](double x) {
          auto f = [&](double y) { return kernel.value(std::abs(x - y)); };
          return integrate(f, cj - radii[j], cj + radii[j], rule);
        };
        cross_total += 2.0 * integrate(inner, ci - radii[i], ci + radii[i], rule);
        bound += 2.0 * masses[i] * masses[j] *
                 tail_sup(D * (j - i) - radii[i] - radii[j]);
      }

    SequenceTrace::Row row;
    row.separation = D;
    row.limit = limit;
    row.energy = limit + cross_total;
    row.gap = std::abs(cross_total);
    row.bound = bound;
    row.within_bound = row.gap <= row.bound + 1e-12;
    trace.rows.push_back(row);
  }
  return trace;
}

}  // namespace wb
