#include "wb/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace wb {

namespace {

// Lower bounds that hold for every admissible density: E >= -d m^2 since
// K >= -d, and E >= -m for the 1D toy exact path. Violation means a broken
// quadrature, not bad input.
void check_lower_bound(double value, double d, double mass) {
  if (!std::isfinite(value)) return;
  double bound = -d * mass * mass;
  if (value < bound * (1.0 + 1e-9) - 1e-12)
    throw std::logic_error("energy below the -d*m^2 lower bound");
}

struct ChunkResult {
  double sum = 0.0;
  std::vector<std::pair<int, int>> forbidden;
};

// Lexicographic order on grids so that cross_energy(a,b) and
// cross_energy(b,a) execute the identical loop and agree bit-for-bit.
bool grid_before(const GridDensity& a, const GridDensity& b) {
  if (a.origin()[0] != b.origin()[0]) return a.origin()[0] < b.origin()[0];
  if (a.origin()[1] != b.origin()[1]) return a.origin()[1] < b.origin()[1];
  if (a.h() != b.h()) return a.h() < b.h();
  if (a.counts()[0] != b.counts()[0]) return a.counts()[0] < b.counts()[0];
  if (a.counts()[1] != b.counts()[1]) return a.counts()[1] < b.counts()[1];
  return a.values() < b.values();
}

double point_distance(const std::array<double, 2>& p,
                      const std::array<double, 2>& q, int dim) {
  double dx = p[0] - q[0];
  if (dim == 1) return std::abs(dx);
  return std::hypot(dx, p[1] - q[1]);
}

}  // namespace

EnergyResult interaction_energy(const Kernel& kernel,
                                const GridDensity& density, int workers) {
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  const double h = density.h();
  const double eps = h / 2.0;
  const double w2 = std::pow(density.cell_volume(), 2);
  const std::vector<int> occ = density.occupied();
  const int m = static_cast<int>(occ.size());

  auto run_chunk = [&](int row_begin, int row_end, ChunkResult& out) {
    double s = 0.0;
    for (int ii = row_begin; ii < row_end; ++ii) {
      const int i = occ[ii];
      const double ri = density.value(i);
      double row = kernel.grid_value(0.0, eps) * ri * ri;
      for (int jj = ii + 1; jj < m; ++jj) {
        const int j = occ[jj];
        const double v = kernel.grid_value(density.cell_distance(i, j), eps);
        if (std::isinf(v)) {
          out.forbidden.emplace_back(i, j);
          continue;
        }
        row += 2.0 * v * ri * density.value(j);
      }
      s += row;
    }
    out.sum = s;
  };

  std::vector<ChunkResult> chunks(workers);
  if (workers == 1) {
    run_chunk(0, m, chunks[0]);
  } else {
    std::vector<std::thread> pool;
    for (int c = 0; c < workers; ++c) {
      int b = m * c / workers, e = m * (c + 1) / workers;
      pool.emplace_back(run_chunk, b, e, std::ref(chunks[c]));
    }
    for (auto& t : pool) t.join();
  }

  EnergyResult res;
  res.method = EnergyMethod::grid_quadrature;
  res.h = h;
  res.mass = density.mass();
  double total = 0.0;
  for (const auto& c : chunks) {
    total += c.sum;
    res.forbidden_pairs.insert(res.forbidden_pairs.end(), c.forbidden.begin(),
                               c.forbidden.end());
  }
  res.value = res.forbidden_pairs.empty() ? w2 * total : kInf;

  if (auto s = kernel.shape(); s && std::isfinite(res.value))
    check_lower_bound(res.value, s->d, res.mass);
  return res;
}

double cross_energy(const Kernel& kernel, const GridDensity& rho,
                    const GridDensity& eta) {
  if (&rho != &eta && grid_before(eta, rho)) return cross_energy(kernel, eta, rho);
  if (rho.dim() != eta.dim())
    throw std::invalid_argument("cross_energy: dimension mismatch");
  const double eps = std::min(rho.h(), eta.h()) / 2.0;
  const double scale = rho.cell_volume() * eta.cell_volume();
  const std::vector<int> a = rho.occupied();
  const std::vector<int> b = eta.occupied();
  double total = 0.0;
  for (int i : a) {
    const auto pi = rho.cell_center(i);
    const double ri = rho.value(i);
    double row = 0.0;
    for (int j : b) {
      const double v = kernel.grid_value(
          point_distance(pi, eta.cell_center(j), rho.dim()), eps);
      if (std::isinf(v)) {
        if (ri > 0.0 && eta.value(j) > 0.0) return kInf;
        continue;
      }
      row += v * eta.value(j);
    }
    total += ri * row;
  }
  return scale * total;
}

double potential(const Kernel& kernel, const GridDensity& density,
                 std::array<double, 2> x) {
  const double eps = density.h() / 2.0;
  double s = 0.0;
  for (int j : density.occupied()) {
    const double v = kernel.grid_value(
        point_distance(x, density.cell_center(j), density.dim()),
        eps);
    if (std::isinf(v)) return kInf;
    s += v * density.value(j);
  }
  return s * density.cell_volume();
}

ELReport el_check(const Kernel& kernel, const GridDensity& density,
                  double tol) {
  constexpr double kSetTol = 1e-9;
  ELReport rep;

  std::vector<int> one_set;
  for (int i = 0; i < density.size(); ++i)
    if (density.value(i) >= 1.0 - kSetTol) one_set.push_back(i);
  if (one_set.empty()) {
    rep.lambda_from_fallback = true;
    for (int i = 0; i < density.size(); ++i)
      if (density.value(i) > kSetTol) one_set.push_back(i);
  }
  if (one_set.empty())
    throw std::invalid_argument("el_check: density has no mass");

  std::vector<double> pot(density.size());
  for (int i = 0; i < density.size(); ++i)
    pot[i] = potential(kernel, density, density.cell_center(i));

  double lambda = -kInf;
  for (int i : one_set) lambda = std::max(lambda, pot[i]);
  rep.lambda = lambda;
  rep.lambda_negative = lambda < 0.0;

  const double cell = density.cell_volume();
  for (int i = 0; i < density.size(); ++i) {
    const double v = density.value(i);
    if (v <= kSetTol) {
      if (pot[i] < lambda - tol) rep.violations_on_zero_set += cell;
    } else if (v >= 1.0 - kSetTol) {
      if (pot[i] > lambda + tol) rep.violations_on_one_set += cell;
    }
  }
  return rep;
}

SeparationReport separation_check(const Kernel& kernel,
                                  const GridDensity& density, double tol) {
  auto shape = kernel.shape();
  if (!shape)
    throw std::invalid_argument(
        "separation_check needs well-barrier parameters");
  const double lo = shape->a + shape->w;
  const double hi = shape->a + shape->W - shape->w;

  SeparationReport rep;
  if (hi < lo) return rep;

  const std::vector<int> occ = density.occupied();
  std::vector<double> pot(occ.size());
  for (std::size_t i = 0; i < occ.size(); ++i)
    pot[i] = potential(kernel, density, density.cell_center(occ[i]));

  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (!(pot[i] <= tol)) continue;
    for (std::size_t j = i + 1; j < occ.size(); ++j) {
      if (!(pot[j] <= tol)) continue;
      const double dist = density.cell_distance(occ[i], occ[j]);
      if (dist >= lo && dist <= hi)
        rep.offending_pairs.push_back({density.cell_center(occ[i]),
                                       density.cell_center(occ[j]), dist,
                                       pot[i], pot[j]});
    }
  }
  return rep;
}

double interval_band_area(std::array<double, 2> I, std::array<double, 2> J,
                          double c) {
  // lambda(z) = |I cap (J - z)| is piecewise linear with breakpoints where
  // the clamped endpoints cross; integrate the trapezoids over [-c, c].
  const double p = I[0], q = I[1], s = J[0], t = J[1];
  auto lam = [&](double z) {
    return std::max(0.0, std::min(q, t - z) - std::max(p, s - z));
  };
  std::vector<double> knots = {-c, c, s - q, s - p, t - q, t - p};
  std::sort(knots.begin(), knots.end());
  double area = 0.0;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    double z0 = std::max(knots[k], -c), z1 = std::min(knots[k + 1], c);
    if (z1 <= z0) continue;
    area += 0.5 * (lam(z0) + lam(z1)) * (z1 - z0);
  }
  return area;
}

namespace {

// Range of |x-y| over a pair of (sorted, disjoint or identical) intervals.
std::pair<double, double> distance_range(std::array<double, 2> A,
                                         std::array<double, 2> B) {
  double lo;
  if (B[0] >= A[1])
    lo = B[0] - A[1];
  else if (A[0] >= B[1])
    lo = A[0] - B[1];
  else
    lo = 0.0;
  double hi = std::max(B[1] - A[0], A[1] - B[0]);
  return {lo, hi};
}

bool pair_forbidden(std::array<double, 2> A, std::array<double, 2> B,
                    double w) {
  if (w > 0.0) {
    // positive-measure overlap with the open band, up to endpoint round-off
    auto [lo, hi] = distance_range(A, B);
    return std::min(hi, 1.0 + w) > std::max(lo, 1.0) + 1e-12;
  }
  // w = 0: shifting A by +-1 must not overlap B in positive measure.
  for (double shift : {1.0, -1.0}) {
    double ov = std::min(A[1] + shift, B[1]) - std::max(A[0] + shift, B[0]);
    if (ov > 1e-12) return true;
  }
  return false;
}

}  // namespace

EnergyResult exact_interval_energy(const ToyKernel& kernel,
                                   const IntervalConfig& config) {
  const double w = kernel.band_width();
  const auto& iv = config.intervals();
  EnergyResult res;
  res.method = EnergyMethod::exact_interval;
  res.h = 0.0;
  res.mass = config.mass();

  double total = 0.0;
  for (std::size_t i = 0; i < iv.size(); ++i)
    for (std::size_t j = i; j < iv.size(); ++j) {
      if (pair_forbidden(iv[i], iv[j], w)) {
        res.forbidden_pairs.emplace_back(static_cast<int>(i),
                                         static_cast<int>(j));
        continue;
      }
      double a = interval_band_area(iv[i], iv[j], 1.0);
      total += (i == j) ? -a : -2.0 * a;
    }
  res.value = res.forbidden_pairs.empty() ? total : kInf;

  if (std::isfinite(res.value)) {
    check_lower_bound(res.value, 1.0, res.mass);
    if (res.value < -res.mass - 1e-9)
      throw std::logic_error("toy interval energy below the -m lower bound");
  }
  return res;
}

double toy_potential(const ToyKernel& kernel, const IntervalConfig& config,
                     double x) {
  const double w = kernel.band_width();
  if (w > 0.0) {
    for (const auto& ab : config.intervals()) {
      double lo, hi;
      if (x < ab[0])
        lo = ab[0] - x, hi = ab[1] - x;
      else if (x > ab[1])
        lo = x - ab[1], hi = x - ab[0];
      else
        lo = 0.0, hi = std::max(ab[1] - x, x - ab[0]);
      if (std::min(hi, 1.0 + w) > std::max(lo, 1.0)) return kInf;
    }
  }
  return -config.measure_within(x - 1.0, x + 1.0);
}

const ToyKernel* as_toy(const Kernel& kernel) {
  if (const auto* t = dynamic_cast<const ToyKernel*>(&kernel)) return t;
  if (const auto* tr = dynamic_cast<const TruncatedKernel*>(&kernel)) {
    const auto* t = dynamic_cast<const ToyKernel*>(&tr->base());
    if (t && tr->r_cut() >= 1.0 + t->band_width()) return t;
  }
  return nullptr;
}

}  // namespace wb
