#include "wb/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wb {

namespace {

constexpr double kEndpointTol = 1e-12;

void require_dim(int dim) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("only dimensions 1 and 2 are supported");
}

}  // namespace

GridDensity::GridDensity(int dim, std::array<double, 2> origin, double h,
                         std::array<int, 2> counts,
                         std::vector<double> values)
    : dim_(dim), origin_(origin), h_(h), counts_(counts),
      values_(std::move(values)) {
  require_dim(dim);
  if (h <= 0.0) throw std::invalid_argument("grid spacing must be > 0");
  if (dim == 1) counts_[1] = 1;
  if (counts_[0] <= 0 || counts_[1] <= 0)
    throw std::invalid_argument("grid counts must be positive");
  if (static_cast<int>(values_.size()) != counts_[0] * counts_[1])
    throw std::invalid_argument("grid value count does not match shape");
  double s = 0.0;
  for (double v : values_) s += v;
  mass_ = s * cell_volume();
}

GridDensity GridDensity::zeros(int dim, std::array<double, 2> origin, double h,
                               std::array<int, 2> counts) {
  if (dim == 1) counts[1] = 1;
  return GridDensity(dim, origin, h, counts,
                     std::vector<double>(static_cast<std::size_t>(counts[0]) *
                                             counts[1],
                                         0.0));
}

double GridDensity::cell_volume() const { return dim_ == 1 ? h_ : h_ * h_; }

void GridDensity::set_value(int idx, double v) {
  mass_ += (v - values_[idx]) * cell_volume();
  values_[idx] = v;
}

std::array<double, 2> GridDensity::cell_center(int idx) const {
  int i = idx % counts_[0];
  int j = idx / counts_[0];
  return {origin_[0] + (i + 0.5) * h_, origin_[1] + (j + 0.5) * h_};
}

double GridDensity::cell_distance(int idx_a, int idx_b) const {
  int ia = idx_a % counts_[0], ja = idx_a / counts_[0];
  int ib = idx_b % counts_[0], jb = idx_b / counts_[0];
  double dx = (ia - ib) * h_;
  if (dim_ == 1) return std::abs(dx);
  double dy = (ja - jb) * h_;
  return std::hypot(dx, dy);
}

std::vector<int> GridDensity::occupied(double threshold) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (values_[i] > threshold) out.push_back(i);
  return out;
}

GridDensity GridDensity::restricted_to(const std::vector<int>& cells) const {
  std::vector<double> v(values_.size(), 0.0);
  for (int idx : cells) v[idx] = values_[idx];
  return GridDensity(dim_, origin_, h_, counts_, std::move(v));
}

IntervalConfig::IntervalConfig(std::vector<std::array<double, 2>> intervals)
    : iv_(std::move(intervals)) {
  for (const auto& ab : iv_)
    if (!(ab[0] < ab[1]))
      throw std::invalid_argument("interval must satisfy a < b");
  std::sort(iv_.begin(), iv_.end(),
            [](const auto& x, const auto& y) { return x[0] < y[0]; });
  // Merge touching or overlapping neighbours once; the result is a sorted
  // list with b_i < a_{i+1}, so normalizing again is a no-op.
  std::vector<std::array<double, 2>> merged;
  for (const auto& ab : iv_) {
    if (!merged.empty() && ab[0] <= merged.back()[1] + kEndpointTol)
      merged.back()[1] = std::max(merged.back()[1], ab[1]);
    else
      merged.push_back(ab);
  }
  iv_ = std::move(merged);
}

double IntervalConfig::mass() const {
  double s = 0.0;
  for (const auto& ab : iv_) s += ab[1] - ab[0];
  return s;
}

double IntervalConfig::measure_within(double lo, double hi) const {
  double s = 0.0;
  for (const auto& ab : iv_)
    s += std::max(0.0, std::min(ab[1], hi) - std::max(ab[0], lo));
  return s;
}

DropletConfig::DropletConfig(int dim, std::vector<Ball> balls_in)
    : dim(dim), balls(std::move(balls_in)) {
  require_dim(dim);
  for (const auto& b : balls)
    if (!(b.radius > 0.0))
      throw std::invalid_argument("droplet radius must be > 0");
  for (std::size_t i = 0; i < balls.size(); ++i)
    for (std::size_t j = i + 1; j < balls.size(); ++j) {
      double dx = balls[i].center[0] - balls[j].center[0];
      double dy = dim == 2 ? balls[i].center[1] - balls[j].center[1] : 0.0;
      double dist = std::hypot(dx, dy);
      if (dist < balls[i].radius + balls[j].radius - kEndpointTol)
        throw std::invalid_argument("droplets overlap");
    }
}

double DropletConfig::total_mass() const {
  double s = 0.0;
  for (const auto& b : balls) s += ball_measure(dim, b.radius);
  return s;
}

double ball_measure(int dim, double radius) {
  require_dim(dim);
  return dim == 1 ? 2.0 * radius : M_PI * radius * radius;
}

double ball_radius_from_mass(int dim, double mass) {
  require_dim(dim);
  if (mass < 0.0) throw std::invalid_argument("mass must be >= 0");
  return dim == 1 ? mass / 2.0 : std::sqrt(mass / M_PI);
}

GridDensity grid_from_indicator(const RegionSpec& region, double h, int dim) {
  require_dim(dim);
  if (h <= 0.0) throw std::invalid_argument("grid spacing must be > 0");
  if (dim == 1 && (!region.disks.empty() || !region.rects.empty()))
    throw std::invalid_argument("2D shapes in a 1D region");
  if (dim == 2 && !region.intervals.empty())
    throw std::invalid_argument("1D intervals in a 2D region");

  bool empty = region.intervals.empty() && region.disks.empty() &&
               region.rects.empty();
  if (empty) return GridDensity::zeros(dim, {0.0, 0.0}, h, {1, 1});

  double lo[2] = {1e300, 1e300}, hi[2] = {-1e300, -1e300};
  auto grow = [&](double x, double y) {
    lo[0] = std::min(lo[0], x);
    hi[0] = std::max(hi[0], x);
    lo[1] = std::min(lo[1], y);
    hi[1] = std::max(hi[1], y);
  };
  for (const auto& ab : region.intervals) grow(ab[0], 0.0), grow(ab[1], 0.0);
  for (const auto& d : region.disks)
    grow(d[0] - d[2], d[1] - d[2]), grow(d[0] + d[2], d[1] + d[2]);
  for (const auto& r : region.rects) grow(r[0], r[1]), grow(r[2], r[3]);

  std::array<double, 2> origin{lo[0] - h, dim == 2 ? lo[1] - h : 0.0};
  std::array<int, 2> counts{
      static_cast<int>(std::ceil((hi[0] - origin[0]) / h)) + 1,
      dim == 2 ? static_cast<int>(std::ceil((hi[1] - origin[1]) / h)) + 1 : 1};

  auto inside = [&](double x, double y) {
    for (const auto& ab : region.intervals)
      if (x >= ab[0] && x <= ab[1]) return true;
    for (const auto& d : region.disks)
      if (std::hypot(x - d[0], y - d[1]) <= d[2]) return true;
    for (const auto& r : region.rects)
      if (x >= r[0] && x <= r[2] && y >= r[1] && y <= r[3]) return true;
    return false;
  };

  GridDensity g = GridDensity::zeros(dim, origin, h, counts);
  for (int idx = 0; idx < g.size(); ++idx) {
    auto c = g.cell_center(idx);
    if (inside(c[0], dim == 2 ? c[1] : 0.0)) g.set_value(idx, 1.0);
  }
  return g;
}

GridDensity from_droplets(const DropletConfig& config, double h) {
  // DropletConfig construction already rejected overlaps.
  RegionSpec region;
  if (config.dim == 1) {
    for (const auto& b : config.balls)
      region.intervals.push_back({b.center[0] - b.radius,
                                  b.center[0] + b.radius});
  } else {
    for (const auto& b : config.balls)
      region.disks.push_back({b.center[0], b.center[1], b.radius});
  }
  return grid_from_indicator(region, h, config.dim);
}

GridDensity grid_from_intervals(const IntervalConfig& config, double h) {
  RegionSpec region;
  region.intervals = config.intervals();
  return grid_from_indicator(region, h, 1);
}

AdmissibilityReport check_admissible(const GridDensity& density, double m,
                                     double tol) {
  AdmissibilityReport rep;
  rep.mass = density.mass();
  rep.min_value = 1e300;
  rep.max_value = -1e300;
  for (double v : density.values()) {
    rep.min_value = std::min(rep.min_value, v);
    rep.max_value = std::max(rep.max_value, v);
  }
  if (density.size() == 0) rep.min_value = rep.max_value = 0.0;
  rep.bathtub_ok = rep.min_value >= -tol && rep.max_value <= 1.0 + tol;
  rep.mass_ok = std::abs(rep.mass - m) <= tol;
  return rep;
}

}  // namespace wb
