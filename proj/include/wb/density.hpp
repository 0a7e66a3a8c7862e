#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace wb {

// Axis-aligned domain box. For dim = 1 the second component is unused.
struct Box {
  int dim = 1;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{0.0, 0.0};
};

// Bounded density 0 <= rho <= 1 sampled on a uniform grid with spacing h.
// Cell (i,j) has centre origin + (i+1/2, j+1/2)*h; values are stored
// row-major with x fastest. The total mass sum(values)*h^dim is cached and
// kept in sync by set_value().
class GridDensity {
 public:
  GridDensity(int dim, std::array<double, 2> origin, double h,
              std::array<int, 2> counts, std::vector<double> values);

  static GridDensity zeros(int dim, std::array<double, 2> origin, double h,
                           std::array<int, 2> counts);

  int dim() const { return dim_; }
  const std::array<double, 2>& origin() const { return origin_; }
  double h() const { return h_; }
  const std::array<int, 2>& counts() const { return counts_; }
  int size() const { return counts_[0] * counts_[1]; }
  const std::vector<double>& values() const { return values_; }
  double mass() const { return mass_; }
  double cell_volume() const;

  double value(int idx) const { return values_[idx]; }
  void set_value(int idx, double v);

  std::array<double, 2> cell_center(int idx) const;
  // Euclidean distance between two cell centres.
  double cell_distance(int idx_a, int idx_b) const;

  // Indices of cells with value > threshold.
  std::vector<int> occupied(double threshold = 0.0) const;

  // Copy with only the given cells kept (others zeroed).
  GridDensity restricted_to(const std::vector<int>& cells) const;

 private:
  int dim_;
  std::array<double, 2> origin_;
  double h_;
  std::array<int, 2> counts_;
  std::vector<double> values_;
  double mass_;
};

// 1D density given as the indicator of a finite union of intervals.
// Construction normalizes: sorts by left endpoint and merges intervals
// that touch or overlap within 1e-12. Empty configs are allowed.
class IntervalConfig {
 public:
  IntervalConfig() = default;
  explicit IntervalConfig(std::vector<std::array<double, 2>> intervals);

  const std::vector<std::array<double, 2>>& intervals() const { return iv_; }
  std::size_t size() const { return iv_.size(); }
  double mass() const;
  // Length of (union) intersected with [lo, hi].
  double measure_within(double lo, double hi) const;

 private:
  std::vector<std::array<double, 2>> iv_;
};

// Disjoint balls (intervals for dim 1, disks for dim 2): the predicted
// minimizer shape. Construction rejects overlapping balls and dim > 2.
struct DropletConfig {
  struct Ball {
    std::array<double, 2> center{0.0, 0.0};
    double radius = 0.0;
  };

  int dim = 1;
  std::vector<Ball> balls;

  DropletConfig() = default;
  DropletConfig(int dim, std::vector<Ball> balls);

  double total_mass() const;  // sum of |B(r_i)|
};

// Ball volume: 2r in 1D, pi r^2 in 2D.
double ball_measure(int dim, double radius);
double ball_radius_from_mass(int dim, double mass);

// Shapes rasterized by the cell-centre test (value 1 iff the centre lies
// inside the union). Mixing 1D intervals with 2D shapes is rejected.
struct RegionSpec {
  std::vector<std::array<double, 2>> intervals;  // 1D: {a, b}
  std::vector<std::array<double, 3>> disks;      // 2D: {cx, cy, r}
  std::vector<std::array<double, 4>> rects;      // 2D: {x0, y0, x1, y1}
};

GridDensity grid_from_indicator(const RegionSpec& region, double h, int dim);
GridDensity from_droplets(const DropletConfig& config, double h);
GridDensity grid_from_intervals(const IntervalConfig& config, double h);

struct AdmissibilityReport {
  bool bathtub_ok = false;
  bool mass_ok = false;
  double mass = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;

  bool pass() const { return bathtub_ok && mass_ok; }
};

AdmissibilityReport check_admissible(const GridDensity& density, double m,
                                     double tol);

}  // namespace wb
