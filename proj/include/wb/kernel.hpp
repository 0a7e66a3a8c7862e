#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace wb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One section of a piecewise radial kernel. Parameters (a, b) are read per
// kind:
//   constant       K(r) = a
//   linear         K(r) = a + b*r
//   power          K(r) = r^a + b
//   inverse_power  K(r) = a / r^b
//   zero           K(r) = 0
struct Profile {
  enum class Kind { constant, linear, power, inverse_power, zero };

  Kind kind = Kind::zero;
  double a = 0.0;
  double b = 0.0;

  double eval(double r) const {
    switch (kind) {
      case Kind::constant:
        return a;
      case Kind::linear:
        return a + b * r;
      case Kind::power:
        return std::pow(r, a) + b;
      case Kind::inverse_power:
        return a / std::pow(r, b);
      case Kind::zero:
        return 0.0;
    }
    return 0.0;
  }

  static Profile constant(double c) { return {Kind::constant, c, 0.0}; }
  static Profile linear(double intercept, double slope) {
    return {Kind::linear, intercept, slope};
  }
  static Profile power(double exponent, double offset) {
    return {Kind::power, exponent, offset};
  }
  static Profile inverse_power(double c, double q) {
    return {Kind::inverse_power, c, q};
  }
  static Profile zero() { return {Kind::zero, 0.0, 0.0}; }
};

// Geometry of a well-barrier kernel: depth d = -K(0), well width
// w = inf{r : K(r) > 0}, end of the monotone well region a, barrier height
// (lower bound of K on [a, a+W]) and barrier width W.
struct WellBarrierShape {
  double d = 0.0;
  double w = 0.0;
  double a = 0.0;
  double barrier_height = 0.0;
  double W = 0.0;
};

// Radial interaction kernel. Immutable after construction; safe for
// concurrent reads. value() may return +inf only for toy kernels inside
// their forbidden band of distances.
class Kernel {
 public:
  virtual ~Kernel() = default;

  virtual double value(double r) const = 0;

  // Value used by grid quadrature. band_eps shrinks the toy forbidden band
  // to absorb cell-centre quantization; finite kernels ignore it.
  virtual double grid_value(double r, double band_eps) const {
    (void)band_eps;
    return value(r);
  }

  virtual std::optional<WellBarrierShape> shape() const { return std::nullopt; }

  // Radius beyond which the kernel is exactly zero; +inf if none.
  virtual double support_radius() const { return kInf; }

  virtual std::string name() const = 0;
};

using KernelPtr = std::shared_ptr<const Kernel>;

// General well-barrier kernel assembled from three profiles:
// well on [0,a), barrier on [a, a+W], tail on (a+W, inf).
class WellBarrierKernel final : public Kernel {
 public:
  WellBarrierKernel(WellBarrierShape shape, Profile well, Profile barrier,
                    Profile tail);

  double value(double r) const override;
  std::optional<WellBarrierShape> shape() const override { return shape_; }
  double support_radius() const override;
  std::string name() const override { return "well-barrier"; }

  const Profile& well_profile() const { return well_; }
  const Profile& barrier_profile() const { return barrier_; }
  const Profile& tail_profile() const { return tail_; }

 private:
  WellBarrierShape shape_;
  Profile well_, barrier_, tail_;
};

// Toy kernel: -1 on [0,1], +inf on the open band (1, 1+w), 0 on [1+w, inf).
// w = 0 degenerates to plain attraction on [0,1]; the distance-exactly-1
// constraint is then enforced only by the exact interval energy path.
class ToyKernel final : public Kernel {
 public:
  explicit ToyKernel(double band_width);

  double value(double r) const override;
  double grid_value(double r, double band_eps) const override;
  std::optional<WellBarrierShape> shape() const override {
    return WellBarrierShape{1.0, 1.0, 1.0, kInf, band_w_};
  }
  double support_radius() const override { return 1.0 + band_w_; }
  std::string name() const override { return "toy"; }

  double band_width() const { return band_w_; }

 private:
  double band_w_;
};

// Power-law well r^p - d on [0,a], optional constant barrier on (a, a+W],
// then a tail profile. W = 0 means the tail starts right after the well.
class PowerLawKernel final : public Kernel {
 public:
  PowerLawKernel(double p, double d, double a, double barrier_height,
                 double barrier_width, Profile tail);

  double value(double r) const override;
  std::optional<WellBarrierShape> shape() const override;
  double support_radius() const override;
  std::string name() const override { return "power-law"; }

  double exponent() const { return p_; }
  double depth() const { return d_; }
  double well_end() const { return a_; }
  const Profile& tail_profile() const { return tail_; }

 private:
  double p_, d_, a_, h_bar_, W_;
  Profile tail_;
};

// Hard truncation: base kernel up to R_cut, exactly zero beyond.
class TruncatedKernel final : public Kernel {
 public:
  TruncatedKernel(KernelPtr base, double r_cut);

  double value(double r) const override;
  double grid_value(double r, double band_eps) const override;
  std::optional<WellBarrierShape> shape() const override {
    return base_->shape();
  }
  double support_radius() const override;
  std::string name() const override { return "truncated(" + base_->name() + ")"; }

  const Kernel& base() const { return *base_; }
  double r_cut() const { return r_cut_; }

 private:
  KernelPtr base_;
  double r_cut_;
};

KernelPtr make_well_barrier(double d, double w, double a, double h_bar,
                            double W, Profile well, Profile barrier,
                            Profile tail);
KernelPtr make_toy(double band_width);
KernelPtr make_power_law(double p, double d, double a,
                         double barrier_height = 0.0,
                         double barrier_width = 0.0,
                         Profile tail = Profile::zero());
KernelPtr truncate_kernel(KernelPtr base, double r_cut);

// K(r) with the r >= 0 precondition checked.
double eval_kernel(const Kernel& k, double r);

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const ValidationCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Checks the well-barrier conditions on a sampling grid:
//   K1 well (K(0) = -d < 0, non-decreasing on [0,a]),
//   K2 barrier (K >= barrier height on [a, a+W]),
//   K3 decay (K >= 0 past the barrier, sup over doubling radii -> 0),
//   K4 d < h, K5 2w < W,
//   "structural" a+w <= W-2w, and consistency of the supplied w.
// All failures are report entries, never exceptions.
ValidationReport validate_kernel(const Kernel& k, double tol,
                                 int samples = 10000);

}  // namespace wb
