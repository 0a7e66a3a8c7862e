#include "wb/kernel.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wb {

namespace {

bool finite_on(const Profile& p, double lo, double hi, int samples = 64) {
  if (hi <= lo) return true;
  for (int i = 0; i <= samples; ++i) {
    double r = lo + (hi - lo) * i / samples;
    if (!std::isfinite(p.eval(r))) return false;
  }
  return true;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

WellBarrierKernel::WellBarrierKernel(WellBarrierShape shape, Profile well,
                                     Profile barrier, Profile tail)
    : shape_(shape), well_(well), barrier_(barrier), tail_(tail) {}

double WellBarrierKernel::value(double r) const {
  if (r < shape_.a) return well_.eval(r);
  if (r <= shape_.a + shape_.W) return barrier_.eval(r);
  return tail_.eval(r);
}

double WellBarrierKernel::support_radius() const {
  if (tail_.kind == Profile::Kind::zero ||
      (tail_.kind == Profile::Kind::constant && tail_.a == 0.0))
    return shape_.a + shape_.W;
  return kInf;
}

ToyKernel::ToyKernel(double band_width) : band_w_(band_width) {
  if (band_width < 0.0)
    throw std::invalid_argument("toy kernel: band width must be >= 0");
}

double ToyKernel::value(double r) const {
  if (r <= 1.0) return -1.0;
  if (r < 1.0 + band_w_) return kInf;
  return 0.0;
}

double ToyKernel::grid_value(double r, double band_eps) const {
  // Shrunk open band (1+eps, 1+w-eps); distances snapped to the nearest
  // finite branch outside it. For w <= 2*eps the band is empty and no pair
  // is ever flagged on the grid (the w=0 convention).
  if (r <= 1.0 + band_eps) return -1.0;
  if (r < 1.0 + band_w_ - band_eps) return kInf;
  return 0.0;
}

PowerLawKernel::PowerLawKernel(double p, double d, double a,
                               double barrier_height, double barrier_width,
                               Profile tail)
    : p_(p), d_(d), a_(a), h_bar_(barrier_height), W_(barrier_width),
      tail_(tail) {
  if (p <= 0.0 || d <= 0.0 || a <= 0.0)
    throw std::invalid_argument("power-law kernel: p, d, a must be > 0");
  if (barrier_width < 0.0)
    throw std::invalid_argument("power-law kernel: barrier width must be >= 0");
}

double PowerLawKernel::value(double r) const {
  if (r <= a_) return std::pow(r, p_) - d_;
  if (r <= a_ + W_) return h_bar_;
  return tail_.eval(r);
}

std::optional<WellBarrierShape> PowerLawKernel::shape() const {
  double zero_crossing = std::pow(d_, 1.0 / p_);
  double w = std::min(zero_crossing, a_);
  return WellBarrierShape{d_, w, a_, h_bar_, W_};
}

double PowerLawKernel::support_radius() const {
  if (tail_.kind == Profile::Kind::zero ||
      (tail_.kind == Profile::Kind::constant && tail_.a == 0.0))
    return a_ + W_;
  return kInf;
}

TruncatedKernel::TruncatedKernel(KernelPtr base, double r_cut)
    : base_(std::move(base)), r_cut_(r_cut) {
  if (!base_) throw std::invalid_argument("truncate: null base kernel");
  auto s = base_->shape();
  if (s && r_cut_ < s->a + s->W)
    throw std::invalid_argument(
        "truncate: R_cut < a+W would cut into the barrier");
  // Truncation may only remove non-negative tail, so that the truncated
  // kernel stays a pointwise lower bound of the base.
  for (int i = 1; i <= 1000; ++i) {
    double r = r_cut_ + i * (3.0 * r_cut_) / 1000.0;
    double v = base_->value(r);
    if (v < 0.0)
      throw std::invalid_argument("truncate: base kernel negative beyond R_cut");
  }
}

double TruncatedKernel::value(double r) const {
  return r <= r_cut_ ? base_->value(r) : 0.0;
}

double TruncatedKernel::grid_value(double r, double band_eps) const {
  return r <= r_cut_ ? base_->grid_value(r, band_eps) : 0.0;
}

double TruncatedKernel::support_radius() const {
  return std::min(r_cut_, base_->support_radius());
}

KernelPtr make_well_barrier(double d, double w, double a, double h_bar,
                            double W, Profile well, Profile barrier,
                            Profile tail) {
  if (d <= 0.0 || a <= 0.0 || h_bar <= 0.0 || W <= 0.0)
    throw std::invalid_argument("well-barrier: d, a, h, W must be > 0");
  if (w < 0.0) throw std::invalid_argument("well-barrier: w must be >= 0");
  if (!finite_on(well, 0.0, a) || !finite_on(barrier, a, a + W) ||
      !finite_on(tail, a + W + 1e-9, 4.0 * (a + W)))
    throw std::invalid_argument("well-barrier: profile not finite on its domain");
  return std::make_shared<WellBarrierKernel>(
      WellBarrierShape{d, w, a, h_bar, W}, well, barrier, tail);
}

KernelPtr make_toy(double band_width) {
  return std::make_shared<ToyKernel>(band_width);
}

KernelPtr make_power_law(double p, double d, double a, double barrier_height,
                         double barrier_width, Profile tail) {
  return std::make_shared<PowerLawKernel>(p, d, a, barrier_height,
                                          barrier_width, tail);
}

KernelPtr truncate_kernel(KernelPtr base, double r_cut) {
  return std::make_shared<TruncatedKernel>(std::move(base), r_cut);
}

double eval_kernel(const Kernel& k, double r) {
  if (r < 0.0) throw std::invalid_argument("eval_kernel: negative distance");
  return k.value(r);
}

ValidationReport validate_kernel(const Kernel& k, double tol, int samples) {
  ValidationReport rep;
  auto add = [&rep](std::string name, bool pass, std::string detail) {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  auto shape = k.shape();
  if (!shape) {
    add("shape", false, "kernel exposes no well-barrier parameters");
    return rep;
  }
  const double d = shape->d, w = shape->w, a = shape->a;
  const double h = shape->barrier_height, W = shape->W;

  // K1: K(0) = -d < 0 and non-decreasing well.
  double k0 = k.value(0.0);
  bool k1 = std::abs(k0 + d) <= tol && k0 < 0.0;
  std::string k1_detail = "K(0)=" + fmt(k0);
  double prev = k0;
  for (int i = 1; i <= samples && k1; ++i) {
    double r = a * i / samples;
    double v = k.value(r);
    if (std::isfinite(v) && v < prev) {
      k1 = false;
      k1_detail = "well decreases at r=" + fmt(r);
    }
    prev = v;
  }
  add("K1-well", k1, k1_detail);

  // K2: barrier >= h on [a, a+W]. Midpoint samples; the endpoints are
  // measure-zero and kernels with a closed well at a would fail there
  // spuriously.
  bool k2 = W > 0.0;
  std::string k2_detail = W > 0.0 ? "" : "barrier width is zero";
  for (int i = 0; i < samples && k2; ++i) {
    double r = a + W * (i + 0.5) / samples;
    double v = k.value(r);
    if (!(v >= h - tol) && !(std::isinf(v) && std::isinf(h))) {
      k2 = false;
      k2_detail = "K(" + fmt(r) + ")=" + fmt(v) + " < h";
    }
  }
  add("K2-barrier", k2, k2_detail);

  // K3: tail >= 0 and sup_{r >= R} K -> 0 on doubling radii.
  bool nonneg = true;
  std::string k3_detail;
  for (int i = 1; i <= samples && nonneg; ++i) {
    double r = (a + W) + (4.0 * (a + W)) * i / samples;
    if (k.value(r) < -tol) {
      nonneg = false;
      k3_detail = "tail negative at r=" + fmt(r);
    }
  }
  bool decays = false;
  if (nonneg) {
    double R = a + W;
    for (int doubling = 0; doubling < 48 && !decays; ++doubling) {
      double sup = 0.0;
      for (int i = 0; i <= 256; ++i)
        sup = std::max(sup, k.value(R + R * i / 256.0));
      if (sup <= tol) decays = true;
      R *= 2.0;
    }
    if (!decays) k3_detail = "sup over doubling radii never drops below tol";
  }
  add("K3-decay", nonneg && decays, k3_detail);

  add("K4", d < h, "d=" + fmt(d) + " h=" + fmt(h));
  add("K5", 2.0 * w < W, "2w=" + fmt(2.0 * w) + " W=" + fmt(W));
  add("structural", a + w <= W - 2.0 * w,
      "a+w=" + fmt(a + w) + " W-2w=" + fmt(W - 2.0 * w));

  // Supplied w must be the first zero crossing: |K(w)| small, or a sign
  // change brackets it.
  bool w_ok = false;
  std::string w_detail;
  if (w > 0.0) {
    double at = k.value(w);
    if (std::isfinite(at) && std::abs(at) <= tol) {
      w_ok = true;
    } else {
      double left = k.value(w * (1.0 - 1e-6));
      double right = k.value(std::min(w * (1.0 + 1e-6), a + W));
      w_ok = left <= tol && (right > 0.0 || std::isinf(right));
      if (!w_ok)
        w_detail = "no zero crossing near w: K(w-)=" + fmt(left) +
                   " K(w+)=" + fmt(right);
    }
  } else {
    w_detail = "w=0";
    w_ok = k.value(1e-12) > 0.0 || std::abs(k.value(0.0)) <= tol;
  }
  add("w-consistent", w_ok, w_detail);

  return rep;
}

}  // namespace wb
