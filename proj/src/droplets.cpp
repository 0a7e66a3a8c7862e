#include "wb/droplets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "wb/density.hpp"
#include "wb/quadrature.hpp"
#include "wb/rng.hpp"

namespace wb {

namespace {

double unit_ball_volume(int n) { return n == 1 ? 2.0 : M_PI; }

double cnp_closed_form(int n, double p) {
  if (std::abs(p - 2.0) > 1e-12)
    throw std::invalid_argument("closed form for C_{n,p} covers p = 2 only");
  // Int Int |x-y|^2 = 2|B| Int |x|^2 (the cross term vanishes by symmetry).
  const double B = unit_ball_volume(n);
  const double second_moment = n == 1 ? 2.0 / 3.0 : M_PI / 2.0;
  return 2.0 * second_moment / std::pow(B, 1.0 + 2.0 / n);
}

double cnp_quadrature(int n, double p) {
  if (n == 1) {
    // Inner integral split at the diagonal so each piece is smooth.
    GaussRule outer = gauss_legendre(160), inner = gauss_legendre(160);
    double total = 0.0;
    for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
      const double x = outer.nodes[i];
      auto f = [&](double y) { return std::pow(std::abs(x - y), p); };
      double in = integrate(f, -1.0, x, inner) + integrate(f, x, 1.0, inner);
      total += outer.weights[i] * in;
    }
    return total / std::pow(2.0, 2.0 + p);
  }
  // 2D reduction to (s, t, theta):
  //   Int Int |x-y|^p = 4 pi Int_0^1 Int_0^1 Int_0^pi
  //                       s t (s^2 + t^2 - 2 s t cos th)^{p/2} dth dt ds.
  GaussRule rs = gauss_legendre(96), rt = gauss_legendre(96),
            rth = gauss_legendre(96);
  double total = 0.0;
  for (std::size_t i = 0; i < rs.nodes.size(); ++i) {
    const double s = 0.5 * (rs.nodes[i] + 1.0), ws = 0.5 * rs.weights[i];
    for (std::size_t j = 0; j < rt.nodes.size(); ++j) {
      const double t = 0.5 * (rt.nodes[j] + 1.0), wt = 0.5 * rt.weights[j];
      double th_sum = 0.0;
      for (std::size_t k = 0; k < rth.nodes.size(); ++k) {
        const double th = 0.5 * M_PI * (rth.nodes[k] + 1.0);
        const double wth = 0.5 * M_PI * rth.weights[k];
        th_sum += wth * std::pow(s * s + t * t - 2.0 * s * t * std::cos(th),
                                 0.5 * p);
      }
      total += ws * wt * s * t * th_sum;
    }
  }
  total *= 4.0 * M_PI;
  return total / std::pow(M_PI, 2.0 + 0.5 * p);
}

double cnp_monte_carlo(int n, double p, long long samples, uint64_t seed) {
  Rng rng(seed);
  auto sample_ball = [&](double& x, double& y) {
    if (n == 1) {
      x = rng.uniform(-1.0, 1.0);
      y = 0.0;
      return;
    }
    do {
      x = rng.uniform(-1.0, 1.0);
      y = rng.uniform(-1.0, 1.0);
    } while (x * x + y * y > 1.0);
  };
  double mean = 0.0;
  for (long long i = 0; i < samples; ++i) {
    double x1, y1, x2, y2;
    sample_ball(x1, y1);
    sample_ball(x2, y2);
    mean += std::pow(std::hypot(x1 - x2, y1 - y2), p);
  }
  mean /= static_cast<double>(samples);
  return mean / std::pow(unit_ball_volume(n), p / n);
}

// C_{n,p} backs every g() evaluation; cache the quadrature values.
double cnp_for(const PowerLawParams& params) {
  if (std::abs(params.p - 2.0) <= 1e-12)
    return cnp_closed_form(params.n, params.p);
  static std::map<std::pair<int, double>, double> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(params.n, params.p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  double v = cnp_quadrature(params.n, params.p);
  cache.emplace(key, v);
  return v;
}

double g_raw(const PowerLawParams& params, double C, double m) {
  return C * std::pow(m, 2.0 + params.p / params.n) - params.d * m * m;
}

template <typename F>
double golden_minimize(F&& f, double a, double b, double tol) {
  constexpr double phi = 0.6180339887498949;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

PowerLawParams::PowerLawParams(int n_in, double p_in, double d_in)
    : n(n_in), p(p_in), d(d_in) {
  if (n != 1 && n != 2)
    throw std::invalid_argument("power-law params: n must be 1 or 2");
  if (!(p > n))
    throw std::invalid_argument("power-law params: p > n required");
  if (!(d > 0.0))
    throw std::invalid_argument("power-law params: d must be > 0");
}

double c_np(int n, double p, CnpMethod method, long long mc_samples,
            uint64_t seed) {
  if (n != 1 && n != 2) throw std::invalid_argument("c_np: n must be 1 or 2");
  if (!(p > 0.0)) throw std::invalid_argument("c_np: p must be > 0");
  switch (method) {
    case CnpMethod::closed_form:
      return cnp_closed_form(n, p);
    case CnpMethod::product_quadrature:
      return cnp_quadrature(n, p);
    case CnpMethod::monte_carlo:
      return cnp_monte_carlo(n, p, mc_samples, seed);
  }
  throw std::invalid_argument("c_np: unknown method");
}

double ball_energy_g(const PowerLawParams& params, double m,
                     double well_end_a) {
  if (m < 0.0) throw std::invalid_argument("ball_energy_g: mass must be >= 0");
  if (m == 0.0) return 0.0;
  const double diameter = 2.0 * ball_radius_from_mass(params.n, m);
  if (diameter > well_end_a)
    throw std::domain_error(
        "ball_energy_g: ball diameter exceeds the power-law region");
  return g_raw(params, cnp_for(params), m);
}

double split_function_f(const PowerLawParams& params, double m, double t) {
  if (t < -1e-12 || t > 0.5 + 1e-12)
    throw std::invalid_argument("split function: t must lie in [0, 1/2]");
  t = std::clamp(t, 0.0, 0.5);
  const double C = cnp_for(params);
  return g_raw(params, C, t * m) + g_raw(params, C, (1.0 - t) * m);
}

double split_function_df(const PowerLawParams& params, double m, double t) {
  if (t < -1e-12 || t > 0.5 + 1e-12)
    throw std::invalid_argument("split function: t must lie in [0, 1/2]");
  t = std::clamp(t, 0.0, 0.5);
  const double q = params.p / params.n;
  const double C = cnp_for(params);
  return m * m *
         (C * (2.0 + q) * std::pow(m, q) *
              (std::pow(t, 1.0 + q) - std::pow(1.0 - t, 1.0 + q)) -
          2.0 * params.d * (2.0 * t - 1.0));
}

double split_function_d2f(const PowerLawParams& params, double m, double t) {
  if (t < -1e-12 || t > 0.5 + 1e-12)
    throw std::invalid_argument("split function: t must lie in [0, 1/2]");
  t = std::clamp(t, 0.0, 0.5);
  const double q = params.p / params.n;
  const double C = cnp_for(params);
  return m * m *
         (C * (2.0 + q) * (1.0 + q) * std::pow(m, q) *
              (std::pow(t, q) + std::pow(1.0 - t, q)) -
          4.0 * params.d);
}

SplitThresholds split_thresholds(const PowerLawParams& params) {
  const double q = params.p / params.n;
  const double C = cnp_for(params);
  SplitThresholds th;
  th.C_np = C;
  th.m0 = std::pow(2.0 * params.d / (C * (2.0 + q)), 1.0 / q);
  th.m1 = std::pow(std::pow(2.0, 1.0 + q) * params.d /
                       (C * (2.0 + q) * (1.0 + q)),
                   1.0 / q);
  if (!(th.m0 < th.m1))
    throw std::logic_error("split thresholds violate m0 < m1");
  return th;
}

std::pair<double, double> best_two_ball_split(const PowerLawParams& params,
                                              double m) {
  if (!(m > 0.0))
    throw std::invalid_argument("best_two_ball_split: mass must be > 0");
  const SplitThresholds th = split_thresholds(params);
  if (m <= th.m0) return {0.0, split_function_f(params, m, 0.0)};
  if (m >= th.m1) return {0.5, split_function_f(params, m, 0.5)};

  // f' is concave with f'(0) < 0 and f'(1/2) = 0, so the single interior root
  // is bracketed by [0, 1/2) once we back off the right endpoint.
  double a = 0.0, b = 0.5;
  while (!(split_function_df(params, m, b * (1.0 - 1e-9)) > 0.0) && b > 1e-6)
    b *= 0.9;
  b *= (1.0 - 1e-9);
  for (int iter = 0; iter < 200 && (b - a) > 1e-16; ++iter) {
    double mid = 0.5 * (a + b);
    if (split_function_df(params, m, mid) < 0.0)
      a = mid;
    else
      b = mid;
  }
  double t0 = 0.5 * (a + b);
  return {t0, split_function_f(params, m, t0)};
}

GeneralizedMinimizer optimal_partition(const PowerLawParams& params, double m,
                                       int k_max) {
  if (!(m > 0.0))
    throw std::invalid_argument("optimal_partition: mass must be > 0");
  const double C = cnp_for(params);
  auto g = [&](double mass) { return g_raw(params, C, mass); };

  if (k_max < 1) {
    const double m_star = linear_growth_limit(params).first;
    k_max = static_cast<int>(std::ceil(m / m_star)) + 2;
  }

  int best_k = 1;
  double best_s = m;  // smaller-ball mass; equals m/k for an equal split
  double best_total = g(m);

  for (int k = 2; k <= k_max; ++k) {
    const double cap = m / k;
    auto total_for = [&](double s) {
      return g(s) + (k - 1) * g((m - s) / (k - 1));
    };
    // Coarse scan, then golden refinement around the best bracket.
    const int N = 2048;
    int best_i = N;
    double best_v = total_for(cap);
    for (int i = 1; i < N; ++i) {
      double v = total_for(cap * i / N);
      if (v < best_v) {
        best_v = v;
        best_i = i;
      }
    }
    double lo = cap * std::max(1, best_i - 1) / N;
    double hi = cap * std::min(N, best_i + 1) / N;
    double s = golden_minimize(total_for, lo, hi, 1e-12 * std::max(1.0, m));
    if (total_for(cap) <= total_for(s)) s = cap;
    double total = total_for(s);
    if (total < best_total - 1e-9) {
      best_total = total;
      best_k = k;
      best_s = s;
    }
  }

  GeneralizedMinimizer gm;
  gm.k = best_k;
  gm.k_max_hit = best_k == k_max && k_max > 1;
  if (best_k == 1) {
    gm.masses = {m};
  } else {
    const double r = (m - best_s) / (best_k - 1);
    // Snap to an exact equal split when the optimum sits at the cap.
    if (r - best_s <= 1e-7 * std::max(1.0, m)) {
      gm.masses.assign(best_k, m / best_k);
    } else {
      gm.masses.assign(best_k - 1, r);
      gm.masses.push_back(best_s);
    }
  }
  std::sort(gm.masses.rbegin(), gm.masses.rend());
  gm.total_energy = 0.0;
  for (double mi : gm.masses) {
    gm.energies.push_back(g(mi));
    gm.total_energy += gm.energies.back();
  }
  return gm;
}

double minimal_energy_E(const PowerLawParams& params, double m) {
  return optimal_partition(params, m).total_energy;
}

std::pair<double, double> linear_growth_limit(const PowerLawParams& params) {
  const double q = params.p / params.n;
  const double C = cnp_for(params);
  const double m_star = std::pow(params.d / (C * (1.0 + q)), 1.0 / q);
  const double value = C * std::pow(m_star, 1.0 + q) - params.d * m_star;
  return {m_star, value};
}

SubadditivityReport subadditivity_probe(const PowerLawParams& params, double m,
                                        double n_mass) {
  if (!(m > 0.0) || !(n_mass > 0.0))
    throw std::invalid_argument("subadditivity_probe: masses must be > 0");
  SubadditivityReport rep;
  rep.lhs = minimal_energy_E(params, m + n_mass);
  rep.rhs = minimal_energy_E(params, m) + minimal_energy_E(params, n_mass);
  rep.slack = rep.rhs - rep.lhs;
  rep.ok = rep.lhs <= rep.rhs + 1e-9;
  return rep;
}

}  // namespace wb
