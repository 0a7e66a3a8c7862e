#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace wb {

// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
// Legendre recurrence. Accurate to machine precision for n up to a few
// hundred, which is all this project uses.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = wgt;
    rule.weights[n - 1 - i] = wgt;
  }
  return rule;
}

// Integrate f over [a, b] with an n-point rule.
template <typename F>
double integrate(F&& f, double a, double b, const GaussRule& rule) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

}  // namespace wb
