#include "kfunclab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace kfunclab {

namespace {

GaussLegendreRule build_rule() {
  GaussLegendreRule rule;
  constexpr int n = kGaussOrder;
  for (int i = 0; i < n / 2; ++i) {
    // Tricomi's initial guess for the i-th root, refined by Newton.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      derivative = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

double refine(const std::function<double(double)>& f, double a, double b, double coarse,
              double rel_tol, double abs_tol, int depth, double& error) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_legendre(f, a, mid);
  const double right = gauss_legendre(f, mid, b);
  const double fine = left + right;
  const double diff = std::abs(fine - coarse);
  if (diff <= std::max(rel_tol * std::abs(fine), abs_tol) || depth <= 0) {
    error += diff;
    return fine;
  }
  return refine(f, a, mid, left, rel_tol, abs_tol, depth - 1, error) +
         refine(f, mid, b, right, rel_tol, abs_tol, depth - 1, error);
}

}  // namespace

const GaussLegendreRule& gauss_legendre_32() {
  static const GaussLegendreRule rule = build_rule();
  return rule;
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b) {
  const GaussLegendreRule& rule = gauss_legendre_32();
  const double half = 0.5 * (b - a);
  const double center = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < kGaussOrder; ++i) sum += rule.weights[i] * f(center + half * rule.nodes[i]);
  return half * sum;
}

QuadratureResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a,
                                         double b, double rel_tol, double abs_tol,
                                         int max_depth) {
  QuadratureResult result;
  if (a == b) return result;
  const double coarse = gauss_legendre(f, a, b);
  result.value = refine(f, a, b, coarse, rel_tol, abs_tol, max_depth, result.error);
  return result;
}

}  // namespace kfunclab
