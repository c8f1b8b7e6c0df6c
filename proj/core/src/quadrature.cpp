#include "hilbert/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "hilbert/errors.hpp"

namespace hilbert {

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return cache.emplace(n, std::move(rule)).first->second;
}

namespace {

template <class T, class F>
T composite(const F& f, double a, double b, int panels, int order) {
  const GaussRule& g = gauss_legendre(order);
  const double width = (b - a) / panels;
  PairwiseSum<T> sum;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    for (int i = 0; i < order; ++i) sum.add(g.weights[i] * f(mid + 0.5 * width * g.nodes[i]));
  }
  return sum.total() * (0.5 * width);
}

template <class T, class F>
T adaptive(const F& f, double a, double b, double tol, double abs_floor, int max_panels) {
  int panels = 1;
  T prev = composite<T>(f, a, b, panels, 20);
  while (panels < max_panels) {
    panels *= 2;
    T cur = composite<T>(f, a, b, panels, 20);
    if (std::abs(cur - prev) <= std::max(tol * std::abs(cur), abs_floor)) return cur;
    prev = cur;
  }
  throw QuadratureBudgetExceeded("adaptive quadrature did not converge");
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, int panels, int order) {
  return composite<double>(f, a, b, panels, order);
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f, double a, double b,
                                       int panels, int order) {
  return composite<std::complex<double>>(f, a, b, panels, order);
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol, double abs_floor,
                          int max_panels) {
  return adaptive<double>(f, a, b, tol, abs_floor, max_panels);
}

std::complex<double> integrate_adaptive_complex(const std::function<std::complex<double>(double)>& f, double a,
                                                double b, double tol, double abs_floor, int max_panels) {
  return adaptive<std::complex<double>>(f, a, b, tol, abs_floor, max_panels);
}

}  // namespace hilbert
