#pragma once

// 1D quadrature rules: Gauss-Legendre on [0,1] and the periodic trapezoid
// rule on [0,2pi). Disk integrals pair the two (radial x angular).

#include <cmath>
#include <cstddef>
#include <vector>

namespace tubewave {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n points mapped to [0,1].
/// Nodes found by Newton iteration on P_n with the three-term recurrence.
inline QuadRule gauss_legendre01(int n) {
  QuadRule q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-based initial guess on [-1,1].
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
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
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    q.weights[n - 1 - i] = 0.5 * w;
  }
  return q;
}

/// Equispaced angular nodes theta_k = 2 pi k / n, weight 2 pi / n each.
/// Exact for trigonometric polynomials of degree < n.
inline QuadRule theta_trapezoid(int n) {
  QuadRule q;
  q.nodes.resize(n);
  q.weights.assign(n, 2.0 * M_PI / n);
  for (int k = 0; k < n; ++k) q.nodes[k] = 2.0 * M_PI * k / n;
  return q;
}

/// Integral of f(r, theta) over the disk of radius R with plain measure
/// dA = r dr dtheta, via Gauss-Legendre in the mapped radius r = R x.
template <class F>
double disk_integral(double R, const F& f, const QuadRule& qr, const QuadRule& qt) {
  double sum = 0.0;
  for (std::size_t j = 0; j < qr.nodes.size(); ++j) {
    double x = qr.nodes[j];
    double r = R * x;
    double wr = qr.weights[j] * R * R * x;  // dA = R^2 x dx dtheta
    for (std::size_t k = 0; k < qt.nodes.size(); ++k) {
      sum += wr * qt.weights[k] * f(r, qt.nodes[k]);
    }
  }
  return sum;
}

/// Composite trapezoid over equispaced samples on [a,b].
inline double trapezoid(const std::vector<double>& y, double a, double b) {
  if (y.size() < 2) return 0.0;
  double h = (b - a) / static_cast<double>(y.size() - 1);
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

}  // namespace tubewave
