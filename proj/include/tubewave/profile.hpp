#pragma once

// Scalar profiles on s in [0,1] with two analytic derivatives. These carry
// the radius R(s) and centreline curvature kappa(s) that define a tube.
//
// Supported kinds: constant, polynomial, cosine bump, sin^2(pi s) bump, and
// C^2 natural cubic splines through tabulated points.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tubewave {

class Profile {
 public:
  enum class Kind { Constant, Polynomial, CosineBump, SineSquaredBump, CubicSpline };

  static Profile constant(double v) {
    Profile p(Kind::Constant);
    p.coeffs_ = {v};
    return p;
  }

  /// c0 + c1 s + c2 s^2 + ...
  static Profile polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("polynomial profile needs coefficients");
    Profile p(Kind::Polynomial);
    p.coeffs_ = std::move(coeffs);
    return p;
  }

  /// base + amp * (1 - cos(2 pi s)) / 2; flat (zero slope) at both ends.
  static Profile cosine_bump(double base, double amp) {
    Profile p(Kind::CosineBump);
    p.coeffs_ = {base, amp};
    return p;
  }

  /// amp * sin^2(pi s); vanishes with its first derivative at both ends.
  static Profile sine_squared_bump(double amp) {
    Profile p(Kind::SineSquaredBump);
    p.coeffs_ = {amp};
    return p;
  }

  /// Natural cubic spline through (s_i, v_i); s_i strictly increasing,
  /// spanning [0,1]. C^2, which covers every derivative the models use.
  static Profile cubic_spline(std::vector<double> s, std::vector<double> v) {
    if (s.size() != v.size() || s.size() < 3)
      throw std::invalid_argument("spline profile needs >= 3 matching knots");
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i] <= s[i - 1]) throw std::invalid_argument("spline knots must be increasing");
    Profile p(Kind::CubicSpline);
    p.knots_ = std::move(s);
    p.coeffs_ = std::move(v);
    p.build_spline();
    return p;
  }

  Kind kind() const { return kind_; }

  double eval(double s) const { return derivative<0>(s); }
  double d1(double s) const { return derivative<1>(s); }
  double d2(double s) const { return derivative<2>(s); }

 private:
  explicit Profile(Kind k) : kind_(k) {}

  template <int Order>
  double derivative(double s) const {
    switch (kind_) {
      case Kind::Constant:
        return Order == 0 ? coeffs_[0] : 0.0;
      case Kind::Polynomial: {
        double acc = 0.0;
        for (std::size_t n = coeffs_.size(); n-- > 0;) {
          if (static_cast<int>(n) < Order) break;
          double c = coeffs_[n];
          for (int k = 0; k < Order; ++k) c *= static_cast<double>(n - k);
          acc = acc * s + ((static_cast<int>(n) >= Order) ? c : 0.0);
        }
        return acc;
      }
      case Kind::CosineBump: {
        double w = 2.0 * M_PI;
        if constexpr (Order == 0) return coeffs_[0] + coeffs_[1] * 0.5 * (1.0 - std::cos(w * s));
        if constexpr (Order == 1) return coeffs_[1] * 0.5 * w * std::sin(w * s);
        return coeffs_[1] * 0.5 * w * w * std::cos(w * s);
      }
      case Kind::SineSquaredBump: {
        double w = M_PI;
        if constexpr (Order == 0) {
          double sn = std::sin(w * s);
          return coeffs_[0] * sn * sn;
        }
        if constexpr (Order == 1) return coeffs_[0] * w * std::sin(2.0 * w * s);
        return coeffs_[0] * 2.0 * w * w * std::cos(2.0 * w * s);
      }
      case Kind::CubicSpline:
        return spline_eval<Order>(s);
    }
    return 0.0;
  }

  // Natural spline second derivatives by the standard tridiagonal solve.
  void build_spline() {
    const std::size_t n = knots_.size();
    m2_.assign(n, 0.0);
    std::vector<double> a(n, 0.0), b(n, 1.0), c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      double hl = knots_[i] - knots_[i - 1];
      double hr = knots_[i + 1] - knots_[i];
      a[i] = hl / 6.0;
      b[i] = (hl + hr) / 3.0;
      c[i] = hr / 6.0;
      d[i] = (coeffs_[i + 1] - coeffs_[i]) / hr - (coeffs_[i] - coeffs_[i - 1]) / hl;
    }
    for (std::size_t i = 1; i < n; ++i) {
      double m = a[i] / b[i - 1];
      b[i] -= m * c[i - 1];
      d[i] -= m * d[i - 1];
    }
    m2_[n - 1] = d[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) m2_[i] = (d[i] - c[i] * m2_[i + 1]) / b[i];
  }

  template <int Order>
  double spline_eval(double s) const {
    const std::size_t n = knots_.size();
    std::size_t i = 1;
    while (i + 1 < n && s > knots_[i]) ++i;
    double h = knots_[i] - knots_[i - 1];
    double u = knots_[i] - s, v = s - knots_[i - 1];
    double y0 = coeffs_[i - 1], y1 = coeffs_[i];
    double m0 = m2_[i - 1], m1 = m2_[i];
    if constexpr (Order == 0) {
      return (m0 * u * u * u + m1 * v * v * v) / (6.0 * h) + (y0 - m0 * h * h / 6.0) * u / h +
             (y1 - m1 * h * h / 6.0) * v / h;
    }
    if constexpr (Order == 1) {
      return (-m0 * u * u + m1 * v * v) / (2.0 * h) + (y1 - y0) / h - (m1 - m0) * h / 6.0;
    }
    return (m0 * u + m1 * v) / h;
  }

  Kind kind_;
  std::vector<double> coeffs_;
  std::vector<double> knots_;
  std::vector<double> m2_;
};

/// 4th-order centered finite difference of a profile-like callable; used to
/// cross-check analytic derivatives.
template <class F>
double fd_derivative4(const F& f, double s, double h) {
  return (-f(s + 2 * h) + 8 * f(s + h) - 8 * f(s - h) + f(s - 2 * h)) / (12.0 * h);
}

}  // namespace tubewave
