#pragma once

// Tube geometry: a planar centreline given by its curvature kappa(s) and a
// circular cross-section of radius R(s), s in [0,1]. Everything the two wave
// models and the error bounds need is derived from these two profiles:
//
//   A      = pi R^2                    cross-section area
//   eta    = R kappa                   curvature ratio (must stay < 1)
//   W      = R sqrt(R'^2 + (eta-1)^2)  stretching factor (wall measure)
//   Sigma  = (1 + eta^2/4)^(-1/2)      sound speed correction
//   c(s)   = c Sigma(s)                corrected 1D wave speed
//   1/Xi   = 1 - r kappa cos(theta)    curvature factor of the metric
//   E      = Xi^-2 - Sigma^-2          cross-section error function
//
// The centreline itself is never reconstructed; only kappa enters the
// formulas (planar curve, zero torsion).

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tubewave/common.hpp"
#include "tubewave/profile.hpp"
#include "tubewave/quadrature.hpp"

namespace tubewave {

struct TubeSpec {
  Profile curvature = Profile::constant(0.0);  // kappa(s), 1/length
  Profile radius = Profile::constant(0.1);     // R(s), length
  double sound_speed = 343.0;                  // c, length/time
  double density = 1.2;                        // rho, mass/volume
  double wall_dissipation = 0.0;               // alpha >= 0, dimensionless
};

/// Geometry coefficients sampled on the uniform s-grid.
struct CoefficientTable {
  std::vector<double> s, R, R1, R2, kappa, kappa1;
  std::vector<double> A, A1, A2, eta, W, Sigma, c;
};

struct MetricSample {
  double xi_inv;  // 1 - r kappa cos(theta)
  double err_fn;  // -2 r kappa cos + kappa^2 (r^2 cos^2 - R^2/4)
};

struct ValidationCheck {
  std::string name;
  bool pass;
  double extremal;  // value that decides the check
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

class TubeGeometry {
 public:
  TubeGeometry(TubeSpec spec, int n_s) : spec_(std::move(spec)), n_s_(n_s) {
    if (n_s < 2) throw std::invalid_argument("need at least 2 grid cells");
    build_table();
  }

  const TubeSpec& spec() const { return spec_; }
  int n_s() const { return n_s_; }
  double h() const { return 1.0 / n_s_; }
  const CoefficientTable& table() const { return table_; }

  // Pointwise analytic evaluations (valid at arbitrary s, not just nodes).
  double R(double s) const { return spec_.radius.eval(s); }
  double R1(double s) const { return spec_.radius.d1(s); }
  double R2(double s) const { return spec_.radius.d2(s); }
  double kappa(double s) const { return spec_.curvature.eval(s); }
  double kappa1(double s) const { return spec_.curvature.d1(s); }
  double area(double s) const {
    double r = R(s);
    return M_PI * r * r;
  }
  double area1(double s) const { return 2.0 * M_PI * R(s) * R1(s); }
  double area2(double s) const { return 2.0 * M_PI * (R1(s) * R1(s) + R(s) * R2(s)); }
  double eta(double s) const { return R(s) * kappa(s); }
  double stretching(double s) const {
    double e = eta(s), r1 = R1(s);
    return R(s) * std::sqrt(r1 * r1 + (e - 1.0) * (e - 1.0));
  }
  double sigma(double s) const {
    double e = eta(s);
    return 1.0 / std::sqrt(1.0 + 0.25 * e * e);
  }
  double wave_speed(double s) const { return spec_.sound_speed * sigma(s); }

  double xi_inv(double s, double r, double theta) const {
    return 1.0 - r * kappa(s) * std::cos(theta);
  }

  /// E = Xi^-2 - Sigma^-2 in the factored polynomial form; exact, and the
  /// kappa -> 0 limit of E/kappa stays finite.
  double err_fn(double s, double r, double theta) const {
    double k = kappa(s), ct = std::cos(theta), Rs = R(s);
    return -2.0 * r * k * ct + k * k * (r * r * ct * ct - 0.25 * Rs * Rs);
  }

  double err_fn_over_kappa(double s, double r, double theta) const {
    double k = kappa(s), ct = std::cos(theta), Rs = R(s);
    return -2.0 * r * ct + k * (r * r * ct * ct - 0.25 * Rs * Rs);
  }

  MetricSample metric_at(double s, double r, double theta) const {
    if (r > R(s) * (1.0 + 1e-12))
      throw OutOfTube("metric_at: r = " + format_double(r) + " exceeds R(s) = " +
                      format_double(R(s)));
    return {xi_inv(s, r, theta), err_fn(s, r, theta)};
  }

  /// Max of eta over a grid refined `refine` times relative to the s-grid.
  double max_eta(int refine = 10) const {
    int n = n_s_ * refine;
    double m = 0.0;
    for (int i = 0; i <= n; ++i) m = std::max(m, eta(static_cast<double>(i) / n));
    return m;
  }

  double min_radius(int refine = 10) const {
    int n = n_s_ * refine;
    double m = R(0.0);
    for (int i = 0; i <= n; ++i) m = std::min(m, R(static_cast<double>(i) / n));
    return m;
  }

  double max_abs_kappa(int refine = 10) const {
    int n = n_s_ * refine;
    double m = 0.0;
    for (int i = 0; i <= n; ++i) m = std::max(m, std::abs(kappa(static_cast<double>(i) / n)));
    return m;
  }

  ValidationReport validate() const {
    ValidationReport rep;
    double me = max_eta();
    rep.checks.push_back({"eta_below_one", me < 1.0, me});
    double mr = min_radius();
    rep.checks.push_back({"radius_positive", mr > 0.0, mr});
    double a_scale = 0.0;
    for (int i = 0; i <= n_s_; ++i) a_scale = std::max(a_scale, area(static_cast<double>(i) / n_s_));
    double a10 = std::abs(area1(0.0));
    rep.checks.push_back({"area_slope_zero_at_control_end", a10 <= 1e-12 * a_scale, a10});
    double k_scale = std::max(max_abs_kappa(), 1.0);
    double k0 = std::abs(kappa(0.0));
    rep.checks.push_back({"curvature_zero_at_control_end", k0 <= 1e-12 * k_scale, k0});
    double mc = spec_.sound_speed * sigma_min();
    rep.checks.push_back({"wave_speed_positive", mc > 0.0, mc});
    return rep;
  }

  double sigma_min() const {
    double m = 1.0;
    for (int i = 0; i <= 10 * n_s_; ++i) m = std::min(m, sigma(static_cast<double>(i) / (10 * n_s_)));
    return m;
  }

 private:
  void build_table() {
    if (spec_.wall_dissipation < 0.0)
      throw std::invalid_argument("wall_dissipation must be >= 0");
    if (min_radius() <= 0.0) throw NonPositiveRadius("R(s) must be positive on [0,1]");
    double me = max_eta();
    if (me >= 1.0)
      throw FoldedTube("max eta = " + format_double(me) + " >= 1; tube folds into itself");
    auto rep = validate();
    for (const auto& c : rep.checks) {
      if (!c.pass && (c.name == "area_slope_zero_at_control_end" ||
                      c.name == "curvature_zero_at_control_end"))
        throw ControlEndViolation(c.name + " fails: " + format_double(c.extremal));
    }

    int n = n_s_;
    auto& t = table_;
    t.s.resize(n + 1);
    t.R.resize(n + 1);
    t.R1.resize(n + 1);
    t.R2.resize(n + 1);
    t.kappa.resize(n + 1);
    t.kappa1.resize(n + 1);
    t.A.resize(n + 1);
    t.A1.resize(n + 1);
    t.A2.resize(n + 1);
    t.eta.resize(n + 1);
    t.W.resize(n + 1);
    t.Sigma.resize(n + 1);
    t.c.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
      double s = static_cast<double>(i) / n;
      t.s[i] = s;
      t.R[i] = R(s);
      t.R1[i] = R1(s);
      t.R2[i] = R2(s);
      t.kappa[i] = kappa(s);
      t.kappa1[i] = kappa1(s);
      t.A[i] = area(s);
      t.A1[i] = area1(s);
      t.A2[i] = area2(s);
      t.eta[i] = eta(s);
      t.W[i] = stretching(s);
      t.Sigma[i] = sigma(s);
      t.c[i] = wave_speed(s);
    }
  }

  TubeSpec spec_;
  int n_s_;
  CoefficientTable table_;
};

inline TubeGeometry build_tube(const TubeSpec& spec, int n_s) { return TubeGeometry(spec, n_s); }

/// Disk integral of f(r,theta) at station s with the plain area measure.
template <class F>
double section_integral(const TubeGeometry& geom, double s, const F& f, int n_r = 16,
                        int n_theta = 32) {
  auto qr = gauss_legendre01(n_r);
  auto qt = theta_trapezoid(n_theta);
  return disk_integral(geom.R(s), f, qr, qt);
}

}  // namespace tubewave
