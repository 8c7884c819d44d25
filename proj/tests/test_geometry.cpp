#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "tubewave/geometry.hpp"

using namespace tubewave;

namespace {

TubeSpec straight_spec(double R0 = 0.1) {
  TubeSpec s;
  s.curvature = Profile::constant(0.0);
  s.radius = Profile::constant(R0);
  return s;
}

TubeSpec curved_bump_spec(double kappa0 = 6.0, double R0 = 0.2) {
  TubeSpec s;
  s.curvature = Profile::sine_squared_bump(kappa0);
  s.radius = Profile::constant(R0);
  return s;
}

}  // namespace

TEST_CASE("straight cylinder coefficients") {
  auto geom = build_tube(straight_spec(0.1), 32);
  const auto& t = geom.table();
  for (int i = 0; i <= 32; ++i) {
    REQUIRE_THAT(t.eta[i], Catch::Matchers::WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(t.Sigma[i], Catch::Matchers::WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(t.W[i], Catch::Matchers::WithinRel(0.1, 1e-14));
    REQUIRE_THAT(t.A[i], Catch::Matchers::WithinRel(M_PI * 0.01, 1e-14));
  }
  auto rep = geom.validate();
  REQUIRE(rep.all_pass());
  REQUIRE(geom.max_eta() == 0.0);
}

TEST_CASE("paraboloid radius keeps Sigma at one and has the stated W") {
  TubeSpec s = straight_spec();
  s.radius = Profile::polynomial({0.1, 0.0, 0.05});  // R = 0.1 + 0.05 s^2, R'(0)=0
  auto geom = build_tube(s, 32);
  for (int i = 0; i <= 32; ++i) {
    double ss = i / 32.0;
    double R = 0.1 + 0.05 * ss * ss, R1 = 0.1 * ss;
    REQUIRE_THAT(geom.table().Sigma[i], Catch::Matchers::WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(geom.table().W[i],
                 Catch::Matchers::WithinRel(R * std::sqrt(R1 * R1 + 1.0), 1e-13));
  }
}

TEST_CASE("folded tube is rejected exactly when max eta >= 1") {
  // eta = 0.2 * kappa0 sin^2(pi s); max over a brute-force fine grid.
  double kappa0 = 6.0;
  auto spec = curved_bump_spec(kappa0, 0.2);
  double brute = 0.0;
  for (int i = 0; i <= 20000; ++i) {
    double ss = i / 20000.0;
    brute = std::max(brute, 0.2 * spec.curvature.eval(ss));
  }
  REQUIRE(brute > 1.0);
  REQUIRE_THROWS_AS(build_tube(spec, 64), FoldedTube);

  auto ok = curved_bump_spec(4.0, 0.2);  // max eta = 0.8
  auto geom = build_tube(ok, 64);
  double brute_ok = 0.0;
  for (int i = 0; i <= 20000; ++i)
    brute_ok = std::max(brute_ok, geom.eta(i / 20000.0));
  REQUIRE_THAT(geom.max_eta(), Catch::Matchers::WithinAbs(brute_ok, 1e-10));
}

TEST_CASE("control-end assumptions are enforced") {
  TubeSpec s = straight_spec();
  s.curvature = Profile::constant(0.5);  // kappa(0) != 0
  REQUIRE_THROWS_AS(build_tube(s, 16), ControlEndViolation);

  TubeSpec s2 = straight_spec();
  s2.radius = Profile::polynomial({0.1, 0.05});  // R'(0) != 0 -> A'(0) != 0
  REQUIRE_THROWS_AS(build_tube(s2, 16), ControlEndViolation);

  TubeSpec s3 = straight_spec();
  s3.radius = Profile::polynomial({-0.1});
  REQUIRE_THROWS_AS(build_tube(s3, 16), NonPositiveRadius);
}

TEST_CASE("validate reports failures without throwing") {
  TubeSpec s = straight_spec();
  s.curvature = Profile::constant(0.5);
  TubeGeometry geom(curved_bump_spec(4.0, 0.2), 32);  // valid geometry
  auto rep = geom.validate();
  REQUIRE(rep.all_pass());
  bool found = false;
  for (const auto& c : rep.checks)
    if (c.name == "eta_below_one") {
      found = true;
      REQUIRE_THAT(c.extremal, Catch::Matchers::WithinAbs(0.8, 1e-10));
    }
  REQUIRE(found);
}

TEST_CASE("metric samples") {
  auto geom = build_tube(straight_spec(), 16);
  auto m = geom.metric_at(0.5, 0.05, 1.2);
  REQUIRE(m.xi_inv == 1.0);
  REQUIRE(m.err_fn == 0.0);

  // kappa(s*) = 1 at the bump top with kappa0 = 1.
  auto geom2 = build_tube(curved_bump_spec(1.0, 0.2), 16);
  auto m2 = geom2.metric_at(0.5, 0.1, 0.0);
  REQUIRE_THAT(m2.xi_inv, Catch::Matchers::WithinRel(0.9, 1e-14));
  REQUIRE_THROWS_AS(geom2.metric_at(0.5, 0.3, 0.0), OutOfTube);
}

TEST_CASE("error function integrates to zero over every section") {
  auto geom = build_tube(curved_bump_spec(3.0, 0.25), 24);
  double area_scale = M_PI * 0.25 * 0.25;
  for (int i = 0; i <= 24; ++i) {
    double s = i / 24.0;
    double v = section_integral(
        geom, s, [&](double r, double th) { return geom.err_fn(s, r, th); }, 8, 8);
    REQUIRE_THAT(v, Catch::Matchers::WithinAbs(0.0, 1e-12 * area_scale));
  }
}

TEST_CASE("xi_inv lower bound 1 - eta holds in the tube") {
  auto geom = build_tube(curved_bump_spec(4.0, 0.2), 16);
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j <= 10; ++j)
      for (int k = 0; k < 16; ++k) {
        double s = i / 40.0, r = geom.R(s) * j / 10.0, th = 2 * M_PI * k / 16.0;
        REQUIRE(geom.xi_inv(s, r, th) >= 1.0 - geom.eta(s) - 1e-14);
      }
}

TEST_CASE("analytic area slope matches 4th order differences") {
  TubeSpec s = straight_spec();
  s.radius = Profile::cosine_bump(0.1, 0.06);
  auto geom = build_tube(s, 16);
  auto area = [&](double x) { return geom.area(x); };
  double worst = 0.0;
  for (double x : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    double fd = fd_derivative4(area, x, 1e-3);
    worst = std::max(worst, std::abs(fd - geom.area1(x)));
  }
  REQUIRE(worst < 1e-10);  // O(h^4) with h = 1e-3 on a smooth profile
}

TEST_CASE("spline profiles reproduce smooth data to C^2") {
  std::vector<double> knots, vals;
  for (int i = 0; i <= 20; ++i) {
    double x = i / 20.0;
    knots.push_back(x);
    vals.push_back(0.1 + 0.03 * (1.0 - std::cos(2 * M_PI * x)) / 2.0);
  }
  auto p = Profile::cubic_spline(knots, vals);
  for (double x : {0.13, 0.4, 0.77}) {
    double exact = 0.1 + 0.03 * (1.0 - std::cos(2 * M_PI * x)) / 2.0;
    REQUIRE_THAT(p.eval(x), Catch::Matchers::WithinAbs(exact, 5e-6));
    double exact1 = 0.03 * M_PI * std::sin(2 * M_PI * x);
    REQUIRE_THAT(p.d1(x), Catch::Matchers::WithinAbs(exact1, 5e-4));
  }
}
