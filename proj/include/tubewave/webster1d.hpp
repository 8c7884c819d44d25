#pragma once

// Time-domain solver for the generalised horn equation
//
//   (A/c(s)^2) psi_tt - (A psi_s)_s + 2 pi alpha W psi_t = (A/c(s)^2) f,
//
// with a scattering port at s=0, a homogeneous Dirichlet end at s=1, and the
// state stepped in first-order form x = (psi, pi), pi = rho psi_t.
//
// Discretisation: P1 elements on the uniform grid so that the energy
//
//   E = 1/2 [ rho int A |psi_s|^2 + (1/(rho c^2)) int A Sigma^-2 |pi|^2 ]
//
// is exactly the quadratic form of the assembled matrices, and the port
// terms arise as the natural boundary term of the weak form. One implicit
// midpoint step then satisfies the discrete balance
//
//   dE = dt [ |u_mid|^2 - |y_mid|^2 - (1/rho) pi_mid' D pi_mid
//             + rho pi_mid' M f_mid ]
//
// to solver precision, which is what the passivity tests assert.
//
// Port convention: the input is  -c(0) psi_s(0) + psi_t(0) = beta u with
// beta = 2 sqrt(c(0)/(rho A(0))); the output channel is the conjugate
// combination, oriented so that the Dirichlet end returns a sign-flipped
// pulse: beta y = c(0) psi_s(0) + psi_t(0).

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "tubewave/common.hpp"
#include "tubewave/geometry.hpp"

namespace tubewave {

struct WebsterState {
  Eigen::VectorXd psi;  // velocity potential at active nodes 0..n_s-1
  Eigen::VectorXd pi;   // rho * psi_t
  double t = 0.0;
};

class WebsterDiscretization {
 public:
  WebsterDiscretization(const TubeGeometry& geom, int n_s) : geom_(&geom), n_(n_s) {
    for (int i = 0; i <= n_s; ++i) {
      if (geom.area(static_cast<double>(i) / n_s) <= 0.0)
        throw SingularMass("non-positive area sample in assembly");
    }
    assemble();
  }

  int n_nodes() const { return n_; }  // active nodes (node n_ at s=1 eliminated)
  double h() const { return 1.0 / n_; }
  const TubeGeometry& geometry() const { return *geom_; }

  const Eigen::SparseMatrix<double>& mass() const { return M_; }
  const Eigen::SparseMatrix<double>& stiffness() const { return K_; }
  const Eigen::SparseMatrix<double>& damping() const { return D_; }

  double area0() const { return A0_; }
  double c0() const { return c0_; }
  double beta() const { return beta_; }
  double rho() const { return rho_; }

  /// Default step suggested by accuracy (the scheme is unconditionally
  /// stable): h / (2 max c(s)).
  double default_dt() const {
    double cmax = 0.0;
    for (double c : geom_->table().c) cmax = std::max(cmax, c);
    return h() / (2.0 * cmax);
  }

  double energy(const WebsterState& x) const {
    return 0.5 * (x.psi.dot(K_ * x.psi) + x.pi.dot(M_ * x.pi));
  }

  /// Scattering input functional evaluated on a state (port side of the weak
  /// form); used for the compatibility diagnostic u(0) = G x0.
  double input_functional(const WebsterState& x) const {
    double psi_s0 = (x.psi[std::min(1, n_ - 1)] - x.psi[0]) / h();
    return 0.5 * std::sqrt(A0_ / (rho_ * c0_)) * (-rho_ * c0_ * psi_s0 + x.pi[0]);
  }

  struct StepResult {
    WebsterState state;
    double y_mid;              // output sample at t + dt/2
    double balance_residual;   // discrete energy balance defect of the step
  };

  /// One implicit midpoint step. u_mid and f_mid are the input and load
  /// sampled at t + dt/2; f_mid holds nodal values of f (may be empty).
  StepResult step(const WebsterState& x, double u_mid, const Eigen::VectorXd& f_mid,
                  double dt) const {
    prepare(dt);
    Eigen::VectorXd rhs = (2.0 / dt) * (M_ * x.pi) - (1.0 / rho_) * (K_ * x.psi);
    rhs[0] += (A0_ * beta_ / c0_) * u_mid;
    Eigen::VectorXd mf;
    if (f_mid.size() > 0) {
      mf = M_ * f_mid;
      rhs += rho_ * mf;
    }
    Eigen::VectorXd pi_mid = solver_.solve(rhs);
    if (solver_.info() != Eigen::Success) throw LinearSolveFailure("midpoint solve failed");

    StepResult r;
    r.state.psi = x.psi + (dt / rho_) * pi_mid;
    r.state.pi = 2.0 * pi_mid - x.pi;
    r.state.t = x.t + dt;
    r.y_mid = std::sqrt(A0_ / (rho_ * c0_)) * pi_mid[0] - u_mid;

    double e0 = energy(x), e1 = energy(r.state);
    double rate = u_mid * u_mid - r.y_mid * r.y_mid - (1.0 / rho_) * pi_mid.dot(D_ * pi_mid);
    if (f_mid.size() > 0) rate += rho_ * pi_mid.dot(mf);
    double scale = std::max({std::abs(e0), std::abs(e1), dt * std::abs(rate), 1e-300});
    r.balance_residual = (e1 - e0 - dt * rate) / scale;
    return r;
  }

  WebsterState zero_state() const {
    WebsterState x;
    x.psi = Eigen::VectorXd::Zero(n_);
    x.pi = Eigen::VectorXd::Zero(n_);
    return x;
  }

  /// Interpolate a function of s onto the active nodes.
  Eigen::VectorXd sample(const std::function<double(double)>& f) const {
    Eigen::VectorXd v(n_);
    for (int i = 0; i < n_; ++i) v[i] = f(static_cast<double>(i) / n_);
    return v;
  }

  /// L^2(0,1) norm of a nodal grid function (P1 interpolant, the eliminated
  /// end value taken as zero).
  double l2_norm(const Eigen::VectorXd& v) const {
    double hh = h(), acc = 0.0;
    auto at = [&](int i) { return i < n_ ? v[i] : 0.0; };
    for (int e = 0; e < n_; ++e) {
      double a = at(e), b = at(e + 1);
      acc += hh * (a * a + a * b + b * b) / 3.0;
    }
    return std::sqrt(acc);
  }

 private:
  void assemble() {
    const int n = n_;
    const double hh = 1.0 / n;
    rho_ = geom_->spec().density;
    A0_ = geom_->area(0.0);
    c0_ = geom_->wave_speed(0.0);
    beta_ = 2.0 * std::sqrt(c0_ / (rho_ * A0_));

    auto q = gauss_legendre01(3);
    std::vector<Eigen::Triplet<double>> mt, kt, dtr;
    double alpha = geom_->spec().wall_dissipation;
    for (int e = 0; e < n; ++e) {
      double s0 = e * hh;
      double m[2][2] = {{0, 0}, {0, 0}}, k[2][2] = {{0, 0}, {0, 0}}, d[2][2] = {{0, 0}, {0, 0}};
      for (std::size_t g = 0; g < q.nodes.size(); ++g) {
        double s = s0 + hh * q.nodes[g];
        double w = hh * q.weights[g];
        double A = geom_->area(s);
        double cs = geom_->wave_speed(s);
        double Ws = geom_->stretching(s);
        double phi[2] = {1.0 - q.nodes[g], q.nodes[g]};
        double dphi[2] = {-1.0 / hh, 1.0 / hh};
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            m[a][b] += w * (A / (rho_ * cs * cs)) * phi[a] * phi[b];
            k[a][b] += w * rho_ * A * dphi[a] * dphi[b];
            d[a][b] += w * 2.0 * M_PI * alpha * Ws * phi[a] * phi[b];
          }
      }
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          int ia = e + a, ib = e + b;
          if (ia >= n || ib >= n) continue;  // Dirichlet row/column at s=1
          mt.emplace_back(ia, ib, m[a][b]);
          kt.emplace_back(ia, ib, k[a][b]);
          if (alpha > 0.0) dtr.emplace_back(ia, ib, d[a][b]);
        }
    }
    M_.resize(n, n);
    K_.resize(n, n);
    D_.resize(n, n);
    M_.setFromTriplets(mt.begin(), mt.end());
    K_.setFromTriplets(kt.begin(), kt.end());
    D_.setFromTriplets(dtr.begin(), dtr.end());
  }

  void prepare(double dt) const {
    if (factored_ && dt == dt_) return;
    Eigen::SparseMatrix<double> S = (2.0 / dt) * M_ + (dt / (2.0 * rho_ * rho_)) * K_ +
                                    (1.0 / rho_) * D_;
    S.coeffRef(0, 0) += A0_ / (rho_ * c0_);
    solver_.compute(S);
    if (solver_.info() != Eigen::Success)
      throw LinearSolveFailure("factorization of the step matrix failed");
    dt_ = dt;
    factored_ = true;
  }

  const TubeGeometry* geom_;
  int n_;
  double rho_ = 0, A0_ = 0, c0_ = 0, beta_ = 0;
  Eigen::SparseMatrix<double> M_, K_, D_;
  mutable Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
  mutable double dt_ = -1.0;
  mutable bool factored_ = false;
};

struct ScatteringSignal {
  std::vector<double> t;        // midpoint times
  std::vector<double> u, y;     // samples at those times
};

struct WebsterTrajectory {
  ScatteringSignal signal;
  std::vector<double> energy;             // at step ends
  std::vector<double> balance_residual;   // per step
  std::vector<WebsterState> snapshots;    // every `stride` steps incl. t=0
  int stride = 1;
  WebsterState final_state;
  double compatibility_gap = 0.0;  // |u(0) - G x0|, diagnostic only
};

/// Run the solver over [0,T]. `u` and `load` are sampled at step midpoints;
/// `load` may be null for the unforced problem.
inline WebsterTrajectory solve(const WebsterDiscretization& disc,
                               const std::function<double(double)>& u,
                               const std::function<Eigen::VectorXd(double)>& load,
                               WebsterState x0, double T, double dt, int snapshot_stride = 1) {
  WebsterTrajectory traj;
  traj.stride = snapshot_stride;
  traj.compatibility_gap = std::abs(u(0.0) - disc.input_functional(x0));
  int steps = static_cast<int>(std::ceil(T / dt - 1e-12));
  traj.snapshots.push_back(x0);
  WebsterState x = std::move(x0);
  Eigen::VectorXd empty;
  for (int k = 0; k < steps; ++k) {
    double tm = x.t + 0.5 * dt;
    Eigen::VectorXd f = load ? load(tm) : empty;
    auto r = disc.step(x, u(tm), f, dt);
    traj.signal.t.push_back(tm);
    traj.signal.u.push_back(u(tm));
    traj.signal.y.push_back(r.y_mid);
    traj.energy.push_back(disc.energy(r.state));
    traj.balance_residual.push_back(r.balance_residual);
    x = std::move(r.state);
    if ((k + 1) % snapshot_stride == 0) traj.snapshots.push_back(x);
  }
  traj.final_state = std::move(x);
  return traj;
}

}  // namespace tubewave
