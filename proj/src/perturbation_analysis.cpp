// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointsoler/perturbation_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "pointsoler/dispersion_rootfinder.hpp"
#include "pointsoler/solitary_waves.hpp"

namespace pointsoler {
namespace {

constexpr Complex kI{0.0, 1.0};

double preserved_scale(const SolitaryWave& w, Complex L) {
  // Product of the row norms of the odd-even 2x2 jump matrix.
  const BranchData b = branch_data(w.params.m, w.params.omega, L);
  const double c = std::abs((1.0 - w.epsilon) * w.f_at_wave);
  const double r1 = std::hypot(std::abs(2.0 * b.nu_plus) + c * std::abs(b.S_plus),
                               std::abs(2.0 * b.xi) + c * std::abs(b.S_minus));
  return r1 * r1 + 1e-300;
}

// Solves the 3x3 normal equations of a least-squares fit with `cols` columns.
std::vector<double> least_squares(const std::vector<std::vector<double>>& X,
                                  const std::vector<double>& y) {
  const std::size_t n = X.front().size();
  std::vector<double> A(n * n, 0.0), b(n, 0.0);
  for (std::size_t r = 0; r < X.size(); ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      b[i] += X[r][i] * y[r];
      for (std::size_t j = 0; j < n; ++j) A[i * n + j] += X[r][i] * X[r][j];
    }
  }
  // Gaussian elimination with partial pivoting.
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(A[r * n + c]) > std::abs(A[piv * n + c])) piv = r;
    }
    if (std::abs(A[piv * n + c]) < 1e-300) throw DomainError("scaling_study: regression degenerate");
    for (std::size_t j = 0; j < n; ++j) std::swap(A[c * n + j], A[piv * n + j]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = A[r * n + c] / A[c * n + c];
      for (std::size_t j = c; j < n; ++j) A[r * n + j] -= f * A[c * n + j];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= A[i * n + j] * x[j];
    x[i] = s / A[i * n + i];
  }
  return x;
}

}  // namespace

const char* to_string(PerturbationModel model) {
  return model == PerturbationModel::parity_preserved ? "parity_preserved" : "parity_broken";
}

PerturbationResult zeta_parity_preserved(double m, double omega, double kappa, double epsilon,
                                         const PerturbationOptions& opt) {
  if (std::abs(epsilon) > opt.epsilon_bound) {
    throw DomainError("parity-preserving model: |epsilon| exceeds the perturbative bound");
  }
  const SolitaryWave w =
      solve_parity_preserved({m, omega}, Nonlinearity::pure_power(kappa), epsilon);
  PerturbationResult r;
  r.model = PerturbationModel::parity_preserved;
  r.m = m;
  r.omega = omega;
  r.kappa = kappa;
  r.epsilon = epsilon;
  r.regime_verified = omega >= opt.omega0_fraction * m;

  // Odd-even condition nu_+ = (1-eps) S_+ f / 2 at Lambda = 2 omega + zeta, squared:
  //   m^2 - (omega + zeta)^2 = q (m + omega + zeta)^2,  q = ((1-eps) f / 2)^2.
  // The quadratic factors as (zeta + m + omega) ((1+q) zeta - (m-omega) + q (m+omega)).
  const double h = 0.5 * (1.0 - epsilon) * w.f_at_wave;
  const double q = h * h;
  const double zeta = ((m - omega) - q * (m + omega)) / (1.0 + q);
  r.spurious_zeta = Complex(-(m + omega));
  // The unsquared relation needs S_+ > 0 and (1 - eps) f > 0.
  if (!(m + omega + zeta > 0.0) || !(h > 0.0)) {
    throw NoSolutionError("parity-preserving model: no admissible real root");
  }
  r.zeta = zeta;
  r.lambda = kI * (2.0 * omega + zeta);
  r.unstable = r.lambda.real() > 0.0;

  Dispersion d;
  d.f = [&w](Complex L) { return det_parity_preserved(w, L, Subspace::odd_even_odd_even); };
  d.scale = [&w](Complex L) { return preserved_scale(w, L); };
  RootFinderOptions nopt;
  nopt.tol = opt.tol;
  nopt.derivative_scale = m;
  // Seed off the real axis so that a real root is a genuine outcome.
  const RootRecord rec = newton(d, Complex(2.0 * omega, -1e-4 * m), nopt);
  r.newton_zeta = rec.Lambda - 2.0 * omega;
  r.newton_iters = rec.newton_iters;
  const Complex L = 2.0 * omega + zeta;
  r.residual = std::abs(d.f(L)) / d.scale(L);
  if (!rec.converged) throw ConvergenceError("parity-preserving model: Newton cross-check failed");
  return r;
}

PerturbationResult zeta_parity_broken(double m, double omega, double kappa, double epsilon,
                                      const PerturbationOptions& opt) {
  PerturbationResult r;
  r.model = PerturbationModel::parity_broken;
  r.m = m;
  r.omega = omega;
  r.kappa = kappa;
  r.epsilon = epsilon;
  r.regime_verified = omega >= opt.omega0_fraction * m;
  // Validates the wave (discriminant, kappa) before any continuation.
  const BrokenWave target = solve_parity_broken({m, omega}, epsilon, kappa);
  Complex L = 2.0 * omega;
  if (epsilon != 0.0) {
    TrackOptions topt;
    topt.initial_steps = std::max(1, opt.continuation_steps);
    topt.newton.tol = opt.tol;
    topt.newton.derivative_scale = m;
    topt.max_jump = 0.05;
    const TrackResult tr = track_root(broken_family(m, omega, kappa), L, 0.0, epsilon, topt);
    L = tr.path.back().Lambda;
    r.newton_iters = tr.path.back().newton_iters;
  }
  r.zeta = L - 2.0 * omega;
  r.lambda = kI * L;
  r.unstable = r.lambda.real() > 0.0;
  r.residual = std::abs(det_parity_broken(target, L)) / det_parity_broken_scale(target, L);
  return r;
}

double broken_leading_order_im_zeta(double m, double omega, double kappa, double epsilon) {
  const double mu = geometry({m, omega}).mu;
  return -4.0 * std::sqrt(2.0) * kappa * kappa * epsilon * epsilon * mu * mu * mu * m * m / omega;
}

double mu_to_omega(double m, double mu) {
  // mu^2 = (m - omega)/(m + omega).
  const double t = mu * mu;
  return m * (1.0 - t) / (1.0 + t);
}

ScalingStudy scaling_study(double m, double kappa, const std::vector<double>& omega_list,
                           const std::vector<double>& epsilon_list,
                           const PerturbationOptions& opt) {
  if (omega_list.size() * epsilon_list.size() < 3) {
    throw DomainError("scaling_study: regression degenerate (fewer than 3 points)");
  }
  ScalingStudy s;
  s.m = m;
  s.kappa = kappa;
  for (double omega : omega_list) {
    for (double eps : epsilon_list) {
      const PerturbationResult p = zeta_parity_broken(m, omega, kappa, eps, opt);
      ScalingRow row;
      row.omega = omega;
      row.epsilon = eps;
      row.mu = geometry({m, omega}).mu;
      row.zeta = p.zeta;
      row.log_eps = std::log(std::abs(eps));
      row.log_mu = std::log(row.mu);
      const double im = std::abs(p.zeta.imag());
      if (!(im > 0.0)) throw DomainError("scaling_study: Im zeta vanished; cannot take logarithms");
      row.log_abs_im_zeta = std::log(im);
      row.prefactor = im / (eps * eps * row.mu * row.mu * row.mu * m);
      row.prefactor_ratio = p.zeta.imag() / broken_leading_order_im_zeta(m, omega, kappa, eps);
      s.rows.push_back(row);
    }
  }
  auto distinct = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return std::unique(v.begin(), v.end()) - v.begin();
  };
  const bool fit_eps = distinct(epsilon_list) >= 2;
  const bool fit_mu = distinct(omega_list) >= 2;
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  for (const ScalingRow& row : s.rows) {
    std::vector<double> x{1.0};
    if (fit_eps) x.push_back(row.log_eps);
    if (fit_mu) x.push_back(row.log_mu);
    X.push_back(x);
    y.push_back(row.log_abs_im_zeta);
  }
  const std::vector<double> beta = least_squares(X, y);
  std::size_t idx = 1;
  if (fit_eps) s.slope_eps = beta[idx++];
  if (fit_mu) s.slope_mu = beta[idx++];
  return s;
}

}  // namespace pointsoler
