// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0
//
// Fate of the eigenvalues +-2 omega i under the two perturbations of the
// coupling matrix. Writing the perturbed eigenvalue as lambda = i(2 omega + zeta):
//   * parity preserving (sigma_3 + eps): zeta is real, zeta ~ 2 eps (m^2-omega^2)/m;
//   * parity breaking (sigma_3 + eps sigma_1): Im zeta < 0, i.e. Re lambda > 0,
//     with |Im zeta| scaling like eps^2 mu^3.

#pragma once

#include <optional>
#include <vector>

#include "pointsoler/core_model.hpp"

namespace pointsoler {

enum class PerturbationModel { parity_preserved, parity_broken };

const char* to_string(PerturbationModel model);

struct PerturbationOptions {
  double epsilon_bound = 0.2;   // |eps| accepted by the parity-preserving solver
  double omega0_fraction = 0.9; // validated regime omega >= omega0_fraction * m
  int continuation_steps = 10;  // epsilon continuation for the parity-breaking root
  double tol = 1e-11;           // Newton relative residual target
};

struct PerturbationResult {
  PerturbationModel model = PerturbationModel::parity_preserved;
  double m = 1.0;
  double omega = 0.0;
  double kappa = 0.0;
  double epsilon = 0.0;
  Complex zeta{0.0};
  Complex lambda{0.0};  // i (2 omega + zeta)
  bool unstable = false;  // Re lambda > 0
  double residual = 0.0;  // relative residual of the jump determinant at 2 omega + zeta
  bool regime_verified = true;
  // Parity preserving only: the far root of the squared condition, and the
  // Newton root of the determinant used as a cross-check.
  std::optional<Complex> spurious_zeta;
  std::optional<Complex> newton_zeta;
  int newton_iters = 0;
};

PerturbationResult zeta_parity_preserved(double m, double omega, double kappa, double epsilon,
                                         const PerturbationOptions& opt = {});

PerturbationResult zeta_parity_broken(double m, double omega, double kappa, double epsilon,
                                      const PerturbationOptions& opt = {});

// Leading-order imaginary shift -4 sqrt(2) kappa^2 eps^2 mu^3 m^2 / omega of the
// parity-breaking model (the limit f -> 2 mu, xi -> -2 sqrt(2) m, S_+ -> 2 m,
// Y -> 4 kappa mu of the determinant expansion).
double broken_leading_order_im_zeta(double m, double omega, double kappa, double epsilon);

struct ScalingRow {
  double omega = 0.0;
  double epsilon = 0.0;
  double mu = 0.0;
  double log_eps = 0.0;
  double log_mu = 0.0;
  double log_abs_im_zeta = 0.0;
  Complex zeta{0.0};
  double prefactor = 0.0;        // |Im zeta| / (eps^2 mu^3 m)
  double prefactor_ratio = 0.0;  // Im zeta / leading-order expression
};

struct ScalingStudy {
  double m = 1.0;
  double kappa = 0.0;
  std::vector<ScalingRow> rows;
  std::optional<double> slope_eps;  // d log|Im zeta| / d log eps
  std::optional<double> slope_mu;   // d log|Im zeta| / d log mu
};

// Least-squares fit log|Im zeta| = c + p log eps + q log mu over the grid
// omega_list x epsilon_list; a slope is reported only when its variable takes
// at least two values. Throws DomainError with fewer than 3 points.
ScalingStudy scaling_study(double m, double kappa, const std::vector<double>& omega_list,
                           const std::vector<double>& epsilon_list,
                           const PerturbationOptions& opt = {});

double mu_to_omega(double m, double mu);

}  // namespace pointsoler
