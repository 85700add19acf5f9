// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form solitary waves of the Dirac equation with a point Soler
// nonlinearity, and of its two perturbed variants:
//   * the parity-preserving model, coupling through sigma_3 + epsilon*I,
//   * the parity-breaking model, coupling through sigma_3 + epsilon*sigma_1.

#pragma once

#include <array>

#include "pointsoler/core_model.hpp"

namespace pointsoler {

enum class WaveFamily {
  Type1,            // (alpha, alpha*mu*sgn x) e^{-varkappa|x|},  f(alpha^2) = 2 mu
  Type2,            // (beta/mu*sgn x, beta) e^{-varkappa|x|},     f(-beta^2) = 2/mu
  ZeroFreq,         // (a + b sgn x, b + a sgn x) e^{-m|x|} at omega = 0
  ParityPreserved,  // Type1 shape, (1+eps) f((1+eps) alpha^2) = 2 mu
  ParityBroken,     // alpha (1, mu sgn x) + beta (sgn x, mu), both times e^{-varkappa|x|}
};

const char* to_string(WaveFamily family);

using Spinor = std::array<Complex, 2>;

struct SolitaryWave {
  WaveFamily family = WaveFamily::Type1;
  ModelParams params;
  WaveGeometry geometry;
  double alpha = 0.0;    // Type1/ParityPreserved/ParityBroken amplitude
  double beta = 0.0;     // Type2 amplitude, or the odd admixture of ParityBroken
  double epsilon = 0.0;  // perturbation strength (perturbed families only)
  double tau = 0.0;      // argument of f at the wave
  double f_at_wave = 0.0;
  double g_at_wave = 0.0;  // f'(tau)
  Complex a{0.0}, b{0.0};  // ZeroFreq amplitudes
};

// Coupling constants of the linearization of the parity-breaking model.
struct BrokenWaveConstants {
  double X = 0.0;
  double Y = 0.0;
  double Z = 0.0;
  double F = 0.0;  // f + Y
  double tau = 0.0;
  double beta_over_epsilon = 0.0;  // smooth through epsilon = 0
};

struct BrokenWave {
  SolitaryWave wave;
  BrokenWaveConstants constants;
};

// Type1 wave; pure power alpha = (2 mu)^{1/(2 kappa)}, custom f by bisection.
SolitaryWave solve_amplitude_type1(const ModelParams& params, const Nonlinearity& nl);

// Type2 wave; pure power beta = (2/mu)^{1/(2 kappa)}, custom f by bisection.
SolitaryWave solve_amplitude_type2(const ModelParams& params, const Nonlinearity& nl);

// omega = 0 wave with caller-supplied (a, b); requires f(|a|^2 - |b|^2) = 2.
SolitaryWave make_zero_frequency(double m, const Nonlinearity& nl, Complex a, Complex b);

// Profile at x; at x = 0 the mean of the one-sided limits.
Spinor profile(const SolitaryWave& wave, double x);

// One-sided limit at the origin: side = +1 for 0+, -1 for 0-.
Spinor profile_limit(const SolitaryWave& wave, int side);

// Max-norm residual of the jump condition at the origin for the model the
// wave belongs to.
double jump_residual(const SolitaryWave& wave, const Nonlinearity& nl);

// Squared L^2 norm of the profile.
double charge_Q(const SolitaryWave& wave);

// d Q / d omega along the Type1 family:
//   (2 m alpha^2 / ((m+omega) varkappa^3)) (-m/kappa - m + 2 omega),
// with kappa = tau f'(tau)/f(tau) at the wave (the exponent for a pure power).
double dQ_domega(const ModelParams& params, const Nonlinearity& nl);

// Parity-preserving wave; pure power alpha^2 = (2mu/(1+eps))^{1/kappa}/(1+eps).
SolitaryWave solve_parity_preserved(const ModelParams& params, const Nonlinearity& nl,
                                    double epsilon);

// Parity-breaking wave for the pure power |tau|^kappa.
BrokenWave solve_parity_broken(const ModelParams& params, double epsilon, double kappa);

}  // namespace pointsoler
