// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0
//
// Model parameters, the nonlinearity and the elementary decay quantities
// shared by every other part of the library.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace pointsoler {

using Complex = std::complex<double>;

// Error taxonomy. Every routine reports failures by throwing one of these.

// An input lies outside the mathematical domain of the routine.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The combination of options is not supported (e.g. custom f in a perturbed model).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An equation that should define a quantity has no solution.
class NoSolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative method exhausted its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Mass m > 0 and frequency omega of a solitary wave.
struct ModelParams {
  double m = 1.0;
  double omega = 0.0;
};

// Decay data of a localized wave: mu = sqrt((m-omega)/(m+omega)) and
// varkappa = sqrt(m^2 - omega^2); note mu*(m+omega) = varkappa.
struct WaveGeometry {
  double mu = 0.0;
  double varkappa = 0.0;
};

struct FValue {
  double value = 0.0;
  double derivative = 0.0;
};

// The scalar nonlinearity f. Either the pure power f(tau) = |tau|^kappa or a
// user-supplied differentiable pair (f, f').
class Nonlinearity {
 public:
  using Fn = std::function<double(double)>;

  static Nonlinearity pure_power(double kappa);
  static Nonlinearity custom(Fn f, Fn df);

  bool is_pure_power() const { return pure_; }
  // Exponent of the pure power; throws ConfigError for a custom f.
  double kappa() const;
  // Throws ConfigError unless this is a pure power.
  void require_pure_power(const char* context) const;

  double value(double tau) const;
  // Value and derivative; the derivative of |tau|^kappa is odd in tau.
  FValue eval(double tau) const;

 private:
  bool pure_ = true;
  double kappa_ = 1.0;
  Fn f_;
  Fn df_;
};

// Throws DomainError unless m > 0 and |omega| < m.
void require_gap(const ModelParams& params);

// mu and varkappa for |omega| < m.
WaveGeometry geometry(const ModelParams& params);

// Negative exponents lie outside the known well-posedness theory; spectral
// routines accept them but report this flag in their metadata.
inline bool kappa_outside_wellposedness(double kappa) { return kappa < 0.0; }

// Principal square root with the value on the negative real axis taken as the
// limit from the upper half-plane (Re sqrt >= 0 always).
Complex principal_sqrt(Complex z);

}  // namespace pointsoler
