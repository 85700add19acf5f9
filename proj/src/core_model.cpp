// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointsoler/core_model.hpp"

#include <utility>

namespace pointsoler {

Nonlinearity Nonlinearity::pure_power(double kappa) {
  if (!std::isfinite(kappa)) throw DomainError("kappa must be finite");
  Nonlinearity nl;
  nl.pure_ = true;
  nl.kappa_ = kappa;
  return nl;
}

Nonlinearity Nonlinearity::custom(Fn f, Fn df) {
  if (!f || !df) throw ConfigError("custom nonlinearity needs both f and f'");
  Nonlinearity nl;
  nl.pure_ = false;
  nl.f_ = std::move(f);
  nl.df_ = std::move(df);
  return nl;
}

double Nonlinearity::kappa() const {
  require_pure_power("kappa()");
  return kappa_;
}

void Nonlinearity::require_pure_power(const char* context) const {
  if (!pure_) {
    throw ConfigError(std::string(context) + ": only the pure power nonlinearity is supported");
  }
}

double Nonlinearity::value(double tau) const {
  if (!pure_) return f_(tau);
  if (tau == 0.0 && kappa_ < 0.0) throw DomainError("f(0) is infinite for kappa < 0");
  return std::pow(std::abs(tau), kappa_);
}

FValue Nonlinearity::eval(double tau) const {
  if (!pure_) return {f_(tau), df_(tau)};
  if (tau == 0.0) {
    if (kappa_ < 1.0) throw DomainError("f'(0) is singular for kappa < 1");
    // For kappa = 1, |tau| has no derivative at 0; the symmetric choice 0 keeps f' odd.
    return {value(0.0), 0.0};
  }
  const double a = std::abs(tau);
  const double v = std::pow(a, kappa_);
  const double d = kappa_ * v / a;
  return {v, tau > 0.0 ? d : -d};
}

void require_gap(const ModelParams& params) {
  if (!(params.m > 0.0) || !std::isfinite(params.m)) throw DomainError("mass m must be positive");
  if (!std::isfinite(params.omega) || !(std::abs(params.omega) < params.m)) {
    throw DomainError("omega outside (-m, m)");
  }
}

WaveGeometry geometry(const ModelParams& params) {
  require_gap(params);
  const double m = params.m;
  const double w = params.omega;
  WaveGeometry g;
  // (m-w)(m+w) avoids the cancellation in m^2 - w^2 near the band edge.
  g.varkappa = std::sqrt((m - w) * (m + w));
  g.mu = std::sqrt((m - w) / (m + w));
  return g;
}

Complex principal_sqrt(Complex z) {
  // std::sqrt follows the sign of a signed zero imaginary part; normalize it so
  // that the cut takes its value from the upper half-plane.
  if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
  return std::sqrt(z);
}

}  // namespace pointsoler
