// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointsoler/solitary_waves.hpp"

#include <algorithm>
#include <cmath>

namespace pointsoler {
namespace {

// Solves f(s) = target for s > 0 (sign = +1) or f(-s) = target (sign = -1),
// assuming monotonicity of s -> f(sign*s) on (0, inf). Works in log s.
double solve_positive(const Nonlinearity& nl, double target, int sign) {
  auto resid = [&](double ls) { return nl.value(sign * std::exp(ls)) - target; };
  double lo = 0.0;
  double hi = 0.0;
  const double r0 = resid(0.0);
  if (r0 == 0.0) return 1.0;
  // Expand geometrically in log s until the residual changes sign.
  bool found = false;
  for (double step = 0.5; step < 700.0; step *= 2.0) {
    for (double ls : {step, -step}) {
      const double r = resid(ls);
      if (std::isfinite(r) && (r == 0.0 || (r > 0.0) != (r0 > 0.0))) {
        lo = std::min(0.0, ls);
        hi = std::max(0.0, ls);
        found = true;
        break;
      }
    }
    if (found) break;
  }
  if (!found) throw NoSolutionError("f never attains the required value on (0, inf)");
  double rlo = resid(lo);
  for (int it = 0; it < 400 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double rm = resid(mid);
    if (rm == 0.0) return std::exp(mid);
    if ((rm > 0.0) == (rlo > 0.0)) {
      lo = mid;
      rlo = rm;
    } else {
      hi = mid;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

void fill_f(SolitaryWave& w, const Nonlinearity& nl) {
  const FValue fv = nl.eval(w.tau);
  w.f_at_wave = fv.value;
  w.g_at_wave = fv.derivative;
}

}  // namespace

const char* to_string(WaveFamily family) {
  switch (family) {
    case WaveFamily::Type1: return "type1";
    case WaveFamily::Type2: return "type2";
    case WaveFamily::ZeroFreq: return "zero_frequency";
    case WaveFamily::ParityPreserved: return "parity_preserved";
    case WaveFamily::ParityBroken: return "parity_broken";
  }
  return "unknown";
}

SolitaryWave solve_amplitude_type1(const ModelParams& params, const Nonlinearity& nl) {
  SolitaryWave w;
  w.family = WaveFamily::Type1;
  w.params = params;
  w.geometry = geometry(params);
  const double target = 2.0 * w.geometry.mu;
  double s = 0.0;
  if (nl.is_pure_power()) {
    const double k = nl.kappa();
    if (k == 0.0) throw NoSolutionError("f = 1 cannot equal 2 mu for kappa = 0");
    s = std::pow(target, 1.0 / k);
  } else {
    s = solve_positive(nl, target, +1);
  }
  w.alpha = std::sqrt(s);
  w.tau = s;
  fill_f(w, nl);
  return w;
}

SolitaryWave solve_amplitude_type2(const ModelParams& params, const Nonlinearity& nl) {
  SolitaryWave w;
  w.family = WaveFamily::Type2;
  w.params = params;
  w.geometry = geometry(params);
  const double target = 2.0 / w.geometry.mu;
  double s = 0.0;
  if (nl.is_pure_power()) {
    const double k = nl.kappa();
    if (k == 0.0) throw NoSolutionError("f = 1 cannot equal 2/mu for kappa = 0");
    s = std::pow(target, 1.0 / k);
  } else {
    s = solve_positive(nl, target, -1);
  }
  w.beta = std::sqrt(s);
  w.tau = -s;
  fill_f(w, nl);
  return w;
}

SolitaryWave make_zero_frequency(double m, const Nonlinearity& nl, Complex a, Complex b) {
  SolitaryWave w;
  w.family = WaveFamily::ZeroFreq;
  w.params = {m, 0.0};
  w.geometry = geometry(w.params);
  w.a = a;
  w.b = b;
  w.tau = std::norm(a) - std::norm(b);
  w.f_at_wave = nl.value(w.tau);
  if (std::abs(w.f_at_wave - 2.0) > 1e-12) {
    throw DomainError("zero-frequency amplitudes must satisfy f(|a|^2 - |b|^2) = 2");
  }
  const FValue fv = w.tau != 0.0 ? nl.eval(w.tau) : FValue{w.f_at_wave, 0.0};
  w.g_at_wave = fv.derivative;
  return w;
}

Spinor profile_limit(const SolitaryWave& w, int side) {
  const double s = side >= 0 ? 1.0 : -1.0;
  const double mu = w.geometry.mu;
  switch (w.family) {
    case WaveFamily::Type1:
    case WaveFamily::ParityPreserved:
      return {Complex(w.alpha), Complex(w.alpha * mu * s)};
    case WaveFamily::Type2:
      return {Complex(w.beta / mu * s), Complex(w.beta)};
    case WaveFamily::ZeroFreq:
      return {w.a + w.b * s, w.b + w.a * s};
    case WaveFamily::ParityBroken:
      return {Complex(w.alpha + w.beta * s), Complex(w.alpha * mu * s + w.beta * mu)};
  }
  return {};
}

Spinor profile(const SolitaryWave& w, double x) {
  if (x == 0.0) {
    const Spinor p = profile_limit(w, +1);
    const Spinor q = profile_limit(w, -1);
    return {0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
  }
  const double rate = w.family == WaveFamily::ZeroFreq ? w.params.m : w.geometry.varkappa;
  const double decay = std::exp(-rate * std::abs(x));
  Spinor v = profile_limit(w, x > 0.0 ? +1 : -1);
  return {v[0] * decay, v[1] * decay};
}

double jump_residual(const SolitaryWave& w, const Nonlinearity& nl) {
  // i sigma_2 [psi]_0 = f(psi^* M psi) M psi, psi the mean value at 0, with
  // M = sigma_3 (unperturbed), sigma_3 + eps (parity preserving) or
  // sigma_3 + eps sigma_1 (parity breaking).
  const Spinor p = profile_limit(w, +1);
  const Spinor q = profile_limit(w, -1);
  const Spinor jump = {p[0] - q[0], p[1] - q[1]};
  const Spinor hat = {0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])};
  const double e = w.epsilon;
  double M[2][2] = {{1.0, 0.0}, {0.0, -1.0}};
  if (w.family == WaveFamily::ParityPreserved) {
    M[0][0] += e;
    M[1][1] += e;
  } else if (w.family == WaveFamily::ParityBroken) {
    M[0][1] = e;
    M[1][0] = e;
  }
  const Complex Mh0 = M[0][0] * hat[0] + M[0][1] * hat[1];
  const Complex Mh1 = M[1][0] * hat[0] + M[1][1] * hat[1];
  const double tau = (std::conj(hat[0]) * Mh0 + std::conj(hat[1]) * Mh1).real();
  const double f = nl.value(tau);
  // i sigma_2 = [[0, 1], [-1, 0]].
  const Complex r0 = jump[1] - f * Mh0;
  const Complex r1 = -jump[0] - f * Mh1;
  return std::max(std::abs(r0), std::abs(r1));
}

double charge_Q(const SolitaryWave& w) {
  const double mu2 = w.geometry.mu * w.geometry.mu;
  const double k = w.geometry.varkappa;
  switch (w.family) {
    case WaveFamily::Type1:
    case WaveFamily::ParityPreserved:
      return w.alpha * w.alpha * (1.0 + mu2) / k;
    case WaveFamily::Type2:
      return w.beta * w.beta * (1.0 + 1.0 / mu2) / k;
    case WaveFamily::ZeroFreq:
      return 2.0 * (std::norm(w.a) + std::norm(w.b)) / w.params.m;
    case WaveFamily::ParityBroken:
      return (w.alpha * w.alpha + w.beta * w.beta) * (1.0 + mu2) / k;
  }
  return 0.0;
}

double dQ_domega(const ModelParams& params, const Nonlinearity& nl) {
  const SolitaryWave w = solve_amplitude_type1(params, nl);
  double kappa = 0.0;
  if (nl.is_pure_power()) {
    kappa = nl.kappa();
  } else {
    kappa = w.tau * w.g_at_wave / w.f_at_wave;
  }
  if (kappa == 0.0) throw DomainError("dQ/domega is undefined for kappa = 0");
  const double m = params.m;
  const double om = params.omega;
  const double k = w.geometry.varkappa;
  const double a2 = w.alpha * w.alpha;
  return 2.0 * m * a2 / ((m + om) * k * k * k) * (-m / kappa - m + 2.0 * om);
}

SolitaryWave solve_parity_preserved(const ModelParams& params, const Nonlinearity& nl,
                                    double epsilon) {
  if (!(1.0 + epsilon > 0.0)) throw DomainError("parity-preserving model needs 1 + epsilon > 0");
  SolitaryWave w;
  w.family = WaveFamily::ParityPreserved;
  w.params = params;
  w.geometry = geometry(params);
  w.epsilon = epsilon;
  const double target = 2.0 * w.geometry.mu / (1.0 + epsilon);
  double s = 0.0;  // s = tau = (1+eps) alpha^2
  if (nl.is_pure_power()) {
    const double k = nl.kappa();
    if (k == 0.0) throw NoSolutionError("f = 1 cannot equal 2 mu/(1+eps) for kappa = 0");
    s = std::pow(target, 1.0 / k);
  } else {
    s = solve_positive(nl, target, +1);
  }
  w.tau = s;
  w.alpha = std::sqrt(s / (1.0 + epsilon));
  fill_f(w, nl);
  return w;
}

BrokenWave solve_parity_broken(const ModelParams& params, double epsilon, double kappa) {
  if (kappa == 0.0) throw DomainError("parity-breaking model needs kappa != 0");
  BrokenWave out;
  SolitaryWave& w = out.wave;
  w.family = WaveFamily::ParityBroken;
  w.params = params;
  w.geometry = geometry(params);
  w.epsilon = epsilon;
  const double mu = w.geometry.mu;
  const double mu2 = mu * mu;
  const double e2 = epsilon * epsilon;
  // Compatibility of the 2x2 jump system:
  //   mu (1+eps^2) f^2 - 2 (1+mu^2) f + 4 mu = 0,  smaller root.
  const double disc = 1.0 - 2.0 * mu2 + mu2 * mu2 - 4.0 * mu2 * e2;
  if (disc < 0.0) throw DomainError("parity-breaking wave: negative discriminant (epsilon*mu too large)");
  // Cancellation-free form of (1 + mu^2 - sqrt(disc)) / ((1 + eps^2) mu).
  const double f = 4.0 * mu / (1.0 + mu2 + std::sqrt(disc));
  if (!(2.0 - f * mu > 0.0)) throw DomainError("parity-breaking wave: degenerate jump system");
  // Second row: f eps alpha + (2 - f mu) beta = 0.
  const double beta_over_eps_alpha = -f / (2.0 - f * mu);
  const double r = epsilon * beta_over_eps_alpha;  // beta / alpha
  // tau = alpha^2 + 2 eps alpha beta mu - beta^2 mu^2 = alpha^2 (1 + 2 eps r mu - r^2 mu^2),
  // and |tau|^kappa = f with tau > 0 on this branch.
  const double shape = 1.0 + 2.0 * epsilon * r * mu - r * r * mu2;
  if (!(shape > 0.0)) throw DomainError("parity-breaking wave: tau is not positive");
  const double tau = std::pow(f, 1.0 / kappa);
  const double alpha = std::sqrt(tau / shape);
  w.alpha = alpha;
  w.beta = r * alpha;
  w.tau = tau;
  w.f_at_wave = f;
  w.g_at_wave = kappa * f / tau;

  BrokenWaveConstants& c = out.constants;
  c.tau = tau;
  c.beta_over_epsilon = beta_over_eps_alpha * alpha;
  const double g = w.g_at_wave;
  const double u = alpha + epsilon * w.beta * mu;   // alpha + eps beta mu
  const double v = alpha - c.beta_over_epsilon * mu;  // alpha - beta mu / eps
  c.X = 2.0 * u * u * g;
  c.Y = 2.0 * u * v * g;
  c.Z = 2.0 * v * v * g;
  c.F = f + c.Y;
  return out;
}

}  // namespace pointsoler
