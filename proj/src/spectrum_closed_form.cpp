// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointsoler/spectrum_closed_form.hpp"

#include <algorithm>
#include <cmath>

namespace pointsoler {
namespace {

ThresholdValue ratio(double num, double den) {
  ThresholdValue t;
  if (den == 0.0) return t;
  t.value = num / den;
  t.defined = std::isfinite(t.value);
  return t;
}

struct Interval {
  double lo;
  double hi;
  PairKind kind;
};

struct Endpoint {
  double value;
  const char* flag;
};

}  // namespace

Thresholds thresholds(double m, double k) {
  if (!(m > 0.0)) throw DomainError("mass m must be positive");
  Thresholds t;
  const double k1 = k + 1.0;
  t.T_minus = ratio(m * k1 * k1, (k + 2.0) * k);
  t.T_minus.valid = t.T_minus.defined && k > -kInvSqrt2 - 1.0 && k < kInvSqrt2 - 1.0;
  t.T_plus = ratio(m * k1 * k1, (3.0 * k + 2.0) * k);
  t.T_plus.valid = t.T_plus.defined && std::abs(k) > kInvSqrt2;
  t.Omega = ratio(m * k1, 2.0 * k);
  t.Omega.valid = t.Omega.defined && (k < -1.0 / 3.0 || k > 1.0);
  t.TwoOmega = ratio(m * k1, k);
  t.TwoOmega.valid = t.TwoOmega.defined && k < -0.5;
  t.W = ratio(m * (2.0 * k * k + 2.0 * k + 1.0), 2.0 * k * k1);
  t.W.valid = false;
  return t;
}

LPointSpectrum L_point_spectrum(double m, double omega, double k) {
  const WaveGeometry g = geometry({m, omega});
  LPointSpectrum s;
  s.odd_even = -2.0 * omega;
  const double c = 1.0 + 2.0 * k;
  s.even_odd = -4.0 * (m - omega) * k * (k + 1.0) / (1.0 + c * c * g.mu * g.mu);
  s.even_odd_jump_consistent = c > 0.0;
  return s;
}

QuarticCoeffs quartic_coeffs(double m, double omega, double k) {
  const double k1 = k + 1.0;
  QuarticCoeffs q;
  q.a = m * k1 * k1 - omega * k * (k + 2.0);
  q.b = k * (m * k1 - omega * k);
  q.c = m * k1 * k1 - omega * k * (3.0 * k + 2.0);
  return q;
}

double discriminant_factored(double m, double omega, double k) {
  const double k1 = k + 1.0;
  return k1 * (m * k1 - 2.0 * k * omega) *
         (m * (2.0 * k * k + 2.0 * k + 1.0) - 2.0 * k * k1 * omega);
}

std::pair<Complex, Complex> roots_X(const QuarticCoeffs& q) {
  if (q.a == 0.0) throw DomainError("roots_X: leading coefficient a vanishes");
  const double disc = q.b * q.b + q.a * q.c;
  const Complex s = principal_sqrt(Complex(disc));
  if (disc <= 0.0 || q.b == 0.0) return {(q.b + s) / q.a, (q.b - s) / q.a};
  // Real distinct roots: take the root without cancellation from the formula
  // and the other one from the product X_+ X_- = -c/a.
  const double big = q.b + std::copysign(s.real(), q.b);
  const Complex x_big = big / q.a;
  const Complex x_small = -q.c / big;
  return q.b > 0.0 ? std::pair<Complex, Complex>{x_big, x_small}
                   : std::pair<Complex, Complex>{x_small, x_big};
}

Complex X_of_Lambda(double m, double omega, Complex L) {
  const Complex den = 1.0 + L / (m + omega);
  if (den == 0.0) throw DomainError("X_of_Lambda: pole at Lambda = -m - omega");
  return principal_sqrt((1.0 - L / (m - omega)) / den);
}

Complex Lambda_of_X(double m, double omega, Complex X) {
  const Complex X2 = X * X;
  const Complex den = 1.0 / (m - omega) + X2 / (m + omega);
  if (den == 0.0) throw DomainError("Lambda_of_X: pole at X^2 = -(m+omega)/(m-omega)");
  return (1.0 - X2) / den;
}

const char* to_string(PairKind kind) {
  switch (kind) {
    case PairKind::none: return "none";
    case PairKind::gap: return "gap";
    case PairKind::real_pair: return "real";
  }
  return "none";
}

Complex lambda_plus_formula(double m, double omega, double k) {
  if (k == 0.0 || k == -1.0) throw DomainError("Lambda_pm is undefined for kappa in {-1, 0}");
  const Thresholds t = thresholds(m, k);
  const double den = t.TwoOmega.value - omega;
  if (den == 0.0) throw DomainError("Lambda_pm has a pole at omega = 2 Omega");
  const double pre = (m - omega) * (m + omega) / den;
  const double r = (t.Omega.value - omega) / (t.W.value - omega);
  return pre * principal_sqrt(Complex(r));
}

LambdaPM lambda_pm(double m, double omega, double k) {
  require_gap({m, omega});
  LambdaPM out;
  const Complex L = lambda_plus_formula(m, omega, k);
  out.plus = L;
  out.minus = -L;
  const RegionInfo r = region(m, omega, k);
  out.kind = r.boundary ? PairKind::none : r.kind;
  out.exists = out.kind != PairKind::none;
  return out;
}

std::vector<VirtualLevel> virtual_levels(double m, double k) {
  std::vector<VirtualLevel> out;
  const Thresholds t = thresholds(m, k);
  if ((k < -1.0 || k > kInvSqrt2) && t.T_plus.valid) {
    out.push_back({t.T_plus.value, m - t.T_plus.value, "m-omega"});
  }
  if (k > -1.0 && k < kInvSqrt2 - 1.0 && t.T_minus.valid) {
    out.push_back({t.T_minus.value, m + t.T_minus.value, "m+omega"});
  }
  return out;
}

RegionInfo region(double m, double omega, double k) {
  require_gap({m, omega});
  const double tol = kBoundaryTol * m;
  const Thresholds t = thresholds(m, k);
  RegionInfo info;
  std::vector<Interval> iv;
  std::vector<Endpoint> ends;

  if (k < -1.0) {
    info.case_letter = 'a';
    iv = {{t.T_plus.value, t.Omega.value, PairKind::gap},
          {t.Omega.value, t.TwoOmega.value, PairKind::real_pair}};
    ends = {{t.T_plus.value, "virtual-level"}, {t.Omega.value, "kolokolov"},
            {t.TwoOmega.value, "blow-up"}};
  } else if (k == -1.0) {
    info.case_letter = 'b';
    if (std::abs(omega) <= tol) {
      info.whole_plane = true;
      info.code = "4b";
    } else {
      info.code = "4b-none";
    }
    return info;
  } else if (k < kInvSqrt2 - 1.0) {
    info.case_letter = 'c';
    const double lo = std::max(t.TwoOmega.value, -m);
    const double mid = std::max(t.Omega.value, -m);
    iv = {{lo, mid, PairKind::real_pair}, {mid, t.T_minus.value, PairKind::gap}};
    ends = {{t.TwoOmega.value, "blow-up"}, {t.Omega.value, "kolokolov"},
            {t.T_minus.value, "virtual-level"}};
  } else if (k <= kInvSqrt2) {
    info.case_letter = 'd';
  } else if (k <= 1.0) {
    info.case_letter = 'e';
    iv = {{t.T_plus.value, m, PairKind::gap}};
    ends = {{t.T_plus.value, "virtual-level"}};
  } else {
    info.case_letter = 'f';
    const double mid = std::min(t.Omega.value, m);
    iv = {{t.T_plus.value, mid, PairKind::gap}, {mid, m, PairKind::real_pair}};
    ends = {{t.T_plus.value, "virtual-level"}, {t.Omega.value, "kolokolov"}};
  }

  for (const Endpoint& e : ends) {
    if (std::abs(e.value) < m && std::abs(omega - e.value) <= tol) {
      info.boundary = true;
      info.boundary_flags.emplace_back(e.flag);
    }
  }
  std::string prefix = std::string("4") + info.case_letter;
  if (info.boundary) {
    info.code = prefix + "-boundary";
    return info;
  }
  for (const Interval& i : iv) {
    if (omega > i.lo && omega < i.hi) {
      info.kind = i.kind;
      break;
    }
  }
  info.code = prefix + "-" + to_string(info.kind);
  return info;
}

int kernel_dim(double m, double omega, double k) {
  require_gap({m, omega});
  const bool special = (k == -1.0 || k == 0.0);
  const bool zero_freq = std::abs(omega) <= kBoundaryTol * m;
  if (!zero_freq) return special ? 2 : 1;
  return special ? 4 : 3;
}

int alg_mult_zero(double m, double omega, double k) {
  require_gap({m, omega});
  const double tol = kBoundaryTol * m;
  const bool zero_freq = std::abs(omega) <= tol;
  if (k == -1.0 && zero_freq) return 6;
  if (k == 0.0) return 4;
  // At omega = 0 the odd-even-odd-even block adds a semisimple pair to the
  // Jordan block of the even-odd-even-odd subspace.
  if (zero_freq) return 4;
  const Thresholds t = thresholds(m, k);
  if (k != -1.0 && t.Omega.valid && std::abs(omega - t.Omega.value) <= tol) return 4;
  return 2;
}

const char* to_string(EigenTag tag) {
  switch (tag) {
    case EigenTag::zero: return "zero";
    case EigenTag::pm2omega: return "pm2omega";
    case EigenTag::gap_imaginary: return "gap_imaginary";
    case EigenTag::real_unstable: return "real_unstable";
    case EigenTag::embedded: return "embedded";
  }
  return "zero";
}

SpectralClassification classify(double m, double omega, double k) {
  require_gap({m, omega});
  const double tol = kBoundaryTol * m;
  SpectralClassification c;
  c.m = m;
  c.omega = omega;
  c.kappa = k;
  c.thresholds = thresholds(m, k);
  c.region = region(m, omega, k);
  c.kernel_dim = kernel_dim(m, omega, k);
  c.alg_mult_zero = alg_mult_zero(m, omega, k);
  c.kappa_outside_wellposedness = kappa_outside_wellposedness(k);

  const double gap_edge = m - std::abs(omega);
  c.essential.gap_edge = gap_edge;
  c.essential.whole_plane = c.region.whole_plane;
  c.essential.description = c.region.whole_plane ? "whole-plane" : "imaginary-axis-outside-gap";

  c.eigenvalues.push_back({Complex(0.0), EigenTag::zero, c.alg_mult_zero, c.kernel_dim});

  const bool zero_freq = std::abs(omega) <= tol;
  if (!zero_freq) {
    c.threshold_embedded = std::abs(std::abs(omega) - m / 3.0) <= tol;
    const bool embedded = !c.threshold_embedded && std::abs(omega) > m / 3.0;
    const EigenTag tag = embedded ? EigenTag::embedded : EigenTag::pm2omega;
    c.eigenvalues.push_back({Complex(0.0, 2.0 * omega), tag, 1, 1});
    c.eigenvalues.push_back({Complex(0.0, -2.0 * omega), tag, 1, 1});
  }

  if (c.region.kind != PairKind::none && !c.region.boundary) {
    const double mag = std::abs(lambda_plus_formula(m, omega, k));
    if (c.region.kind == PairKind::gap) {
      c.eigenvalues.push_back({Complex(0.0, mag), EigenTag::gap_imaginary, 1, 1});
      c.eigenvalues.push_back({Complex(0.0, -mag), EigenTag::gap_imaginary, 1, 1});
    } else {
      c.eigenvalues.push_back({Complex(mag, 0.0), EigenTag::real_unstable, 1, 1});
      c.eigenvalues.push_back({Complex(-mag, 0.0), EigenTag::real_unstable, 1, 1});
    }
  }

  c.spectrally_stable = !c.region.whole_plane;
  for (const Eigenvalue& e : c.eigenvalues) {
    if (e.lambda.real() > 0.0) c.spectrally_stable = false;
  }
  return c;
}

}  // namespace pointsoler
