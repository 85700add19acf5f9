// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form spectral data of the linearization A(omega, kappa) at the Type1
// solitary wave of the pure-power point Soler model: thresholds, virtual
// levels, the eigenvalue pair Lambda_{+-}, multiplicities of zero and the
// stability region classification.
//
// Conventions: eigenvalues are written lambda = i*Lambda. Real Lambda gives a
// purely imaginary (stable) lambda inside the gap; imaginary Lambda gives a
// real pair lambda and linear instability.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pointsoler/core_model.hpp"

namespace pointsoler {

// A threshold formula value with its definedness and whether it is an
// interior point of the frequency range (-m, m) in the sense of the case list.
struct ThresholdValue {
  double value = 0.0;
  bool defined = false;  // false at the excluded kappa (denominator zero)
  bool valid = false;
};

struct Thresholds {
  ThresholdValue T_minus;    // m(k+1)^2/((k+2)k),  valid for k in (-2^{-1/2}-1, 2^{-1/2}-1)
  ThresholdValue T_plus;     // m(k+1)^2/((3k+2)k), valid for |k| > 2^{-1/2}
  ThresholdValue Omega;      // m(k+1)/(2k),        valid for k outside [-1/3, 1]
  ThresholdValue TwoOmega;   // 2 Omega,            valid for k < -1/2
  ThresholdValue W;          // m(2k^2+2k+1)/(2k(k+1)); never inside (-m, m)
};

Thresholds thresholds(double m, double kappa);

// Point spectrum of L(omega, kappa) = D_m - omega - delta (sigma_3 + 2 kappa Pi_1)
// scaled by 2 mu, on the odd-even and even-odd subspaces.
struct LPointSpectrum {
  double odd_even = 0.0;   // -2 omega
  double even_odd = 0.0;   // Z(omega, kappa)
  // The unsquared jump relation behind Z requires 1 + 2 kappa > 0; for
  // 1 + 2 kappa <= 0 the value Z is a root of the squared relation only.
  bool even_odd_jump_consistent = true;
};

LPointSpectrum L_point_spectrum(double m, double omega, double kappa);

struct QuarticCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

QuarticCoeffs quartic_coeffs(double m, double omega, double kappa);

// (kappa+1)(m(kappa+1)-2 kappa omega)(m(2 kappa^2+2 kappa+1)-2 kappa(kappa+1) omega),
// which equals b^2 + a c.
double discriminant_factored(double m, double omega, double kappa);

// X_{+-} = (b +- sqrt(b^2 + a c))/a, principal root. Throws DomainError if a = 0.
std::pair<Complex, Complex> roots_X(const QuarticCoeffs& q);

// X^2 = (1 - Lambda/(m-omega)) / (1 + Lambda/(m+omega)), principal root.
Complex X_of_Lambda(double m, double omega, Complex Lambda);
// Lambda = (1 - X^2) / (1/(m-omega) + X^2/(m+omega)).
Complex Lambda_of_X(double m, double omega, Complex X);

enum class PairKind { none, gap, real_pair };

const char* to_string(PairKind kind);

struct LambdaPM {
  Complex plus{0.0};
  Complex minus{0.0};
  bool exists = false;
  PairKind kind = PairKind::none;
};

// Lambda_{+-} = +-((m^2-omega^2)/(2 Omega - omega)) sqrt((Omega - omega)/(W - omega)).
// Throws DomainError for kappa in {-1, 0} or omega = 2 Omega.
LambdaPM lambda_pm(double m, double omega, double kappa);

// The raw formula value (no existence decision).
Complex lambda_plus_formula(double m, double omega, double kappa);

struct VirtualLevel {
  double omega = 0.0;
  double threshold = 0.0;     // the threshold point on the imaginary lambda axis: m - |omega|
  std::string branch;         // "m-omega" (upper edge) or "m+omega"
};

std::vector<VirtualLevel> virtual_levels(double m, double kappa);

// ---------------------------------------------------------------------------
// Spectral classification of a solitary wave.

enum class EigenTag { zero, pm2omega, gap_imaginary, real_unstable, embedded };

const char* to_string(EigenTag tag);

struct Eigenvalue {
  Complex lambda{0.0};
  EigenTag tag = EigenTag::zero;
  int algebraic_multiplicity = 1;
  int geometric_multiplicity = 1;
};

struct EssentialSpectrum {
  bool whole_plane = false;
  // Essential spectrum i(R \ (-gap_edge, gap_edge)) with gap_edge = m - |omega|.
  double gap_edge = 0.0;
  std::string description;
};

// One region of the (kappa, omega) classification: the case letter, the eigenvalue kind in
// the open interval containing omega, and boundary markers.
struct RegionInfo {
  char case_letter = 'd';
  PairKind kind = PairKind::none;
  bool whole_plane = false;   // (omega, kappa) = (0, -1)
  bool boundary = false;      // omega on one of the interval endpoints
  std::vector<std::string> boundary_flags;  // "kolokolov", "virtual-level", "blow-up"
  std::string code;           // e.g. "4f-real", "4e-gap", "4d-none", "4b", "4f-boundary"
};

// Boundary tolerance, relative to m.
inline constexpr double kBoundaryTol = 1e-12;

RegionInfo region(double m, double omega, double kappa);

struct SpectralClassification {
  double m = 1.0;
  double omega = 0.0;
  double kappa = 0.0;
  RegionInfo region;
  std::vector<Eigenvalue> eigenvalues;
  int kernel_dim = 1;
  int alg_mult_zero = 2;
  EssentialSpectrum essential;
  bool spectrally_stable = true;
  bool kappa_outside_wellposedness = false;
  bool threshold_embedded = false;  // |omega| = m/3 exactly
  Thresholds thresholds;
};

int kernel_dim(double m, double omega, double kappa);
int alg_mult_zero(double m, double omega, double kappa);

SpectralClassification classify(double m, double omega, double kappa);

}  // namespace pointsoler
