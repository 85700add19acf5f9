// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0
//
// Independent numerical oracle: the raw dispersion functions of the
// linearizations (with explicit square-root sheet bookkeeping) and a complex
// root finder built on the argument principle plus damped Newton polishing.
//
// Spectral points are lambda = i*Lambda. The branch quantities are
//   nu_+ = sqrt(m^2 - (omega - Lambda)^2),  nu_- = sqrt(m^2 - (omega + Lambda)^2),
//   S_+ = m - omega + Lambda,                S_- = m - omega - Lambda,
//   xi  = -sqrt((omega + Lambda)^2 - m^2)    (perturbed models, Re xi <= 0).
//   On the real cut of xi (real Lambda inside the gap) the limit from
//   Im Lambda < 0 is used, so that xi = i nu_- there.
// The principal root has Re >= 0; its cuts run along the real Lambda axis
// outward from the branch points +-(m - omega), +-(m + omega).

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pointsoler/core_model.hpp"
#include "pointsoler/solitary_waves.hpp"

namespace pointsoler {

// Sign applied to the principal root of nu_+ and nu_-; (+1, +1) is the
// physical sheet.
struct Sheet {
  int nu_plus = +1;
  int nu_minus = +1;
  bool operator==(const Sheet&) const = default;
};

struct BranchData {
  Complex nu_plus{0.0};
  Complex nu_minus{0.0};
  Complex S_plus{0.0};
  Complex S_minus{0.0};
  Complex xi{0.0};
  Sheet sheet;
};

BranchData branch_data(double m, double omega, Complex Lambda, Sheet sheet = {});

// Even-odd-even-odd compatibility function Gamma(Lambda).
Complex gamma(double m, double omega, double kappa, Complex Lambda, Sheet sheet = {});

// Gamma from explicitly supplied nu_+ and nu_- (used by uniformized variables).
Complex gamma_from_branches(double m, double omega, double kappa, Complex Lambda,
                            Complex nu_plus, Complex nu_minus);

// Sum of the moduli of the four terms of Gamma: the scale for relative residuals.
double gamma_scale(double m, double omega, double kappa, Complex Lambda, Sheet sheet = {});

// Odd-even-odd-even compatibility determinant 2i (nu_- - S_- mu)(nu_+ - S_+ mu).
Complex det_oddeven(double m, double omega, Complex Lambda);

enum class Subspace { odd_even_odd_even, even_odd_even_odd };

// 2x2 jump determinant of the parity-preserving model on a subspace.
Complex det_parity_preserved(const SolitaryWave& wave, Complex Lambda, Subspace subspace);
Complex det_parity_preserved(double m, double omega, double kappa, double epsilon,
                             Complex Lambda, Subspace subspace);

// Full 4x4 jump determinant of the parity-breaking model.
Complex det_parity_broken(const BrokenWave& wave, Complex Lambda);
Complex det_parity_broken(double m, double omega, double kappa, double epsilon, Complex Lambda);

// Hadamard bound (product of row norms) of the 4x4 matrix: the residual scale.
double det_parity_broken_scale(const BrokenWave& wave, Complex Lambda);

// Determinant of the lower-right 2x2 block (the Schur complement pivot).
Complex det_D(const BrokenWave& wave, Complex Lambda);

// Determinant of a small dense complex matrix by partial-pivot elimination.
Complex determinant(std::vector<Complex> a, int n);

// ---------------------------------------------------------------------------
// Root finding.

struct Rect {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;
};

struct Dispersion {
  std::function<Complex(Complex)> f;
  // Optional magnitude scale for the residual |f| / scale(z) (default 1).
  std::function<double(Complex)> scale;
  // Optional physical-sheet admissibility of a root (default: admissible).
  std::function<bool(Complex)> admissible;
};

struct GridSpec {
  int nx = 7;   // cells along Re (odd keeps the imaginary axis at a cell centre)
  int ny = 7;   // cells along Im for uniform spacing
  // Geometric (sinh-like) spacing of Im: symmetric bands of width
  // im_core, 2 im_core, 4 im_core, ... up to the rectangle edge.
  bool geometric_im = false;
  double im_core = 0.0;
};

struct RootFinderOptions {
  double tol = 1e-11;            // relative residual target
  double dedup = 1e-8;           // roots closer than this (times max(1,|z|)) merge
  double derivative_step = 1e-7; // relative to derivative_scale
  double derivative_scale = 1.0; // typically m
  int max_newton = 100;
  int max_depth = 60;            // cell subdivision depth
  double min_cell = 1e-13;       // cells below this size (relative) stop subdividing
  int jobs = 1;
};

struct RootRecord {
  Complex Lambda{0.0};
  Complex lambda{0.0};  // i * Lambda
  double residual = 0.0;
  Sheet sheet;
  int newton_iters = 0;
  Complex seed{0.0};
  Complex working{0.0};  // root in the working variable of a continuation family
  int multiplicity = 1;
  bool converged = false;
  bool admissible = true;
  std::string tag = "root";  // "eigenvalue", "zero", "structural", "spurious-sheet", "unconverged"
};

struct RootSearch {
  std::vector<RootRecord> roots;
  int total_winding = 0;        // winding number of the whole search region
  int unreliable_cells = 0;     // cells whose boundary passed through a zero
};

// Damped Newton with a central-difference complex derivative.
RootRecord newton(const Dispersion& d, Complex seed, const RootFinderOptions& opt);

// Winding number of f along the boundary of r (adaptive sampling). Sets
// *reliable = false when a boundary sample hits a zero.
int winding_number(const Dispersion& d, const Rect& r, bool* reliable = nullptr);

// Argument-principle scan of the grid cells of r, recursive subdivision of
// the cells with nonzero winding and Newton polishing. The interior of r must
// not intersect a branch cut of f.
RootSearch find_roots(const Dispersion& d, const Rect& r, const GridSpec& grid,
                      const RootFinderOptions& opt);

// The gap rectangle (-g + eta, g - eta) x (-H, H), g = m - |omega|.
Rect gap_rectangle(double m, double omega, double eta_rel = 1e-12, double height_rel = 1e6);

// Gamma on the physical sheet as a Dispersion (with scale and admissibility).
Dispersion gamma_dispersion(double m, double omega, double kappa);

// Roots of Gamma in a rectangle (default: the gap rectangle). A rectangle that
// crosses the real axis beyond the gap is split so that no cut lies inside a
// search region. The double zero at Lambda = 0 is divided out before the
// scan and reported as one exact record (multiplicity 2, or more when the
// eigenvalue pair merges into the origin); total_winding counts it. Zeros are
// tagged: "zero" (Lambda = 0), "structural" (+-(m - omega)), "eigenvalue"
// (other admissible roots), "spurious-sheet".
RootSearch find_gamma_roots(double m, double omega, double kappa, const Rect* rect = nullptr,
                            const RootFinderOptions* opt = nullptr);

// Nontrivial admissible Gamma roots in the gap rectangle.
std::vector<RootRecord> nontrivial_gamma_roots(double m, double omega, double kappa,
                                               const RootFinderOptions* opt = nullptr);

// ---------------------------------------------------------------------------
// Continuation.

// A one-parameter family f(p, z) in a working variable z, with the map to
// Lambda, a sheet test and the distance to the nearest threshold.
struct DispersionFamily {
  std::function<Complex(double, Complex)> f;
  std::function<Complex(double, Complex)> to_lambda;
  std::function<bool(double, Complex)> admissible;
  std::function<double(double, Complex)> threshold_distance;
  std::function<double(double, Complex)> scale;
};

struct TrackOptions {
  int initial_steps = 50;
  double min_step_fraction = 1e-6;  // of the path length
  double max_jump = 0.0;            // max |dz| per step relative to max(1,|z|); 0 = 0.25
  double threshold_event = 1e-6;    // distance that triggers a threshold event
  RootFinderOptions newton;
};

struct TrackEvent {
  double parameter = 0.0;
  std::string kind;  // "threshold" or "sheet-flip"
  RootRecord record;
};

struct TrackResult {
  std::vector<double> parameters;
  std::vector<RootRecord> path;  // Lambda values (working variable in .seed)
  std::vector<TrackEvent> events;
};

class BranchLostError : public ConvergenceError {
 public:
  BranchLostError(const std::string& what, RootRecord last, double parameter)
      : ConvergenceError(what), last_good(std::move(last)), last_parameter(parameter) {}
  RootRecord last_good;
  double last_parameter;
};

// Follows a root of the family from (p0, z0) to p1.
TrackResult track_root(const DispersionFamily& fam, Complex z0, double p0, double p1,
                       const TrackOptions& opt = {});

// Gamma in the uniformizing variable t at the upper threshold, parameter omega:
// Lambda = g - t^2 with g = m - |omega|; the vanishing root becomes
// t sqrt(2m - t^2), Re t > 0 is the physical sheet. For omega > 0 the
// structural zero at Lambda = m - omega is divided out.
DispersionFamily gamma_threshold_family(double m, double kappa);

// Gamma in s = Lambda^2 with the double zero at 0 divided out, parameter omega;
// the pair Lambda_{+-} is the root s = Lambda_+^2, which crosses 0 at Omega.
DispersionFamily gamma_square_family(double m, double kappa);

// Parity-breaking determinant in Lambda, parameter epsilon.
DispersionFamily broken_family(double m, double omega, double kappa);

}  // namespace pointsoler
