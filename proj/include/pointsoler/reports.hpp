// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0
//
// Serialization of results (schema version 1) and the parameter-plane sweep
// behind the stability diagram. Floating point values are always written with
// "%.12e", objects keep a fixed field order, and CSV uses LF line endings, so
// identical inputs give byte-identical files.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pointsoler/dispersion_rootfinder.hpp"
#include "pointsoler/perturbation_analysis.hpp"
#include "pointsoler/solitary_waves.hpp"
#include "pointsoler/spectrum_closed_form.hpp"

namespace pointsoler {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// "%.12e" formatting.
std::string format_e(double x);

// Canonical pretty-printed JSON (2-space indent, %.12e floats, LF, trailing newline).
std::string canonical_json(const Json& j);

Json to_json(const SpectralClassification& c);
Json to_json(const RootRecord& r, double m);
Json to_json(const RootSearch& s, double m);
Json to_json(const PerturbationResult& p);
Json to_json(const ScalingStudy& s);
Json to_json(const SolitaryWave& w);
Json to_json(const Thresholds& t);

// Parameter-plane grid "kmin:kmax:n,wmin:wmax:n"; cell centres are used, so
// the endpoints themselves are never evaluated.
struct PlaneGrid {
  double kappa_min = -2.0;
  double kappa_max = 2.0;
  int n_kappa = 400;
  double omega_min = -1.0;
  double omega_max = 1.0;
  int n_omega = 400;

  double kappa_at(int i) const { return kappa_min + (i + 0.5) * (kappa_max - kappa_min) / n_kappa; }
  double omega_at(int j) const { return omega_min + (j + 0.5) * (omega_max - omega_min) / n_omega; }
  double dkappa() const { return (kappa_max - kappa_min) / n_kappa; }
  double domega() const { return (omega_max - omega_min) / n_omega; }
};

// Parses and validates a grid string against mass m (omega bounds are in units
// of m). Throws DomainError on malformed bounds.
PlaneGrid parse_grid(const std::string& spec, double m);

struct DiagramCell {
  double kappa = 0.0;
  double omega = 0.0;
  std::string region_code;
  PairKind kind = PairKind::none;
  bool whole_plane = false;
  double lambda_re = 0.0;  // dominant nontrivial eigenvalue (0, 0 if none)
  double lambda_im = 0.0;
  bool stable = true;
  std::vector<std::string> boundary_flags;
};

// Cells in row-major order: omega index outer, kappa index inner.
std::vector<DiagramCell> compute_diagram(double m, const PlaneGrid& grid, int jobs);

std::string diagram_csv(const std::vector<DiagramCell>& cells);
std::string diagram_svg(double m, const PlaneGrid& grid, const std::vector<DiagramCell>& cells);
Json diagram_json(double m, const PlaneGrid& grid, const std::vector<DiagramCell>& cells);

}  // namespace pointsoler
