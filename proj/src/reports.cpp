// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointsoler/reports.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "pointsoler/parallel.hpp"

namespace pointsoler {
namespace {

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json complex_json(Complex z) {
  Json j;
  j["re"] = number_or_null(z.real());
  j["im"] = number_or_null(z.imag());
  return j;
}

void emit(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + Json(it.key()).dump() + ": ";
        emit(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const Json& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        emit(v, out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += std::isfinite(j.get<double>()) ? format_e(j.get<double>()) : "null";
      return;
    default:
      out += j.dump();
      return;
  }
}

Json threshold_json(const ThresholdValue& t) {
  Json j;
  j["value"] = t.defined ? Json(t.value) : Json(nullptr);
  j["defined"] = t.defined;
  j["valid"] = t.valid;
  return j;
}

}  // namespace

std::string format_e(double x) {
  char buf[64];
  if (x == 0.0) x = 0.0;  // print -0 as 0
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

std::string canonical_json(const Json& j) {
  std::string out;
  emit(j, out, 0);
  out += "\n";
  return out;
}

Json to_json(const Thresholds& t) {
  Json j;
  j["T_minus"] = threshold_json(t.T_minus);
  j["T_plus"] = threshold_json(t.T_plus);
  j["Omega"] = threshold_json(t.Omega);
  j["TwoOmega"] = threshold_json(t.TwoOmega);
  j["W"] = threshold_json(t.W);
  return j;
}

Json to_json(const SpectralClassification& c) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "classification";
  j["m"] = c.m;
  j["omega"] = c.omega;
  j["kappa"] = c.kappa;
  j["omega_over_m"] = c.omega / c.m;
  Json reg;
  reg["code"] = c.region.code;
  reg["case"] = std::string("4") + c.region.case_letter;
  reg["pair"] = to_string(c.region.kind);
  reg["boundary"] = c.region.boundary;
  reg["boundary_flags"] = c.region.boundary_flags;
  j["region"] = reg;
  j["spectrally_stable"] = c.spectrally_stable;
  j["kernel_dim"] = c.kernel_dim;
  j["alg_mult_zero"] = c.alg_mult_zero;
  Json ev = Json::array();
  for (const Eigenvalue& e : c.eigenvalues) {
    Json x;
    x["re"] = e.lambda.real();
    x["im"] = e.lambda.imag();
    x["re_over_m"] = e.lambda.real() / c.m;
    x["im_over_m"] = e.lambda.imag() / c.m;
    x["tag"] = to_string(e.tag);
    x["algebraic_multiplicity"] = e.algebraic_multiplicity;
    x["geometric_multiplicity"] = e.geometric_multiplicity;
    ev.push_back(x);
  }
  j["eigenvalues"] = ev;
  Json ess;
  ess["description"] = c.essential.description;
  ess["whole_plane"] = c.essential.whole_plane;
  ess["gap_edge"] = c.essential.gap_edge;
  ess["gap_edge_over_m"] = c.essential.gap_edge / c.m;
  j["essential"] = ess;
  j["thresholds"] = to_json(c.thresholds);
  Json flags;
  flags["kappa_outside_wellposedness"] = c.kappa_outside_wellposedness;
  flags["threshold_embedded"] = c.threshold_embedded;
  j["flags"] = flags;
  return j;
}

Json to_json(const RootRecord& r, double m) {
  Json j;
  j["Lambda"] = complex_json(r.Lambda);
  j["lambda"] = complex_json(r.lambda);
  j["Lambda_over_m"] = complex_json(r.Lambda / m);
  j["residual"] = number_or_null(r.residual);
  j["sheet"] = Json::array({r.sheet.nu_plus, r.sheet.nu_minus});
  j["newton_iters"] = r.newton_iters;
  j["seed"] = complex_json(r.seed);
  j["multiplicity"] = r.multiplicity;
  j["converged"] = r.converged;
  j["admissible"] = r.admissible;
  j["tag"] = r.tag;
  return j;
}

Json to_json(const RootSearch& s, double m) {
  Json j;
  j["total_winding"] = s.total_winding;
  j["unreliable_cells"] = s.unreliable_cells;
  Json roots = Json::array();
  for (const RootRecord& r : s.roots) roots.push_back(to_json(r, m));
  j["roots"] = roots;
  return j;
}

Json to_json(const PerturbationResult& p) {
  Json j;
  j["model"] = to_string(p.model);
  j["m"] = p.m;
  j["omega"] = p.omega;
  j["kappa"] = p.kappa;
  j["epsilon"] = p.epsilon;
  j["zeta"] = complex_json(p.zeta);
  j["lambda"] = complex_json(p.lambda);
  j["lambda_over_m"] = complex_json(p.lambda / p.m);
  j["unstable"] = p.unstable;
  j["residual"] = number_or_null(p.residual);
  j["regime_verified"] = p.regime_verified;
  j["spurious_zeta"] = p.spurious_zeta ? complex_json(*p.spurious_zeta) : Json(nullptr);
  j["newton_zeta"] = p.newton_zeta ? complex_json(*p.newton_zeta) : Json(nullptr);
  j["newton_iters"] = p.newton_iters;
  return j;
}

Json to_json(const ScalingStudy& s) {
  Json j;
  j["m"] = s.m;
  j["kappa"] = s.kappa;
  Json rows = Json::array();
  for (const ScalingRow& r : s.rows) {
    Json x;
    x["omega"] = r.omega;
    x["epsilon"] = r.epsilon;
    x["mu"] = r.mu;
    x["log_eps"] = r.log_eps;
    x["log_mu"] = r.log_mu;
    x["log_abs_im_zeta"] = r.log_abs_im_zeta;
    x["zeta"] = complex_json(r.zeta);
    x["prefactor"] = r.prefactor;
    x["prefactor_ratio"] = r.prefactor_ratio;
    rows.push_back(x);
  }
  j["rows"] = rows;
  j["slope_eps"] = s.slope_eps ? Json(*s.slope_eps) : Json(nullptr);
  j["slope_mu"] = s.slope_mu ? Json(*s.slope_mu) : Json(nullptr);
  return j;
}

Json to_json(const SolitaryWave& w) {
  Json j;
  j["family"] = to_string(w.family);
  j["m"] = w.params.m;
  j["omega"] = w.params.omega;
  j["mu"] = w.geometry.mu;
  j["varkappa"] = w.geometry.varkappa;
  j["alpha"] = w.alpha;
  j["beta"] = w.beta;
  j["epsilon"] = w.epsilon;
  j["tau"] = w.tau;
  j["f_at_wave"] = w.f_at_wave;
  j["g_at_wave"] = w.g_at_wave;
  return j;
}

PlaneGrid parse_grid(const std::string& spec, double m) {
  PlaneGrid g;
  double k0, k1, w0, w1;
  int nk, nw;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d,%lf:%lf:%d%c", &k0, &k1, &nk, &w0, &w1, &nw, &tail) != 6) {
    throw DomainError("malformed grid, expected kmin:kmax:n,wmin:wmax:n");
  }
  if (!(k1 > k0) || !(w1 > w0)) throw DomainError("grid bounds must be increasing");
  if (nk < 2 || nw < 2) throw DomainError("grid resolution must be at least 2 per axis");
  if (w0 < -1.0 || w1 > 1.0) throw DomainError("omega grid bounds must lie within [-1, 1] (units of m)");
  g.kappa_min = k0;
  g.kappa_max = k1;
  g.n_kappa = nk;
  g.omega_min = w0 * m;
  g.omega_max = w1 * m;
  g.n_omega = nw;
  return g;
}

std::vector<DiagramCell> compute_diagram(double m, const PlaneGrid& grid, int jobs) {
  const std::size_t nk = static_cast<std::size_t>(grid.n_kappa);
  const std::size_t nw = static_cast<std::size_t>(grid.n_omega);
  std::vector<DiagramCell> cells(nk * nw);
  parallel_for(nw, jobs, [&](std::size_t j) {
    const double omega = grid.omega_at(static_cast<int>(j));
    for (std::size_t i = 0; i < nk; ++i) {
      const double kappa = grid.kappa_at(static_cast<int>(i));
      const SpectralClassification c = classify(m, omega, kappa);
      DiagramCell& cell = cells[j * nk + i];
      cell.kappa = kappa;
      cell.omega = omega;
      cell.region_code = c.region.code;
      cell.kind = c.region.kind;
      cell.whole_plane = c.region.whole_plane;
      cell.stable = c.spectrally_stable;
      cell.boundary_flags = c.region.boundary_flags;
      for (const Eigenvalue& e : c.eigenvalues) {
        if (e.tag == EigenTag::real_unstable && e.lambda.real() > 0.0) {
          cell.lambda_re = e.lambda.real();
        } else if (e.tag == EigenTag::gap_imaginary && e.lambda.imag() > 0.0) {
          cell.lambda_im = e.lambda.imag();
        }
      }
    }
  });
  return cells;
}

std::string diagram_csv(const std::vector<DiagramCell>& cells) {
  std::string out = "kappa,omega,region_code,lambda_re,lambda_im,stable,boundary_flags\n";
  for (const DiagramCell& c : cells) {
    std::string flags;
    for (std::size_t i = 0; i < c.boundary_flags.size(); ++i) {
      if (i) flags += ';';
      flags += c.boundary_flags[i];
    }
    out += format_e(c.kappa) + ',' + format_e(c.omega) + ',' + c.region_code + ',' +
           format_e(c.lambda_re) + ',' + format_e(c.lambda_im) + ',' + (c.stable ? "1" : "0") +
           ',' + flags + '\n';
  }
  return out;
}

Json diagram_json(double m, const PlaneGrid& grid, const std::vector<DiagramCell>& cells) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "diagram";
  j["m"] = m;
  Json g;
  g["kappa_min"] = grid.kappa_min;
  g["kappa_max"] = grid.kappa_max;
  g["n_kappa"] = grid.n_kappa;
  g["omega_min"] = grid.omega_min;
  g["omega_max"] = grid.omega_max;
  g["n_omega"] = grid.n_omega;
  j["grid"] = g;
  Json arr = Json::array();
  for (const DiagramCell& c : cells) {
    Json x;
    x["kappa"] = c.kappa;
    x["omega"] = c.omega;
    x["region_code"] = c.region_code;
    x["lambda_re"] = c.lambda_re;
    x["lambda_im"] = c.lambda_im;
    x["stable"] = c.stable;
    x["boundary_flags"] = c.boundary_flags;
    arr.push_back(x);
  }
  j["cells"] = arr;
  return j;
}

std::string diagram_svg(double m, const PlaneGrid& grid, const std::vector<DiagramCell>& cells) {
  const double W = 800.0, H = 800.0, left = 70.0, top = 30.0;
  const int nk = grid.n_kappa;
  const int nw = grid.n_omega;
  const double cw = W / nk;
  const double ch = H / nw;
  auto px = [&](double kappa) {
    return left + (kappa - grid.kappa_min) / (grid.kappa_max - grid.kappa_min) * W;
  };
  auto py = [&](double omega) {
    return top + (grid.omega_max - omega) / (grid.omega_max - grid.omega_min) * H;
  };
  auto colour = [](const DiagramCell& c) -> const char* {
    if (c.whole_plane) return "#000000";
    if (!c.boundary_flags.empty()) return "#636363";
    switch (c.kind) {
      case PairKind::gap: return "#9ecae1";
      case PairKind::real_pair: return "#fc9272";
      case PairKind::none: return "#ffffff";
    }
    return "#ffffff";
  };
  std::ostringstream s;
  char buf[256];
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                W + left + 180.0, H + top + 60.0, W + left + 180.0, H + top + 60.0);
  s << buf;
  s << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  s << "<g shape-rendering=\"crispEdges\">\n";
  // Run-length encode each omega row of equally coloured cells.
  for (int j = 0; j < nw; ++j) {
    int i = 0;
    while (i < nk) {
      const char* col = colour(cells[static_cast<std::size_t>(j) * nk + i]);
      int e = i + 1;
      while (e < nk && colour(cells[static_cast<std::size_t>(j) * nk + e]) == col) ++e;
      if (std::string(col) != "#ffffff") {
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"%s\"/>\n",
                      left + i * cw, top + (nw - 1 - j) * ch, (e - i) * cw, ch, col);
        s << buf;
      }
      i = e;
    }
  }
  s << "</g>\n";
  // Analytic curves.
  struct Curve {
    const char* name;
    const char* colour;
    const char* dash;
  };
  const Curve curves[4] = {{"Omega", "#08519c", ""},
                           {"2 Omega", "#6a51a3", "6,4"},
                           {"T+", "#238b45", ""},
                           {"T-", "#d94801", "2,3"}};
  const int samples = 4 * nk + 1;
  for (int c = 0; c < 4; ++c) {
    std::string path;
    bool open = false;
    for (int i = 0; i < samples; ++i) {
      const double kappa = grid.kappa_min + (grid.kappa_max - grid.kappa_min) * i / (samples - 1);
      if (kappa == 0.0) {
        open = false;
        continue;
      }
      const Thresholds t = thresholds(m, kappa);
      const ThresholdValue v = c == 0 ? t.Omega : c == 1 ? t.TwoOmega : c == 2 ? t.T_plus : t.T_minus;
      const bool draw = v.defined && v.valid && v.value > grid.omega_min && v.value < grid.omega_max;
      if (!draw) {
        open = false;
        continue;
      }
      std::snprintf(buf, sizeof buf, "%s%.3f,%.3f ", open ? "L" : "M", px(kappa), py(v.value));
      path += buf;
      open = true;
    }
    if (!path.empty()) {
      s << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << curves[c].colour
        << "\" stroke-width=\"1.5\"";
      if (*curves[c].dash) s << " stroke-dasharray=\"" << curves[c].dash << "\"";
      s << "/>\n";
    }
  }
  // The singular point (kappa, omega) = (-1, 0).
  if (-1.0 > grid.kappa_min && -1.0 < grid.kappa_max && 0.0 > grid.omega_min && 0.0 < grid.omega_max) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"5\" fill=\"#000000\"/>\n",
                  px(-1.0), py(0.0));
    s << buf;
  }
  // Frame, axes labels and legend.
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.0f\" y=\"%.0f\" width=\"%.0f\" height=\"%.0f\" fill=\"none\" stroke=\"#000000\"/>\n",
                left, top, W, H);
  s << buf;
  for (int t = 0; t <= 4; ++t) {
    const double kappa = grid.kappa_min + (grid.kappa_max - grid.kappa_min) * t / 4.0;
    const double omega = grid.omega_min + (grid.omega_max - grid.omega_min) * t / 4.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"middle\">%.2f</text>\n",
                  px(kappa), top + H + 18.0, kappa);
    s << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" text-anchor=\"end\">%.2f</text>\n",
                  left - 6.0, py(omega) + 4.0, omega / m);
    s << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"14\" text-anchor=\"middle\">kappa</text>\n",
                left + W / 2.0, top + H + 42.0);
  s << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"16\" y=\"%.1f\" font-size=\"14\" transform=\"rotate(-90 16 %.1f)\" "
                "text-anchor=\"middle\">omega / m</text>\n",
                top + H / 2.0, top + H / 2.0);
  s << buf;
  const double lx = left + W + 15.0;
  const char* labels[4][2] = {{"#9ecae1", "imaginary pair (stable)"},
                              {"#fc9272", "real pair (unstable)"},
                              {"#636363", "boundary"},
                              {"#000000", "whole plane"}};
  for (int i = 0; i < 4; ++i) {
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"12\" height=\"12\" fill=\"%s\" stroke=\"#000000\"/>"
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\">%s</text>\n",
                  lx, top + 20.0 * i, labels[i][0], lx + 18.0, top + 20.0 * i + 10.0, labels[i][1]);
    s << buf;
  }
  for (int c = 0; c < 4; ++c) {
    const double y = top + 100.0 + 20.0 * c;
    s << "<line x1=\"" << lx << "\" y1=\"" << y << "\" x2=\"" << lx + 14.0 << "\" y2=\"" << y
      << "\" stroke=\"" << curves[c].colour << "\" stroke-width=\"2\"";
    if (*curves[c].dash) s << " stroke-dasharray=\"" << curves[c].dash << "\"";
    s << "/><text x=\"" << lx + 18.0 << "\" y=\"" << y + 4.0 << "\" font-size=\"11\">"
      << curves[c].name << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace pointsoler
