// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointsoler/dispersion_rootfinder.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "pointsoler/parallel.hpp"

namespace pointsoler {
namespace {

constexpr Complex kI{0.0, 1.0};

double mu_of(double m, double omega) { return std::sqrt((m - omega) / (m + omega)); }

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

// ---------------------------------------------------------------------------
// Branch data and dispersion functions.

BranchData branch_data(double m, double omega, Complex L, Sheet sheet) {
  BranchData b;
  b.sheet = sheet;
  b.S_plus = m - omega + L;
  b.S_minus = m - omega - L;
  // m^2 - (omega -+ Lambda)^2 in factored form, exact at the branch points.
  const Complex rad_plus = b.S_plus * (m + omega - L);
  const Complex rad_minus = b.S_minus * (m + omega + L);
  b.nu_plus = static_cast<double>(sheet.nu_plus) * principal_sqrt(rad_plus);
  b.nu_minus = static_cast<double>(sheet.nu_minus) * principal_sqrt(rad_minus);
  if (rad_minus.imag() == 0.0 && rad_minus.real() > 0.0) {
    // On the cut of xi: take the limit from Im Lambda < 0, the half-plane in
    // which the perturbed models are analysed; there xi = i nu_- sgn(omega + Re Lambda).
    const double sgn = (omega + L.real() >= 0.0) ? 1.0 : -1.0;
    b.xi = Complex(0.0, sgn * std::sqrt(rad_minus.real()));
  } else {
    b.xi = -principal_sqrt(-rad_minus);
  }
  return b;
}

Complex gamma_from_branches(double m, double omega, double k, Complex L, Complex nu_p,
                            Complex nu_m) {
  const double mu = mu_of(m, omega);
  const Complex Sp = m - omega + L;
  const Complex Sm = m - omega - L;
  return -nu_m * nu_p * (mu * mu * (2.0 * k + 1.0)) + mu * (k + 1.0) * nu_m * Sp +
         Sm * (k + 1.0) * mu * nu_p - Sm * Sp;
}

Complex gamma(double m, double omega, double k, Complex L, Sheet sheet) {
  const BranchData b = branch_data(m, omega, L, sheet);
  return gamma_from_branches(m, omega, k, L, b.nu_plus, b.nu_minus);
}

double gamma_scale(double m, double omega, double k, Complex L, Sheet sheet) {
  const BranchData b = branch_data(m, omega, L, sheet);
  const double mu = mu_of(m, omega);
  return std::abs(b.nu_minus * b.nu_plus) * mu * mu * std::abs(2.0 * k + 1.0) +
         mu * std::abs(k + 1.0) * (std::abs(b.nu_minus * b.S_plus) + std::abs(b.S_minus * b.nu_plus)) +
         std::abs(b.S_minus * b.S_plus) + 1e-300;
}

Complex det_oddeven(double m, double omega, Complex L) {
  const BranchData b = branch_data(m, omega, L);
  const double mu = mu_of(m, omega);
  return 2.0 * kI * (b.nu_minus - b.S_minus * mu) * (b.nu_plus - b.S_plus * mu);
}

Complex determinant(std::vector<Complex> a, int n) {
  Complex det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    }
    if (a[piv * n + col] == 0.0) return 0.0;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      det = -det;
    }
    const Complex p = a[col * n + col];
    det *= p;
    for (int r = col + 1; r < n; ++r) {
      const Complex factor = a[r * n + col] / p;
      for (int c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
    }
  }
  return det;
}

namespace {

std::vector<Complex> parity_preserved_matrix(const SolitaryWave& w, Complex L, Subspace s) {
  const BranchData b = branch_data(w.params.m, w.params.omega, L);
  const double e = w.epsilon;
  const double f = w.f_at_wave;
  const Complex nu = b.nu_plus;
  const Complex xi = b.xi;
  if (s == Subspace::odd_even_odd_even) {
    const double c = (1.0 - e) * f;
    return {2.0 * kI * nu - kI * c * b.S_plus, -2.0 * xi + kI * c * b.S_minus,
            2.0 * nu - c * b.S_plus, -2.0 * kI * xi - c * b.S_minus};
  }
  const double c = (1.0 + e) * f;
  const double h = c + 2.0 * w.g_at_wave * w.alpha * w.alpha * (1.0 + e) * (1.0 + e);
  return {-2.0 * kI * b.S_plus + kI * c * nu, 2.0 * kI * b.S_minus - c * xi,
          -2.0 * b.S_plus + h * nu, -2.0 * b.S_minus - h * kI * xi};
}

std::vector<Complex> broken_matrix(const BrokenWave& bw, Complex L) {
  const SolitaryWave& w = bw.wave;
  const BrokenWaveConstants& k = bw.constants;
  const BranchData b = branch_data(w.params.m, w.params.omega, L);
  const double e = w.epsilon;
  const double f = w.f_at_wave;
  const Complex nu = b.nu_plus;
  const Complex xi = b.xi;
  const Complex Sp = b.S_plus;
  const Complex Sm = b.S_minus;
  const double fz = f - e * e * k.Z;
  const double fx = f + k.X;
  const double F = k.F;
  return {
      2.0 * nu - Sp * f, -2.0 * kI * xi - Sm * f, e * f * nu, -kI * e * f * xi,
      2.0 * nu - fz * Sp, 2.0 * kI * xi + fz * Sm, e * F * nu, kI * e * F * xi,
      e * Sp * f, e * Sm * f, -2.0 * Sp + f * nu, -2.0 * Sm - kI * f * xi,
      e * Sp * F, -e * Sm * F, -2.0 * Sp + fx * nu, 2.0 * Sm + kI * fx * xi,
  };
}

double hadamard(const std::vector<Complex>& a, int n) {
  double prod = 1.0;
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int c = 0; c < n; ++c) s += std::norm(a[r * n + c]);
    prod *= std::sqrt(s);
  }
  return prod + 1e-300;
}

}  // namespace

Complex det_parity_preserved(const SolitaryWave& w, Complex L, Subspace s) {
  return determinant(parity_preserved_matrix(w, L, s), 2);
}

Complex det_parity_preserved(double m, double omega, double kappa, double epsilon, Complex L,
                             Subspace s) {
  const SolitaryWave w =
      solve_parity_preserved({m, omega}, Nonlinearity::pure_power(kappa), epsilon);
  return det_parity_preserved(w, L, s);
}

Complex det_parity_broken(const BrokenWave& bw, Complex L) {
  return determinant(broken_matrix(bw, L), 4);
}

Complex det_parity_broken(double m, double omega, double kappa, double epsilon, Complex L) {
  return det_parity_broken(solve_parity_broken({m, omega}, epsilon, kappa), L);
}

double det_parity_broken_scale(const BrokenWave& bw, Complex L) {
  return hadamard(broken_matrix(bw, L), 4);
}

Complex det_D(const BrokenWave& bw, Complex L) {
  const std::vector<Complex> a = broken_matrix(bw, L);
  return a[10] * a[15] - a[11] * a[14];
}

// ---------------------------------------------------------------------------
// Newton and winding numbers.

namespace {

double residual_of(const Dispersion& d, Complex z, Complex fz) {
  const double s = d.scale ? d.scale(z) : 1.0;
  return std::abs(fz) / s;
}

}  // namespace

RootRecord newton(const Dispersion& d, Complex seed, const RootFinderOptions& opt) {
  RootRecord rec;
  rec.seed = seed;
  Complex z = seed;
  Complex fz = d.f(z);
  int it = 0;
  for (; it < opt.max_newton && finite(fz); ++it) {
    if (fz == 0.0) break;
    const double h = opt.derivative_step * std::max(opt.derivative_scale, std::abs(z));
    const Complex df = (d.f(z + h) - d.f(z - h)) / (2.0 * h);
    if (df == 0.0 || !finite(df)) break;
    const Complex step = fz / df;
    double t = 1.0;
    Complex zn = z - step;
    Complex fn = d.f(zn);
    while ((!finite(fn) || std::abs(fn) >= std::abs(fz)) && t > 1e-6) {
      t *= 0.5;
      zn = z - t * step;
      fn = d.f(zn);
    }
    if (!finite(fn)) break;
    const bool tiny = std::abs(zn - z) <= 4e-16 * std::max(std::abs(zn), 1e-8 * opt.derivative_scale);
    const bool stalled = std::abs(fn) >= std::abs(fz);
    if (!stalled) {
      z = zn;
      fz = fn;
    }
    if (tiny || stalled) {
      ++it;
      break;
    }
    if (residual_of(d, z, fz) < 1e-3 * opt.tol && t == 1.0 &&
        std::abs(step) <= 1e-10 * std::max(1.0, std::abs(z))) {
      ++it;
      break;
    }
  }
  rec.Lambda = z;
  rec.working = z;
  rec.lambda = kI * z;
  rec.newton_iters = it;
  rec.residual = finite(fz) ? residual_of(d, z, fz) : INFINITY;
  rec.converged = rec.residual < opt.tol;
  rec.admissible = d.admissible ? d.admissible(z) : true;
  rec.tag = rec.converged ? "root" : "unconverged";
  return rec;
}

namespace {

struct ArgWalker {
  const Dispersion& d;
  bool reliable = true;
  // Evaluation budget: rounding noise near a zero on the contour would
  // otherwise make the refinement exponential.
  int budget = 1 << 15;

  double segment(Complex z0, Complex z1, Complex f0, Complex f1, int depth) {
    if (!finite(f0) || !finite(f1) || f0 == 0.0 || f1 == 0.0) {
      reliable = false;
      return 0.0;
    }
    const double da = std::arg(f1 / f0);
    if (depth >= 48 || budget <= 0) {
      reliable = false;
      return da;
    }
    const Complex zm = 0.5 * (z0 + z1);
    const Complex fm = d.f(zm);
    --budget;
    // Accept a small increment only when both halves agree with it: a
    // (multiple) zero close to the segment can wrap the increment by 2 pi.
    if (depth >= 3 && std::abs(da) < 0.6 && finite(fm) && fm != 0.0) {
      const double a0 = std::arg(fm / f0);
      const double a1 = std::arg(f1 / fm);
      if (std::abs(a0) < 0.6 && std::abs(a1) < 0.6) return a0 + a1;
    }
    return segment(z0, zm, f0, fm, depth + 1) + segment(zm, z1, fm, f1, depth + 1);
  }
};

struct Corners {
  Complex z[4];
  Complex f[4];
};

Corners corners_of(const Dispersion& d, const Rect& r) {
  Corners c;
  c.z[0] = {r.re_min, r.im_min};
  c.z[1] = {r.re_max, r.im_min};
  c.z[2] = {r.re_max, r.im_max};
  c.z[3] = {r.re_min, r.im_max};
  for (int i = 0; i < 4; ++i) c.f[i] = d.f(c.z[i]);
  return c;
}

int winding_from(const Dispersion& d, const Corners& c, bool* reliable) {
  ArgWalker w{d};
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    total += w.segment(c.z[i], c.z[j], c.f[i], c.f[j], 0);
  }
  const double turns = total / (2.0 * std::numbers::pi);
  const double n = std::round(turns);
  if (std::abs(turns - n) > 0.1) w.reliable = false;
  if (reliable) *reliable = w.reliable;
  return static_cast<int>(n);
}

struct Finder {
  const Dispersion& d;
  const RootFinderOptions& opt;
  std::vector<RootRecord> out;
  int unreliable = 0;

  bool inside(const Rect& r, Complex z) const {
    const double pad = 1e-9 * std::max(r.re_max - r.re_min, r.im_max - r.im_min);
    return z.real() >= r.re_min - pad && z.real() <= r.re_max + pad &&
           z.imag() >= r.im_min - pad && z.imag() <= r.im_max + pad;
  }

  void process(const Rect& r, int w, int depth) {
    if (w == 0) return;
    const Complex centre{0.5 * (r.re_min + r.re_max), 0.5 * (r.im_min + r.im_max)};
    const double size = std::max(r.re_max - r.re_min, r.im_max - r.im_min);
    const double rel = size / std::max(1.0, std::abs(centre));
    if (w == 1) {
      RootRecord rec = newton(d, centre, opt);
      if (rec.converged && inside(r, rec.Lambda)) {
        out.push_back(rec);
        return;
      }
    }
    // Root clusters below the rounding floor of f are reported as a single
    // record of multiplicity w.
    const bool cluster = w >= 2 && rel < 1e-7;
    if (cluster || rel < opt.min_cell || depth >= opt.max_depth) {
      RootRecord rec = newton(d, centre, opt);
      if (!inside(r, rec.Lambda) || !rec.converged) {
        rec.Lambda = centre;
        rec.lambda = kI * centre;
        rec.converged = false;
        rec.tag = "unconverged";
      }
      rec.multiplicity = w;
      out.push_back(rec);
      return;
    }
    // Split off-centre so that symmetry lines through the parent's centre
    // never become child edges; when a zero sits on a child edge (the child
    // windings do not add up) retry with other ratios.
    static constexpr double kRatios[3][2] = {{0.5371, 0.4629}, {0.4129, 0.5871}, {0.6213, 0.3787}};
    Rect kids[4];
    int wk[4];
    bool consistent = false;
    for (int attempt = 0; attempt < 3 && !consistent; ++attempt) {
      const double p = kRatios[attempt][depth % 2];
      const double xm = r.re_min + p * (r.re_max - r.re_min);
      const double ym = r.im_min + p * (r.im_max - r.im_min);
      kids[0] = {r.re_min, xm, r.im_min, ym};
      kids[1] = {xm, r.re_max, r.im_min, ym};
      kids[2] = {xm, r.re_max, ym, r.im_max};
      kids[3] = {r.re_min, xm, ym, r.im_max};
      int sum = 0;
      bool ok_all = true;
      for (int i = 0; i < 4; ++i) {
        bool ok = true;
        wk[i] = winding_from(d, corners_of(d, kids[i]), &ok);
        ok_all = ok_all && ok;
        sum += wk[i];
      }
      consistent = ok_all && sum == w;
    }
    if (!consistent) ++unreliable;
    for (int i = 0; i < 4; ++i) process(kids[i], wk[i], depth + 1);
  }
};

std::vector<double> band_edges(const Rect& r, const GridSpec& g) {
  std::vector<double> e;
  if (!g.geometric_im) {
    const int ny = std::max(1, g.ny);
    for (int j = 0; j <= ny; ++j) e.push_back(r.im_min + (r.im_max - r.im_min) * j / ny);
    return e;
  }
  // Symmetric geometric bands around the centre line of the rectangle.
  const double c = 0.5 * (r.im_min + r.im_max);
  const double half = 0.5 * (r.im_max - r.im_min);
  std::vector<double> up;
  double y = std::min(g.im_core > 0.0 ? g.im_core : half / 64.0, half);
  while (y < half) {
    up.push_back(y);
    y *= 2.0;
  }
  up.push_back(half);
  for (auto it = up.rbegin(); it != up.rend(); ++it) e.push_back(c - *it);
  for (double u : up) e.push_back(c + u);
  return e;
}

}  // namespace

int winding_number(const Dispersion& d, const Rect& r, bool* reliable) {
  return winding_from(d, corners_of(d, r), reliable);
}

RootSearch find_roots(const Dispersion& d, const Rect& r, const GridSpec& grid,
                      const RootFinderOptions& opt) {
  const std::vector<double> ye = band_edges(r, grid);
  const double width = r.re_max - r.re_min;
  std::vector<Rect> cells;
  const int nx = std::max(1, grid.nx);
  for (std::size_t j = 0; j + 1 < ye.size(); ++j) {
    const double h = ye[j + 1] - ye[j];
    // Bands much taller than the rectangle is wide are scanned as one cell.
    const int n = (grid.geometric_im && h > width) ? 1 : nx;
    for (int i = 0; i < n; ++i) {
      cells.push_back({r.re_min + width * i / n, r.re_min + width * (i + 1) / n, ye[j], ye[j + 1]});
    }
  }
  std::vector<std::vector<RootRecord>> found(cells.size());
  std::vector<int> windings(cells.size(), 0);
  std::vector<int> bad(cells.size(), 0);
  parallel_for(cells.size(), opt.jobs, [&](std::size_t i) {
    Finder fdr{d, opt, {}, 0};
    bool ok = true;
    windings[i] = winding_from(d, corners_of(d, cells[i]), &ok);
    if (!ok) ++fdr.unreliable;
    fdr.process(cells[i], windings[i], 0);
    found[i] = std::move(fdr.out);
    bad[i] = fdr.unreliable;
  });
  RootSearch s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    s.total_winding += windings[i];
    s.unreliable_cells += bad[i];
    for (RootRecord& rec : found[i]) {
      bool dup = false;
      for (RootRecord& prev : s.roots) {
        if (std::abs(prev.Lambda - rec.Lambda) <= opt.dedup * std::max(1.0, std::abs(rec.Lambda))) {
          // Distinct cells that polish to one point share a multiple root.
          prev.multiplicity += rec.multiplicity;
          dup = true;
          break;
        }
      }
      if (!dup) s.roots.push_back(std::move(rec));
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Gamma-specific search.

Rect gap_rectangle(double m, double omega, double eta_rel, double height_rel) {
  require_gap({m, omega});
  const double g = m - std::abs(omega);
  const double eta = eta_rel * m;
  return {-g + eta, g - eta, -height_rel * m, height_rel * m};
}

Dispersion gamma_dispersion(double m, double omega, double k) {
  Dispersion d;
  d.f = [=](Complex L) { return gamma(m, omega, k, L); };
  d.scale = [=](Complex L) { return gamma_scale(m, omega, k, L); };
  d.admissible = [=](Complex L) {
    const BranchData b = branch_data(m, omega, L);
    return b.nu_plus.real() > 0.0 && b.nu_minus.real() > 0.0;
  };
  return d;
}

namespace {

// Gamma / Lambda^2 on the physical sheet. Pointwise, the quotient loses all
// accuracy near the origin (four O(1) terms cancel to O(Lambda^2), or to
// O(Lambda^4) when the eigenvalue pair merges into the origin), so inside
// |Lambda| < g/4 it is evaluated from its Taylor series, whose coefficients
// are obtained by the trapezoidal rule on the circle |Lambda| = g/2 where the
// quotient is accurate. The quotient is analytic for |Lambda| < g = m - |omega|.
Dispersion deflated_gamma(double m, double omega, double k) {
  const Dispersion full = gamma_dispersion(m, omega, k);
  const double g = m - std::abs(omega);
  const double rho = 0.5 * g;
  constexpr int kN = 64;
  std::vector<Complex> samples(kN);
  double scale_sum = 0.0;
  for (int j = 0; j < kN; ++j) {
    const Complex z = std::polar(rho, 2.0 * std::numbers::pi * (j + 0.5) / kN);
    samples[j] = full.f(z) / (z * z);
    scale_sum += full.scale(z) / (rho * rho);
  }
  auto coeffs = std::make_shared<std::vector<Complex>>(kN);
  for (int n = 0; n < kN; ++n) {
    Complex c = 0.0;
    for (int j = 0; j < kN; ++j) {
      c += samples[j] * std::polar(1.0, -2.0 * std::numbers::pi * n * (j + 0.5) / kN);
    }
    (*coeffs)[n] = c / static_cast<double>(kN);
  }
  const double series_scale = scale_sum / kN;
  const double r_series = 0.25 * g;
  Dispersion d = full;
  d.f = [full, coeffs, rho, r_series](Complex L) {
    if (std::abs(L) < r_series) {
      const Complex u = L / rho;
      Complex acc = 0.0;
      for (int n = kN - 1; n >= 0; --n) acc = acc * u + (*coeffs)[n];
      return acc;
    }
    return full.f(L) / (L * L);
  };
  d.scale = [full, series_scale, r_series](Complex L) {
    return std::abs(L) < r_series ? series_scale : full.scale(L) / std::norm(L);
  };
  return d;
}

void tag_gamma_root(RootRecord& r, double m, double omega) {
  if (!r.converged) {
    r.tag = "unconverged";
    return;
  }
  const double g = m - omega;
  if (std::abs(r.Lambda) <= 1e-7 * m) {
    r.tag = "zero";
  } else if (std::abs(r.Lambda - g) <= 1e-8 * m || std::abs(r.Lambda + g) <= 1e-8 * m) {
    r.tag = "structural";
  } else if (!r.admissible) {
    r.tag = "spurious-sheet";
  } else {
    r.tag = "eigenvalue";
  }
}

}  // namespace

RootSearch find_gamma_roots(double m, double omega, double k, const Rect* rect,
                            const RootFinderOptions* opt_in) {
  require_gap({m, omega});
  RootFinderOptions opt = opt_in ? *opt_in : RootFinderOptions{};
  opt.derivative_scale = m;
  // Gamma always has a double zero at Lambda = 0; it is divided out before
  // the search (near the origin Gamma sits at its rounding floor) and
  // reported analytically below.
  const Dispersion d = deflated_gamma(m, omega, k);
  const double g = m - std::abs(omega);
  bool origin_inside = false;
  RootSearch total;
  auto merge = [&](const RootSearch& s) {
    total.total_winding += s.total_winding;
    total.unreliable_cells += s.unreliable_cells;
    for (const RootRecord& r : s.roots) total.roots.push_back(r);
  };

  if (!rect) {
    const Rect r = gap_rectangle(m, omega);
    GridSpec grid;
    grid.nx = 5;
    grid.geometric_im = true;
    grid.im_core = 0.2 * g;
    merge(find_roots(d, r, grid, opt));
    origin_inside = true;
  } else {
    const Rect& r = *rect;
    origin_inside = r.re_min < 0.0 && r.re_max > 0.0 && r.im_min < 0.0 && r.im_max > 0.0;
    const double eta = 1e-12 * m;
    const double delta = 1e-9 * m;
    const bool crosses_axis = r.im_min < 0.0 && r.im_max > 0.0;
    const bool beyond_gap = r.re_min < -g + eta || r.re_max > g - eta;
    GridSpec grid;
    grid.nx = 7;
    grid.ny = 7;
    if (crosses_axis && beyond_gap) {
      merge(find_roots(d, {r.re_min, r.re_max, delta, r.im_max}, grid, opt));
      merge(find_roots(d, {r.re_min, r.re_max, r.im_min, -delta}, grid, opt));
      const double lo = std::max(r.re_min, -g + eta);
      const double hi = std::min(r.re_max, g - eta);
      if (hi > lo) {
        GridSpec strip;
        strip.nx = 7;
        strip.ny = 1;
        merge(find_roots(d, {lo, hi, -delta, delta}, strip, opt));
      }
    } else {
      merge(find_roots(d, r, grid, opt));
    }
    // Structural zeros sit on branch points and are never enclosed by a cell;
    // report them explicitly when they lie in the requested rectangle.
    for (double s : {m - omega, -(m - omega)}) {
      if (s >= r.re_min && s <= r.re_max && r.im_min <= 0.0 && r.im_max >= 0.0) {
        RootRecord rec;
        rec.Lambda = s;
        rec.working = s;
        rec.seed = s;
        rec.lambda = kI * Complex(s);
        rec.residual = std::abs(gamma(m, omega, k, s));
        rec.converged = true;
        rec.admissible = false;
        rec.tag = "structural";
        total.roots.push_back(rec);
      }
    }
  }
  for (RootRecord& r : total.roots) {
    if (r.tag != "structural") tag_gamma_root(r, m, omega);
  }
  // One exact record at Lambda = 0 carries the analytic double zero plus any
  // zero of the deflated function that merged into the origin (Lambda_+- -> 0).
  std::vector<RootRecord> kept;
  RootRecord zero;
  zero.tag = "zero";
  zero.converged = true;
  zero.multiplicity = origin_inside ? 2 : 0;
  if (origin_inside) total.total_winding += 2;
  for (const RootRecord& r : total.roots) {
    if (r.tag == "zero") {
      if (zero.multiplicity == 0) zero.seed = r.seed;
      zero.multiplicity += r.multiplicity;
      zero.newton_iters = std::max(zero.newton_iters, r.newton_iters);
    } else {
      kept.push_back(r);
    }
  }
  if (zero.multiplicity > 0) kept.insert(kept.begin(), zero);
  total.roots = std::move(kept);
  return total;
}

std::vector<RootRecord> nontrivial_gamma_roots(double m, double omega, double k,
                                               const RootFinderOptions* opt) {
  std::vector<RootRecord> out;
  for (RootRecord& r : find_gamma_roots(m, omega, k, nullptr, opt).roots) {
    if (r.tag == "eigenvalue" || r.tag == "unconverged") out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Continuation.

TrackResult track_root(const DispersionFamily& fam, Complex z0, double p0, double p1,
                       const TrackOptions& opt) {
  auto at = [&](double p) {
    Dispersion d;
    d.f = [&fam, p](Complex z) { return fam.f(p, z); };
    if (fam.scale) d.scale = [&fam, p](Complex z) { return fam.scale(p, z); };
    return d;
  };
  auto finish = [&](RootRecord rec, double p) {
    rec.working = rec.Lambda;
    rec.Lambda = fam.to_lambda ? fam.to_lambda(p, rec.working) : rec.working;
    rec.lambda = kI * rec.Lambda;
    rec.admissible = fam.admissible ? fam.admissible(p, rec.working) : true;
    return rec;
  };

  TrackResult res;
  RootRecord first = newton(at(p0), z0, opt.newton);
  if (!first.converged) {
    throw BranchLostError("track_root: seed did not converge", finish(first, p0), p0);
  }
  first = finish(first, p0);
  res.parameters.push_back(p0);
  res.path.push_back(first);

  const double length = std::abs(p1 - p0);
  if (length == 0.0) return res;
  const double dir = p1 > p0 ? 1.0 : -1.0;
  const double full = length / std::max(1, opt.initial_steps);
  const double min_step = std::max(length * opt.min_step_fraction, 1e-300);
  const double max_jump = opt.max_jump > 0.0 ? opt.max_jump : 0.25;
  double step = full;
  double p = p0;
  Complex z = first.working;
  Complex z_prev = z;
  double dp_prev = 0.0;
  bool near = fam.threshold_distance && fam.threshold_distance(p, z) < opt.threshold_event;
  bool adm = first.admissible;

  while (dir * (p1 - p) > 0.0) {
    const double dp = std::min(step, dir * (p1 - p));
    const double pn = (dir * (p1 - (p + dir * dp)) <= 1e-15 * length) ? p1 : p + dir * dp;
    const double actual = std::abs(pn - p);
    const Complex pred = dp_prev > 0.0 ? z + (z - z_prev) * (actual / dp_prev) : z;
    RootRecord rec = newton(at(pn), pred, opt.newton);
    const bool ok = rec.converged &&
                    std::abs(rec.Lambda - pred) <= max_jump * std::max(1.0, std::abs(z)) &&
                    std::abs(rec.Lambda - z) <= 4.0 * max_jump * std::max(1.0, std::abs(z));
    if (!ok) {
      step *= 0.5;
      if (step < min_step) {
        throw BranchLostError("track_root: branch lost", res.path.back(), p);
      }
      continue;
    }
    z_prev = z;
    dp_prev = actual;
    z = rec.Lambda;
    p = pn;
    rec = finish(rec, p);
    res.parameters.push_back(p);
    res.path.push_back(rec);
    if (fam.threshold_distance) {
      const bool now_near = fam.threshold_distance(p, z) < opt.threshold_event;
      if (now_near && !near) res.events.push_back({p, "threshold", rec});
      near = now_near;
    }
    if (rec.admissible != adm) {
      res.events.push_back({p, "sheet-flip", rec});
      adm = rec.admissible;
    }
    step = std::min(step * 1.5, full);
  }
  return res;
}

DispersionFamily gamma_threshold_family(double m, double k) {
  DispersionFamily fam;
  fam.f = [=](double omega, Complex t) -> Complex {
    const Complex root = t * principal_sqrt(2.0 * m - t * t);
    if (omega >= 0.0) {
      const double g = m - omega;
      const Complex L = g - t * t;
      const double mu = mu_of(m, omega);
      const BranchData b = branch_data(m, omega, L);
      const Complex Sp = b.S_plus;
      const Complex tilde = principal_sqrt(2.0 * m - t * t);
      // Gamma / t with nu_- = t * tilde and S_- = t^2.
      return tilde * (mu * (k + 1.0) * Sp - b.nu_plus * mu * mu * (2.0 * k + 1.0)) +
             t * ((k + 1.0) * mu * b.nu_plus - Sp);
    }
    const double g = m + omega;
    const Complex L = g - t * t;
    const BranchData b = branch_data(m, omega, L);
    return gamma_from_branches(m, omega, k, L, root, b.nu_minus);
  };
  fam.to_lambda = [=](double omega, Complex t) { return (m - std::abs(omega)) - t * t; };
  fam.admissible = [=](double omega, Complex t) {
    const Complex L = (m - std::abs(omega)) - t * t;
    const BranchData b = branch_data(m, omega, L);
    const Complex other = omega >= 0.0 ? b.nu_plus : b.nu_minus;
    return t.real() > 0.0 && other.real() > 0.0;
  };
  fam.threshold_distance = [](double, Complex t) { return std::norm(t); };
  fam.scale = [=](double omega, Complex t) {
    const Complex L = (m - std::abs(omega)) - t * t;
    if (omega < 0.0) return gamma_scale(m, omega, k, L);
    const double mu = mu_of(m, omega);
    const BranchData b = branch_data(m, omega, L);
    const double tilde = std::abs(principal_sqrt(2.0 * m - t * t));
    return tilde * (mu * std::abs(k + 1.0) * std::abs(b.S_plus) +
                    std::abs(b.nu_plus) * mu * mu * std::abs(2.0 * k + 1.0)) +
           std::abs(t) * (std::abs(k + 1.0) * mu * std::abs(b.nu_plus) + std::abs(b.S_plus)) +
           1e-300;
  };
  return fam;
}

DispersionFamily gamma_square_family(double m, double k) {
  DispersionFamily fam;
  fam.f = [=](double omega, Complex s) { return gamma(m, omega, k, principal_sqrt(s)) / s; };
  fam.to_lambda = [](double, Complex s) { return principal_sqrt(s); };
  fam.admissible = [=](double omega, Complex s) {
    const BranchData b = branch_data(m, omega, principal_sqrt(s));
    return b.nu_plus.real() > 0.0 && b.nu_minus.real() > 0.0;
  };
  fam.threshold_distance = [=](double omega, Complex s) {
    return std::abs(std::abs(principal_sqrt(s)) - (m - std::abs(omega)));
  };
  fam.scale = [=](double omega, Complex s) {
    return gamma_scale(m, omega, k, principal_sqrt(s)) / std::max(std::abs(s), 1e-300);
  };
  return fam;
}

DispersionFamily broken_family(double m, double omega, double k) {
  DispersionFamily fam;
  fam.f = [=](double eps, Complex L) {
    return det_parity_broken(solve_parity_broken({m, omega}, eps, k), L);
  };
  fam.to_lambda = [](double, Complex L) { return L; };
  fam.admissible = [=](double, Complex L) {
    const BranchData b = branch_data(m, omega, L);
    return b.nu_plus.real() > 0.0 && b.xi.real() <= 0.0;
  };
  fam.threshold_distance = [=](double, Complex L) {
    double d = INFINITY;
    for (double bp : {m - omega, -(m + omega), m + omega, -(m - omega)}) {
      d = std::min(d, std::abs(L - bp));
    }
    return d;
  };
  fam.scale = [=](double eps, Complex L) {
    return det_parity_broken_scale(solve_parity_broken({m, omega}, eps, k), L);
  };
  return fam;
}

}  // namespace pointsoler
