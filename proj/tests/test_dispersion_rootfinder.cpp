// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <functional>

#include "doctest.h"
#include "pointsoler/dispersion_rootfinder.hpp"
#include "pointsoler/spectrum_closed_form.hpp"

using namespace pointsoler;

namespace {

constexpr Complex kI{0.0, 1.0};

bool has_root(const std::vector<RootRecord>& roots, Complex z, double tol, const char* tag = nullptr) {
  for (const RootRecord& r : roots) {
    if (std::abs(r.Lambda - z) <= tol && (!tag || r.tag == tag)) return true;
  }
  return false;
}

// Real roots of a real-valued function by a dense scan and bisection.
std::vector<double> scan_roots(const std::function<double(double)>& f, double a, double b, double h) {
  std::vector<double> out;
  double x0 = a, f0 = f(a);
  for (double x1 = a + h; x1 <= b; x1 += h) {
    const double f1 = f(x1);
    if ((f0 < 0.0) != (f1 < 0.0)) {
      double lo = x0, hi = x1;
      for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) < 0.0) == (f(lo) < 0.0)) lo = mid; else hi = mid;
      }
      out.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

}  // namespace

TEST_CASE("branch data") {
  // At the branch point Lambda = m - omega (computed in floating point).
  const BranchData a = branch_data(1.0, 0.8, 1.0 - 0.8);
  CHECK(std::abs(a.nu_minus) < 1e-15);
  CHECK(std::abs(a.S_minus) < 1e-15);
  // Inside the gap xi = i nu_-.
  const BranchData g = branch_data(1.0, 0.7, 0.1);
  CHECK(std::abs(g.xi - kI * g.nu_minus) < 1e-15);

  const BranchData b = branch_data(1.0, 0.0, 0.0);
  CHECK(std::abs(b.nu_plus - 1.0) < 1e-15);
  CHECK(std::abs(b.nu_minus - 1.0) < 1e-15);
  CHECK(std::abs(b.S_plus - 1.0) < 1e-15);
  CHECK(std::abs(b.S_minus - 1.0) < 1e-15);

  const BranchData c = branch_data(1.0, 0.8, 1.6);
  CHECK(std::abs(c.nu_plus - 0.6) < 1e-15);
  CHECK(std::abs(c.nu_minus - Complex(0.0, std::sqrt(4.76))) < 1e-14);

  const Complex L(0.3, -0.4);
  const BranchData d = branch_data(1.0, 0.25, L);
  CHECK(std::abs(d.nu_plus * d.nu_plus + (0.25 - L) * (0.25 - L) - 1.0) < 1e-14);
  CHECK(std::abs(d.nu_minus * d.nu_minus + (0.25 + L) * (0.25 + L) - 1.0) < 1e-14);
  CHECK(std::abs(d.S_plus + d.S_minus - 2.0 * 0.75) < 1e-14);
  CHECK(d.nu_plus.real() >= 0.0);
  CHECK(d.nu_minus.real() >= 0.0);
  // The other sheet flips the sign.
  const BranchData e = branch_data(1.0, 0.25, L, {-1, +1});
  CHECK(std::abs(e.nu_plus + d.nu_plus) < 1e-15);
}

TEST_CASE("Gamma: structural zeros, origin and the closed-form pair") {
  for (double k : {-2.0, 0.5, 2.0}) {
    for (double w : {-0.4, 0.3, 0.7}) {
      CHECK(std::abs(gamma(1.0, w, k, 1.0 - w)) < 1e-15);
      CHECK(std::abs(gamma(1.0, w, k, -(1.0 - w))) < 1e-15);
      CHECK(std::abs(gamma(1.0, w, k, 0.0)) < 1e-15);
    }
  }
  const Complex Lp = lambda_pm(1.0, 0.7, 2.0).plus;
  CHECK(std::abs(gamma(1.0, 0.7, 2.0, Lp)) < 1e-8);
  CHECK(std::abs(gamma(1.0, 0.7, 2.0, 0.23024)) < 1e-5);
}

TEST_CASE("Gamma roots map to roots of the quadratic in X") {
  for (double k : {-2.0, 1.5, 2.0, 5.0}) {
    for (double w : {0.45, 0.6, 0.7, 0.85, 0.95}) {
      const QuarticCoeffs q = quartic_coeffs(1.0, w, k);
      for (const RootRecord& r : nontrivial_gamma_roots(1.0, w, k)) {
        const Complex X = X_of_Lambda(1.0, w, r.Lambda);
        const Complex res = q.a * X * X - 2.0 * q.b * X - q.c;
        CHECK(std::abs(res) < 1e-10 * (std::abs(q.a * X * X) + std::abs(2.0 * q.b * X) + std::abs(q.c)));
      }
      // The two roots of a pair are conjugate under Lambda -> -Lambda in the X variable.
      const auto roots = nontrivial_gamma_roots(1.0, w, k);
      if (roots.size() == 2) {
        const Complex xp2 = std::pow(X_of_Lambda(1.0, w, roots[0].Lambda), 2);
        const Complex xm2 = std::pow(X_of_Lambda(1.0, w, roots[1].Lambda), 2);
        CHECK(std::abs(xp2 * (w + (1.0 - w) * xm2) - (1.0 + w - w * xm2)) < 1e-10);
      }
    }
  }
}

TEST_CASE("odd-even determinant") {
  for (double w : {-0.9, -0.5, 0.1, 0.4, 0.8}) {
    CHECK(std::abs(det_oddeven(1.0, w, 2.0 * w)) < 1e-12);
    CHECK(std::abs(det_oddeven(1.0, w, -2.0 * w)) < 1e-12);
    CHECK(std::abs(det_oddeven(1.0, w, 0.0)) > 1e-3);
  }
  // Per-factor real scan at omega = 0.4 over (-(m+omega), m+omega).
  const double w = 0.4, mu = std::sqrt(0.6 / 1.4);
  auto fp = [&](double L) {
    const BranchData b = branch_data(1.0, w, L);
    return b.nu_plus.imag() == 0.0 ? (b.nu_plus - b.S_plus * mu).real() : 1.0;
  };
  auto fm = [&](double L) {
    const BranchData b = branch_data(1.0, w, L);
    return b.nu_minus.imag() == 0.0 ? (b.nu_minus - b.S_minus * mu).real() : 1.0;
  };
  const auto rp = scan_roots(fp, -1.4 + 1e-6, 1.4 - 1e-6, 1e-4);
  const auto rm = scan_roots(fm, -1.4 + 1e-6, 1.4 - 1e-6, 1e-4);
  REQUIRE(rp.size() == 1);
  REQUIRE(rm.size() == 1);
  CHECK(rp[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(rm[0] == doctest::Approx(-0.8).epsilon(1e-12));
}

TEST_CASE("winding number and root finding on a polynomial") {
  Dispersion d;
  d.f = [](Complex z) { return (z * z * z - 1.0) * (z - Complex(0.3, 0.2)) * (z - Complex(0.3, 0.2)); };
  CHECK(winding_number(d, {-2.0, 2.0, -2.0, 2.0}) == 5);
  CHECK(winding_number(d, {0.5, 2.0, -0.5, 0.5}) == 1);
  RootFinderOptions opt;
  const RootSearch s = find_roots(d, {-2.0, 2.0, -2.0, 2.0}, GridSpec{}, opt);
  CHECK(s.total_winding == 5);
  for (int j = 0; j < 3; ++j) {
    CHECK(has_root(s.roots, std::polar(1.0, 2.0 * M_PI * j / 3.0), 1e-10));
  }
  bool double_root = false;
  for (const RootRecord& r : s.roots) {
    if (std::abs(r.Lambda - Complex(0.3, 0.2)) < 1e-6) double_root = double_root || r.multiplicity == 2;
  }
  CHECK(double_root);
  // Newton on a simple root.
  const RootRecord r = newton(d, Complex(0.9, 0.1), opt);
  CHECK(r.converged);
  CHECK(std::abs(r.Lambda - 1.0) < 1e-12);
}

TEST_CASE("Gamma roots in rectangles") {
  const Rect box{-1.0, 1.0, -1.0, 1.0};
  const RootSearch s = find_gamma_roots(1.0, 0.7, 2.0, &box);
  CHECK(has_root(s.roots, 0.2302379440265, 1e-10, "eigenvalue"));
  CHECK(has_root(s.roots, -0.2302379440265, 1e-10, "eigenvalue"));
  CHECK(has_root(s.roots, 0.3, 1e-15, "structural"));
  CHECK(has_root(s.roots, -0.3, 1e-15, "structural"));
  CHECK(has_root(s.roots, 0.0, 0.0, "zero"));
  int eig = 0;
  for (const RootRecord& r : s.roots) eig += r.tag == "eigenvalue";
  CHECK(eig == 2);

  const RootSearch t = find_gamma_roots(1.0, 0.4, 0.5, &box);
  for (const RootRecord& r : t.roots) CHECK((r.tag == "structural" || r.tag == "zero"));
  CHECK(nontrivial_gamma_roots(1.0, 0.4, 0.5).empty());

  // Real pair (imaginary Lambda) and symmetry of the found set.
  const auto u = nontrivial_gamma_roots(1.0, 0.8, 2.0);
  REQUIRE(u.size() == 2);
  for (const RootRecord& r : u) {
    CHECK(std::abs(std::abs(r.Lambda.imag()) - 0.2160432129643) < 1e-10);
    CHECK(has_root(u, -r.Lambda, 1e-9));
    CHECK(has_root(u, std::conj(r.Lambda), 1e-9));
  }
}

TEST_CASE("dispersion functions are analytic off the cuts") {
  const SolitaryWave pw = solve_parity_preserved({1.0, 0.9}, Nonlinearity::pure_power(1.0), 0.02);
  const BrokenWave bw = solve_parity_broken({1.0, 0.9}, 0.02, 1.0);
  const std::vector<std::function<Complex(Complex)>> fns = {
      [](Complex L) { return gamma(1.0, 0.3, 2.0, L); },
      [](Complex L) { return det_oddeven(1.0, 0.3, L); },
      [&](Complex L) { return det_parity_preserved(pw, L, Subspace::odd_even_odd_even); },
      [&](Complex L) { return det_parity_preserved(pw, L, Subspace::even_odd_even_odd); },
      [&](Complex L) { return det_parity_broken(bw, L); }};
  for (const auto& f : fns) {
    for (Complex z : {Complex(0.2, 0.3), Complex(1.8, -0.05), Complex(-0.4, 0.6)}) {
      const double h = 1e-7;
      const Complex dr = (f(z + h) - f(z)) / h;
      const Complex di = (f(z + kI * h) - f(z)) / (kI * h);
      CHECK(std::abs(dr - di) < 1e-5 * std::abs(dr));
    }
  }
}

TEST_CASE("perturbed determinants") {
  // eps = 0 recovers the unperturbed factors.
  const SolitaryWave p0 = solve_parity_preserved({1.0, 0.6}, Nonlinearity::pure_power(2.0), 0.0);
  CHECK(std::abs(det_parity_preserved(p0, 1.2, Subspace::odd_even_odd_even)) < 1e-12);
  const BrokenWave b0 = solve_parity_broken({1.0, 0.7}, 0.0, 2.0);
  CHECK(std::abs(det_parity_broken(b0, 1.4)) < 1e-12 * det_parity_broken_scale(b0, 1.4));
  const double Lp = lambda_pm(1.0, 0.7, 2.0).plus.real();
  CHECK(std::abs(det_parity_broken(b0, Lp)) < 1e-10 * det_parity_broken_scale(b0, Lp));

  // Parity preserving: real root near 2 omega + 2 eps (m^2 - omega^2)/m.
  Dispersion d;
  d.f = [](Complex L) { return det_parity_preserved(1.0, 0.9, 1.0, 0.01, L, Subspace::odd_even_odd_even); };
  const RootRecord r = newton(d, Complex(1.8, -1e-4), RootFinderOptions{});
  CHECK(r.converged);
  CHECK(std::abs(r.Lambda.imag()) < 1e-10);
  CHECK((r.Lambda.real() - 1.8) == doctest::Approx(0.0038).epsilon(0.05));

  // Parity breaking: Newton from 2 omega lands below the real axis.
  Dispersion e;
  const BrokenWave bw = solve_parity_broken({1.0, 0.95}, 0.05, 1.0);
  e.f = [&](Complex L) { return det_parity_broken(bw, L); };
  e.scale = [&](Complex L) { return det_parity_broken_scale(bw, L); };
  const RootRecord s = newton(e, Complex(1.9, 0.0), RootFinderOptions{});
  CHECK(s.converged);
  CHECK(s.Lambda.imag() < 0.0);

  // det D -> 32 m^2 at Lambda = 2 omega as omega -> m.
  for (double m : {1.0, 2.0}) {
    const BrokenWave w = solve_parity_broken({m, 0.999 * m}, 0.01, 1.0);
    CHECK(std::abs(det_D(w, 2.0 * 0.999 * m)) == doctest::Approx(32.0 * m * m).epsilon(0.05));
  }
}

TEST_CASE("continuation: into the threshold, through Omega, in epsilon") {
  // kappa = 2 from omega = 0.7 down to T+ = 9/16.
  const auto roots = nontrivial_gamma_roots(1.0, 0.7, 2.0);
  Complex L0 = roots.front().Lambda.real() > 0 ? roots.front().Lambda : roots.back().Lambda;
  const DispersionFamily fam = gamma_threshold_family(1.0, 2.0);
  const TrackResult a = track_root(fam, principal_sqrt(0.3 - L0), 0.7, 0.5625 + 1e-6);
  CHECK(std::abs(a.path.back().Lambda - (1.0 - 0.5625 - 1e-6)) < 1e-4);
  CHECK(a.path.back().admissible);
  const TrackResult b = track_root(fam, a.path.back().working, 0.5625 + 1e-6, 0.5625 - 1e-3);
  CHECK_FALSE(b.path.back().admissible);
  bool flip = false;
  for (const TrackEvent& ev : b.events) flip = flip || ev.kind == "sheet-flip";
  CHECK(flip);
  // Below T+ the root is a resonance: not an eigenvalue of the gap search.
  CHECK(nontrivial_gamma_roots(1.0, 0.5625 - 1e-3, 2.0).empty());

  // Through the Kolokolov point in s = Lambda^2.
  const Complex s0 = std::pow(lambda_pm(1.0, 0.74, 2.0).plus, 2);
  const TrackResult c = track_root(gamma_square_family(1.0, 2.0), s0, 0.74, 0.76);
  CHECK(c.path.back().working.real() < 0.0);  // Lambda imaginary: real lambda pair
  CHECK(std::abs(c.path.back().Lambda - lambda_pm(1.0, 0.76, 2.0).plus) < 1e-9);

  // epsilon continuation of the parity-breaking root.
  const TrackResult e = track_root(broken_family(1.0, 0.95, 1.0), 1.9, 0.0, 0.05);
  for (std::size_t i = 1; i < e.path.size(); ++i) CHECK(e.path[i].Lambda.imag() < 0.0);
}

TEST_CASE("eigenvalue pair merging into the origin at Omega") {
  // kappa = 5: Omega = 3/5. At Omega the pair sits in the origin.
  const RootSearch at = find_gamma_roots(1.0, 0.6, 5.0);
  REQUIRE(!at.roots.empty());
  CHECK(at.roots.front().tag == "zero");
  CHECK(at.roots.front().multiplicity == 4);
  CHECK(nontrivial_gamma_roots(1.0, 0.6, 5.0).empty());
  // Close to Omega the small pair is still resolved against the closed form.
  for (double w : {0.6 - 1e-9, 0.6 + 1e-9, 0.6 + 1e-5}) {
    const LambdaPM lp = lambda_pm(1.0, w, 5.0);
    REQUIRE(lp.exists);
    const auto roots = nontrivial_gamma_roots(1.0, w, 5.0);
    REQUIRE(roots.size() == 2);
    CHECK(has_root(roots, lp.plus, 1e-9));
    CHECK(has_root(roots, lp.minus, 1e-9));
  }
}
