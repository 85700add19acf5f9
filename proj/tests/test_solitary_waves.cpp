// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "pointsoler/solitary_waves.hpp"

using namespace pointsoler;

TEST_CASE("type1 amplitude: closed forms") {
  const auto w0 = solve_amplitude_type1({1.0, 0.0}, Nonlinearity::pure_power(1.0));
  CHECK(w0.alpha == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  const auto w1 = solve_amplitude_type1({1.0, 0.8}, Nonlinearity::pure_power(2.0));
  CHECK(w1.alpha == doctest::Approx(std::pow(2.0 / 3.0, 0.25)).epsilon(1e-14));
  CHECK(w1.alpha == doctest::Approx(0.9036).epsilon(1e-4));
  // f(alpha^2) = 2 mu.
  CHECK(std::pow(w1.alpha * w1.alpha, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  const auto w2 = solve_amplitude_type1({1.0, 0.99}, Nonlinearity::pure_power(1.0));
  CHECK(w2.alpha * w2.alpha == doctest::Approx(2.0 * std::sqrt(0.01 / 1.99)).epsilon(1e-14));
  CHECK(w2.alpha * w2.alpha == doctest::Approx(0.14178).epsilon(1e-4));
}

TEST_CASE("type1 amplitude: custom nonlinearity by bisection") {
  const Nonlinearity nl = Nonlinearity::custom([](double t) { return t + t * t; },
                                               [](double t) { return 1.0 + 2.0 * t; });
  const auto w = solve_amplitude_type1({1.0, 0.3}, nl);
  const double mu = geometry({1.0, 0.3}).mu;
  const double tau = w.alpha * w.alpha;
  CHECK(tau + tau * tau == doctest::Approx(2.0 * mu).epsilon(1e-12));
  CHECK(jump_residual(w, nl) < 1e-11);

  const Nonlinearity bounded = Nonlinearity::custom([](double t) { return std::tanh(t); },
                                                    [](double t) { return 1.0 / std::cosh(t) / std::cosh(t); });
  // tanh never reaches 2 mu >= 1 for omega <= 0.6.
  CHECK_THROWS_AS(solve_amplitude_type1({1.0, 0.5}, bounded), NoSolutionError);
}

TEST_CASE("profiles: decay, mean value at the origin, parity map") {
  const Nonlinearity nl = Nonlinearity::pure_power(2.0);
  const auto w = solve_amplitude_type1({1.0, 0.8}, nl);
  const Spinor at0 = profile(w, 0.0);
  CHECK(at0[0].real() == doctest::Approx(w.alpha));
  CHECK(std::abs(at0[1]) == doctest::Approx(0.0));
  const Spinor far = profile(w, 40.0);
  CHECK(std::abs(far[0]) < 1e-9);
  // Decay rate varkappa.
  const double r = std::abs(profile(w, 3.0)[0]) / std::abs(profile(w, 2.0)[0]);
  CHECK(r == doctest::Approx(std::exp(-0.6)).epsilon(1e-13));
  CHECK(jump_residual(w, nl) < 1e-11);

  // Type2 at omega equals sigma_1 conj(Type1 at -omega) pointwise.
  const auto t2 = solve_amplitude_type2({1.0, 0.4}, nl);
  const auto t1m = solve_amplitude_type1({1.0, -0.4}, nl);
  CHECK(jump_residual(t2, nl) < 1e-11);
  for (double x : {-2.0, -0.3, 0.0, 0.1, 1.7}) {
    const Spinor a = profile(t2, x);
    const Spinor b = profile(t1m, x);
    CHECK(std::abs(a[0] - std::conj(b[1])) < 1e-14);
    CHECK(std::abs(a[1] - std::conj(b[0])) < 1e-14);
  }
}

TEST_CASE("zero-frequency wave") {
  const Nonlinearity nl = Nonlinearity::pure_power(1.0);
  // |a|^2 - |b|^2 = 2.
  const auto w = make_zero_frequency(1.0, nl, Complex(std::sqrt(3.0), 0.0), Complex(0.0, 1.0));
  CHECK(jump_residual(w, nl) < 1e-11);
  CHECK_THROWS(make_zero_frequency(1.0, nl, Complex(1.0), Complex(0.5)));
}

TEST_CASE("charge and its frequency derivative") {
  const Nonlinearity k2 = Nonlinearity::pure_power(2.0);
  CHECK(std::abs(dQ_domega({1.0, 0.75}, k2)) < 1e-14);
  // Below Omega = 3/4 the charge decreases with omega (linearly stable
  // side); above it the real eigenvalue pair appears and dQ/domega > 0.
  CHECK(dQ_domega({1.0, 0.7}, k2) < 0.0);
  CHECK(dQ_domega({1.0, 0.8}, k2) > 0.0);
  auto fd = [](const Nonlinearity& nl, double w) {
    const double h = 1e-5;
    return (charge_Q(solve_amplitude_type1({1.0, w + h}, nl)) -
            charge_Q(solve_amplitude_type1({1.0, w - h}, nl))) / (2.0 * h);
  };
  for (double w : {0.7, 0.8}) CHECK(dQ_domega({1.0, w}, k2) == doctest::Approx(fd(k2, w)).epsilon(1e-7));
  const Nonlinearity k1 = Nonlinearity::pure_power(1.0);
  for (double w : {-0.9, -0.3, 0.0, 0.5, 0.95}) {
    CHECK(dQ_domega({1.0, w}, k1) < 0.0);
    CHECK(dQ_domega({1.0, w}, k1) == doctest::Approx(fd(k1, w)).epsilon(1e-7));
  }
  // Q = alpha^2 (1 + mu^2) / varkappa equals the L^2 norm of the profile (trapezoid oracle).
  const auto w = solve_amplitude_type1({1.0, 0.3}, k2);
  double q = 0.0;
  const double h = 1e-3;
  for (int i = 1; i < 40000; ++i) {
    const Spinor p = profile(w, i * h);
    q += 2.0 * h * (std::norm(p[0]) + std::norm(p[1]));
  }
  q += h * std::norm(profile_limit(w, 1)[0]) + h * std::norm(profile_limit(w, 1)[1]);
  CHECK(charge_Q(w) == doctest::Approx(q).epsilon(1e-6));
  CHECK_THROWS(dQ_domega({1.0, 0.3}, Nonlinearity::pure_power(0.0)));
}

TEST_CASE("Kolokolov zero of dQ/domega") {
  for (double k : {-2.0, -0.5, 1.5, 2.0, 5.0}) {
    const double Omega = (k + 1.0) / (2.0 * k);
    if (std::abs(Omega) >= 1.0) continue;
    const Nonlinearity nl = Nonlinearity::pure_power(k);
    double a = Omega - 0.05, b = Omega + 0.05;
    double fa = dQ_domega({1.0, a}, nl);
    for (int i = 0; i < 100; ++i) {
      const double c = 0.5 * (a + b);
      const double fc = dQ_domega({1.0, c}, nl);
      if ((fc < 0) == (fa < 0)) { a = c; fa = fc; } else { b = c; }
    }
    CHECK(std::abs(0.5 * (a + b) - Omega) < 1e-10);
  }
}

TEST_CASE("parity-preserving wave") {
  const Nonlinearity k1 = Nonlinearity::pure_power(1.0);
  const auto base = solve_amplitude_type1({1.0, 0.8}, k1);
  const auto w0 = solve_parity_preserved({1.0, 0.8}, k1, 0.0);
  CHECK(w0.alpha == doctest::Approx(base.alpha).epsilon(1e-15));
  const auto w = solve_parity_preserved({1.0, 0.8}, k1, 0.1);
  CHECK(w.alpha * w.alpha == doctest::Approx((2.0 / 3.0) / 1.1 / 1.1).epsilon(1e-14));
  CHECK(w.alpha * w.alpha == doctest::Approx(0.5510).epsilon(1e-4));
  // (1 + eps) f((1 + eps) alpha^2) = 2 mu.
  CHECK(std::abs(1.1 * (1.1 * w.alpha * w.alpha) - 2.0 / 3.0) < 1e-12);
  CHECK(jump_residual(w, k1) < 1e-11);
  CHECK_THROWS(solve_parity_preserved({1.0, 0.8}, k1, -1.0));
}

TEST_CASE("parity-breaking wave") {
  const auto b0 = solve_parity_broken({1.0, 0.95}, 0.0, 1.0);
  const auto t1 = solve_amplitude_type1({1.0, 0.95}, Nonlinearity::pure_power(1.0));
  CHECK(b0.wave.beta == 0.0);
  CHECK(b0.wave.f_at_wave == doctest::Approx(2.0 * t1.geometry.mu).epsilon(1e-14));
  for (double x : {-1.0, 0.0, 0.5}) {
    CHECK(std::abs(profile(b0.wave, x)[0] - profile(t1, x)[0]) < 1e-14);
    CHECK(std::abs(profile(b0.wave, x)[1] - profile(t1, x)[1]) < 1e-14);
  }

  const double eps = 0.05;
  const auto b = solve_parity_broken({1.0, 0.95}, eps, 1.0);
  const double mu = b.wave.geometry.mu;
  CHECK(b.wave.f_at_wave ==
        doctest::Approx(2.0 * mu).epsilon(4.0 * eps * eps * mu * mu));
  const double ratio = b.wave.beta / b.wave.alpha;
  CHECK(ratio == doctest::Approx(-eps * mu / (1.0 - mu * mu)).epsilon(4.0 * eps * eps * mu * mu + 1e-3));
  CHECK(ratio == doctest::Approx(-0.008216).epsilon(1e-3));
  CHECK(jump_residual(b.wave, Nonlinearity::pure_power(1.0)) < 1e-11);
  // Y^2 = X Z and F = f + Y.
  const BrokenWaveConstants& c = b.constants;
  CHECK(c.Y * c.Y == doctest::Approx(c.X * c.Z).epsilon(1e-12));
  CHECK(c.F == doctest::Approx(b.wave.f_at_wave + c.Y).epsilon(1e-14));

  // X, Y, Z -> 4 kappa mu as eps, mu -> 0.
  for (double kappa : {1.0, 2.0}) {
    const auto s = solve_parity_broken({1.0, 0.9999}, 1e-3, kappa);
    const double m4 = 4.0 * kappa * s.wave.geometry.mu;
    CHECK(s.constants.X / m4 == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(s.constants.Y / m4 == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(s.constants.Z / m4 == doctest::Approx(1.0).epsilon(1e-3));
  }
  // The discriminant of the amplitude quadratic fails for large eps mu.
  CHECK_THROWS_AS(solve_parity_broken({1.0, 0.0}, 0.6, 1.0), DomainError);
}

TEST_CASE("perturbed waves converge to type1 with order at least one") {
  const Nonlinearity k1 = Nonlinearity::pure_power(1.0);
  const double a0 = solve_amplitude_type1({1.0, 0.9}, k1).alpha;
  double prev_p = 0.0, prev_b = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double ep = std::abs(solve_parity_preserved({1.0, 0.9}, k1, eps).alpha - a0);
    const double eb = std::abs(solve_parity_broken({1.0, 0.9}, eps, 1.0).wave.alpha - a0);
    if (prev_p > 0.0) {
      CHECK(std::log10(prev_p / ep) >= 0.99);
      CHECK(std::log10(prev_b / eb) >= 0.99);
    }
    prev_p = ep;
    prev_b = eb;
  }
}
