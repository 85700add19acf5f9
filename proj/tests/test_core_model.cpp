// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "pointsoler/core_model.hpp"

using namespace pointsoler;

TEST_CASE("geometry: decay rate and mu") {
  const WaveGeometry g0 = geometry({1.0, 0.0});
  CHECK(g0.varkappa == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g0.mu == doctest::Approx(1.0).epsilon(1e-15));

  const WaveGeometry g = geometry({1.0, 0.8});
  CHECK(g.varkappa == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(g.mu == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // mu (m + omega) = varkappa.
  CHECK(g.mu * 1.8 == doctest::Approx(g.varkappa).epsilon(1e-14));
}

TEST_CASE("geometry: frequencies outside the gap are rejected") {
  CHECK_THROWS_AS(geometry({1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(geometry({1.0, -1.5}), DomainError);
  CHECK_THROWS_AS(geometry({0.0, 0.0}), DomainError);
  CHECK_THROWS_WITH(require_gap({1.0, 1.0}), "omega outside (-m, m)");
}

TEST_CASE("nonlinearity: pure power values and derivatives") {
  const FValue a = Nonlinearity::pure_power(1.0).eval(-3.0);
  CHECK(a.value == doctest::Approx(3.0));
  CHECK(a.derivative == doctest::Approx(-1.0));

  const FValue b = Nonlinearity::pure_power(2.0).eval(0.5);
  CHECK(b.value == doctest::Approx(0.25));
  CHECK(b.derivative == doctest::Approx(1.0));

  // The derivative of |tau|^{1/2} is singular at the origin.
  CHECK_THROWS_AS(Nonlinearity::pure_power(0.5).eval(0.0), DomainError);
  CHECK(Nonlinearity::pure_power(0.5).value(0.0) == 0.0);
}

TEST_CASE("nonlinearity: custom functions") {
  const Nonlinearity nl = Nonlinearity::custom([](double t) { return std::exp(t) - 1.0; },
                                               [](double t) { return std::exp(t); });
  CHECK_FALSE(nl.is_pure_power());
  CHECK(nl.eval(0.3).value == doctest::Approx(std::exp(0.3) - 1.0));
  CHECK(nl.eval(0.3).derivative == doctest::Approx(std::exp(0.3)));
  CHECK_THROWS_AS(nl.kappa(), ConfigError);
  CHECK_THROWS_AS(nl.require_pure_power("test"), ConfigError);
}

TEST_CASE("well-posedness flag and principal square root") {
  CHECK(kappa_outside_wellposedness(-0.5));
  CHECK_FALSE(kappa_outside_wellposedness(0.5));
  // Negative reals take the limit from the upper half-plane, including -0 imaginary parts.
  const Complex s = principal_sqrt(Complex(-4.0, -0.0));
  CHECK(s.real() == doctest::Approx(0.0));
  CHECK(s.imag() == doctest::Approx(2.0));
  const Complex z(-1.0, -2.0);
  CHECK(principal_sqrt(z).real() >= 0.0);
  CHECK(std::abs(principal_sqrt(z) * principal_sqrt(z) - z) < 1e-15);
}
