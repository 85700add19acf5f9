// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "pointsoler/perturbation_analysis.hpp"
#include "pointsoler/solitary_waves.hpp"

using namespace pointsoler;

TEST_CASE("parity-preserving shift") {
  const PerturbationResult z0 = zeta_parity_preserved(1.0, 0.9, 1.0, 0.0);
  CHECK(std::abs(z0.zeta) < 1e-15);

  const PerturbationResult p = zeta_parity_preserved(1.0, 0.9, 1.0, 0.01);
  const double lead = 2.0 * 0.01 * (1.0 - 0.81);
  CHECK(p.zeta.real() == doctest::Approx(lead).epsilon(5.0 * 0.01));
  CHECK(p.zeta.real() == doctest::Approx(0.0038).epsilon(0.05));
  CHECK(p.zeta.imag() == 0.0);
  CHECK(std::abs(*p.newton_zeta - p.zeta) < 1e-10);
  CHECK_FALSE(p.unstable);
  CHECK(p.regime_verified);
  CHECK(p.residual < 1e-12);

  for (double eps : {0.01, -0.01, 0.05, -0.05}) {
    const PerturbationResult q = zeta_parity_preserved(1.0, 0.95, 1.0, eps);
    CHECK(std::abs(q.newton_zeta->imag()) < 1e-10);
  }
  CHECK_THROWS_AS(zeta_parity_preserved(1.0, 0.9, 1.0, 0.5), DomainError);
  CHECK_FALSE(zeta_parity_preserved(1.0, 0.5, 1.0, 0.01).regime_verified);
}

TEST_CASE("parity-preserving shift: small-epsilon slope by Richardson extrapolation") {
  const double w = 0.9;
  auto ratio = [&](double e) { return zeta_parity_preserved(1.0, w, 1.0, e).zeta.real() / e; };
  const double r3 = ratio(1e-3), r4 = ratio(1e-4), r5 = ratio(1e-5);
  // Linear Richardson in epsilon: r(e) = r0 + c e.
  const double r0a = (10.0 * r4 - r3) / 9.0;
  const double r0b = (10.0 * r5 - r4) / 9.0;
  const double target = 2.0 * (1.0 - w * w);
  CHECK(r4 == doctest::Approx(target).epsilon(0.01));
  CHECK(r0a == doctest::Approx(target).epsilon(1e-5));
  CHECK(r0b == doctest::Approx(target).epsilon(1e-5));
}

TEST_CASE("parity-breaking shift") {
  const PerturbationResult z0 = zeta_parity_broken(1.0, 0.95, 1.0, 0.0);
  CHECK(std::abs(z0.zeta) < 1e-15);
  CHECK_FALSE(z0.unstable);

  const PerturbationResult p = zeta_parity_broken(1.0, 0.95, 1.0, 0.05);
  CHECK(p.zeta.imag() < 0.0);
  CHECK(p.lambda.real() > 0.0);
  CHECK(p.unstable);
  CHECK(p.residual < 1e-10);

  const PerturbationResult q = zeta_parity_broken(1.0, 0.95, 1.0, -0.05);
  CHECK(q.zeta.imag() < 0.0);
  CHECK(q.zeta.imag() == doctest::Approx(p.zeta.imag()).epsilon(1e-6));

  // Leading order Im zeta ~ -4 sqrt(2) kappa^2 eps^2 mu^3 m^2 / omega.
  const PerturbationResult r = zeta_parity_broken(1.0, 0.999, 1.0, 0.001);
  CHECK(r.zeta.imag() / broken_leading_order_im_zeta(1.0, 0.999, 1.0, 0.001) ==
        doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("scaling study") {
  std::vector<double> omegas;
  for (double mu : {0.05, 0.1, 0.15}) omegas.push_back(mu_to_omega(1.0, mu));
  CHECK(geometry({1.0, omegas[1]}).mu == doctest::Approx(0.1).epsilon(1e-14));
  const ScalingStudy sm = scaling_study(1.0, 1.0, omegas, {0.01});
  REQUIRE(sm.slope_mu);
  CHECK_FALSE(sm.slope_eps);
  CHECK(*sm.slope_mu == doctest::Approx(3.0).epsilon(0.1 / 3.0));

  const ScalingStudy se = scaling_study(1.0, 1.0, {0.99}, {0.005, 0.01, 0.02});
  REQUIRE(se.slope_eps);
  CHECK(*se.slope_eps == doctest::Approx(2.0).epsilon(0.05 / 2.0));
  for (const ScalingRow& row : se.rows) {
    CHECK(row.prefactor > 0.0);
    CHECK(row.prefactor_ratio == doctest::Approx(1.0).epsilon(0.2));
  }
  // Joint fit over both variables.
  const ScalingStudy both = scaling_study(1.0, 2.0, {mu_to_omega(1.0, 0.02), mu_to_omega(1.0, 0.04)},
                                          {0.005, 0.01});
  REQUIRE(both.slope_eps);
  REQUIRE(both.slope_mu);
  CHECK(std::abs(*both.slope_eps - 2.0) < 0.05);
  CHECK(std::abs(*both.slope_mu - 3.0) < 0.1);
  CHECK_THROWS_AS(scaling_study(1.0, 1.0, {0.99}, {0.01, 0.02}), DomainError);
}
