// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "doctest.h"
#include "pointsoler/reports.hpp"

using namespace pointsoler;

TEST_CASE("float formatting") {
  CHECK(format_e(0.5) == "5.000000000000e-01");
  CHECK(format_e(-1234.5) == "-1.234500000000e+03");
}

TEST_CASE("classification JSON: schema, fields, round trip") {
  const SpectralClassification c = classify(1.0, 0.8, 2.0);
  const std::string text = canonical_json(to_json(c));
  const Json parsed = Json::parse(text);
  CHECK(parsed["schema"] == 1);
  CHECK(parsed["region"]["code"] == "4f-real");
  CHECK(parsed["eigenvalues"].size() == 5);
  CHECK(parsed["essential"]["description"] == "imaginary-axis-outside-gap");
  CHECK(parsed["thresholds"]["TwoOmega"]["valid"] == false);
  // emit -> parse -> emit is byte-identical.
  CHECK(canonical_json(parsed) == text);
  CHECK(text.find("2.160432129643e-01") != std::string::npos);

  const Json whole = to_json(classify(1.0, 0.0, -1.0));
  CHECK(whole["region"]["code"] == "4b");
  CHECK(whole["essential"]["description"] == "whole-plane");
  // Undefined thresholds serialize as null.
  const Json k0 = to_json(classify(1.0, 0.3, 0.0));
  CHECK(k0["thresholds"]["Omega"]["value"].is_null());
}

TEST_CASE("root and perturbation JSON round trip") {
  const RootSearch s = find_gamma_roots(1.0, 0.7, 2.0);
  const std::string a = canonical_json(to_json(s, 1.0));
  CHECK(canonical_json(Json::parse(a)) == a);
  const std::string b = canonical_json(to_json(zeta_parity_broken(1.0, 0.95, 1.0, 0.05)));
  CHECK(canonical_json(Json::parse(b)) == b);
  CHECK(Json::parse(b)["unstable"] == true);
}

TEST_CASE("grid parsing") {
  const PlaneGrid g = parse_grid("-2:2:400,-1:1:400", 1.0);
  CHECK(g.n_kappa == 400);
  CHECK(g.kappa_at(0) == doctest::Approx(-1.995));
  CHECK(g.omega_at(399) == doctest::Approx(0.9975));
  CHECK(parse_grid("-1:1:10,-0.5:0.5:4", 2.0).omega_max == doctest::Approx(1.0));
  CHECK_THROWS_AS(parse_grid("2:-2:10,-1:1:10", 1.0), DomainError);
  CHECK_THROWS_AS(parse_grid("-2:2:1,-1:1:10", 1.0), DomainError);
  CHECK_THROWS_AS(parse_grid("-2:2:10,-1.5:1:10", 1.0), DomainError);
  CHECK_THROWS_AS(parse_grid("-2:2:10", 1.0), DomainError);
  CHECK_THROWS_AS(parse_grid("-2:2:10,-1:1:10x", 1.0), DomainError);
}

TEST_CASE("diagram: determinism, consistency and rendering") {
  const PlaneGrid g = parse_grid("-2:2:80,-1:1:60", 1.0);
  const auto c1 = compute_diagram(1.0, g, 1);
  const auto c4 = compute_diagram(1.0, g, 4);
  const std::string csv = diagram_csv(c1);
  CHECK(csv == diagram_csv(c4));
  CHECK(csv.rfind("kappa,omega,region_code,lambda_re,lambda_im,stable,boundary_flags\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  for (const DiagramCell& c : c1) {
    const SpectralClassification s = classify(1.0, c.omega, c.kappa);
    CHECK(c.region_code == s.region.code);
    CHECK(c.stable == s.spectrally_stable);
    if (!c.stable && !c.whole_plane) {
      // Unstable cells lie on the real-pair side of Omega.
      const double Om = (c.kappa + 1.0) / (2.0 * c.kappa);
      CHECK((c.kappa > 1.0 ? c.omega > Om : (c.kappa < -1.0 ? c.omega > Om : c.omega < Om)));
      CHECK(c.lambda_re > 0.0);
    }
  }
  const std::string svg = diagram_svg(1.0, g, c1);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);  // the (-1, 0) marker
  CHECK(svg.find("Omega") != std::string::npos);
  const Json j = diagram_json(1.0, g, c1);
  CHECK(j["cells"].size() == c1.size());
}
