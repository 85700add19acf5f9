// Copyright 2026 The pointsoler Authors
// SPDX-License-Identifier: Apache-2.0
//
// pointsoler: command-line front end.
//
//   pointsoler classify --m 1 --omega 0.8 --kappa 2
//   pointsoler diagram  --grid -2:2:400,-1:1:400 --format svg --out fig1.svg
//   pointsoler roots    --m 1 --omega 0.7 --kappa 2 --rect -1 1 -1 1
//   pointsoler perturb  --model broken --omega 0.95 --kappa 1 --epsilon 0.05
//   pointsoler verify
//
// Exit codes: 0 success, 1 failed verification criterion, 2 domain or
// configuration error, 3 solver failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pointsoler/dispersion_rootfinder.hpp"
#include "pointsoler/parallel.hpp"
#include "pointsoler/perturbation_analysis.hpp"
#include "pointsoler/reports.hpp"
#include "pointsoler/solitary_waves.hpp"
#include "pointsoler/spectrum_closed_form.hpp"
#include "pointsoler/verification.hpp"

namespace ps = pointsoler;

namespace {

struct RunConfig {
  std::string model = "soler";
  double m = 1.0;
  std::optional<double> omega;
  std::optional<double> kappa;
  double epsilon = 0.0;
  std::string out;
  std::string format;
  std::optional<double> tol;
  std::string grid = "-2:2:400,-1:1:400";
  int jobs = 0;
  std::vector<double> rect;
  std::vector<double> omegas;
  std::vector<double> epsilons;
  int criterion = 0;
};

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw ps::ConfigError(std::string("missing required flag ") + flag);
  return *v;
}

void validate(const RunConfig& c) {
  if (!(c.m > 0.0) || !std::isfinite(c.m)) throw ps::ConfigError("m must be positive");
  if (c.model != "soler" && c.model != "parity" && c.model != "broken") {
    throw ps::ConfigError("model must be one of soler, parity, broken");
  }
  if (!c.format.empty() && c.format != "csv" && c.format != "json" && c.format != "svg") {
    throw ps::ConfigError("format must be one of csv, json, svg");
  }
  if (c.tol && !(*c.tol > 0.0)) throw ps::ConfigError("tol must be positive");
}

void write_output(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw ps::ConfigError("cannot open output file " + c.out);
  f << text;
}

std::string format_or(const RunConfig& c, const std::string& def) {
  return c.format.empty() ? def : c.format;
}

int jobs_of(const RunConfig& c) { return c.jobs > 0 ? c.jobs : ps::default_jobs(); }

ps::RootFinderOptions finder_options(const RunConfig& c) {
  ps::RootFinderOptions o;
  o.derivative_scale = c.m;
  o.jobs = jobs_of(c);
  if (c.tol) o.tol = *c.tol;
  return o;
}

ps::PerturbationOptions perturbation_options(const RunConfig& c) {
  ps::PerturbationOptions o;
  if (c.tol) o.tol = *c.tol;
  return o;
}

int cmd_classify(const RunConfig& c) {
  if (c.model != "soler") throw ps::ConfigError("classify applies to the soler model only");
  if (format_or(c, "json") != "json") throw ps::ConfigError("classify supports --format json only");
  const ps::SpectralClassification cl = ps::classify(c.m, need(c.omega, "--omega"), need(c.kappa, "--kappa"));
  write_output(c, ps::canonical_json(ps::to_json(cl)));
  return 0;
}

int cmd_diagram(const RunConfig& c) {
  if (c.model != "soler") throw ps::ConfigError("diagram applies to the soler model only");
  const ps::PlaneGrid g = ps::parse_grid(c.grid, c.m);
  const std::vector<ps::DiagramCell> cells = ps::compute_diagram(c.m, g, jobs_of(c));
  const std::string fmt = format_or(c, "csv");
  if (fmt == "csv") {
    write_output(c, ps::diagram_csv(cells));
  } else if (fmt == "json") {
    write_output(c, ps::canonical_json(ps::diagram_json(c.m, g, cells)));
  } else {
    write_output(c, ps::diagram_svg(c.m, g, cells));
  }
  return 0;
}

int cmd_roots(const RunConfig& c) {
  if (format_or(c, "json") != "json") throw ps::ConfigError("roots supports --format json only");
  const double omega = need(c.omega, "--omega");
  const double kappa = need(c.kappa, "--kappa");
  ps::require_gap({c.m, omega});
  if (!c.rect.empty() && c.rect.size() != 4) throw ps::ConfigError("--rect takes four numbers");
  ps::Rect rect;
  if (c.rect.size() == 4) {
    rect = {c.rect[0] * c.m, c.rect[1] * c.m, c.rect[2] * c.m, c.rect[3] * c.m};
    if (!(rect.re_max > rect.re_min) || !(rect.im_max > rect.im_min)) {
      throw ps::DomainError("--rect bounds must be increasing");
    }
  }
  const ps::RootFinderOptions opt = finder_options(c);
  ps::Json j;
  j["schema"] = ps::kSchemaVersion;
  j["kind"] = "roots";
  j["model"] = c.model;
  j["m"] = c.m;
  j["omega"] = omega;
  j["kappa"] = kappa;
  ps::RootSearch search;
  if (c.model == "soler") {
    search = ps::find_gamma_roots(c.m, omega, kappa, c.rect.empty() ? nullptr : &rect, &opt);
    if (c.rect.empty()) rect = ps::gap_rectangle(c.m, omega);
  } else {
    j["epsilon"] = c.epsilon;
    if (c.rect.empty()) {
      // A box around 2 omega that stays clear of all branch points.
      const double h = 0.5 * std::min(c.m - omega, 3.0 * omega - c.m);
      if (!(h > 0.0)) throw ps::ConfigError("no default box for omega <= m/3; pass --rect");
      rect = {2.0 * omega - h, 2.0 * omega + h, -h, h};
    }
    ps::Dispersion d;
    if (c.model == "parity") {
      const ps::SolitaryWave w =
          ps::solve_parity_preserved({c.m, omega}, ps::Nonlinearity::pure_power(kappa), c.epsilon);
      d.f = [w](ps::Complex L) {
        return ps::det_parity_preserved(w, L, ps::Subspace::odd_even_odd_even);
      };
    } else {
      const ps::BrokenWave w = ps::solve_parity_broken({c.m, omega}, c.epsilon, kappa);
      d.f = [w](ps::Complex L) { return ps::det_parity_broken(w, L); };
      d.scale = [w](ps::Complex L) { return ps::det_parity_broken_scale(w, L); };
    }
    ps::GridSpec gs;
    search = ps::find_roots(d, rect, gs, opt);
  }
  ps::Json r;
  r["re_min"] = rect.re_min;
  r["re_max"] = rect.re_max;
  r["im_min"] = rect.im_min;
  r["im_max"] = rect.im_max;
  j["rect"] = r;
  j["search"] = ps::to_json(search, c.m);
  write_output(c, ps::canonical_json(j));
  return 0;
}

int cmd_perturb(const RunConfig& c) {
  if (c.model == "soler") throw ps::ConfigError("perturb needs --model parity or --model broken");
  const double kappa = need(c.kappa, "--kappa");
  const ps::PerturbationOptions opt = perturbation_options(c);
  const bool study = !c.omegas.empty() || !c.epsilons.empty();
  if (study) {
    if (c.model != "broken") throw ps::ConfigError("scaling studies apply to --model broken");
    std::vector<double> omegas = c.omegas;
    std::vector<double> epsilons = c.epsilons;
    if (omegas.empty()) omegas.push_back(need(c.omega, "--omega"));
    if (epsilons.empty()) epsilons.push_back(c.epsilon);
    const ps::ScalingStudy s = ps::scaling_study(c.m, kappa, omegas, epsilons, opt);
    if (format_or(c, "json") == "csv") {
      std::string out = "omega,epsilon,mu,zeta_re,zeta_im,log_eps,log_mu,log_abs_im_zeta,prefactor,prefactor_ratio\n";
      for (const ps::ScalingRow& r : s.rows) {
        out += ps::format_e(r.omega) + ',' + ps::format_e(r.epsilon) + ',' + ps::format_e(r.mu) + ',' +
               ps::format_e(r.zeta.real()) + ',' + ps::format_e(r.zeta.imag()) + ',' +
               ps::format_e(r.log_eps) + ',' + ps::format_e(r.log_mu) + ',' +
               ps::format_e(r.log_abs_im_zeta) + ',' + ps::format_e(r.prefactor) + ',' +
               ps::format_e(r.prefactor_ratio) + '\n';
      }
      write_output(c, out);
      return 0;
    }
    if (format_or(c, "json") != "json") throw ps::ConfigError("perturb supports csv or json");
    ps::Json j;
    j["schema"] = ps::kSchemaVersion;
    j["kind"] = "scaling_study";
    j["model"] = c.model;
    j["study"] = ps::to_json(s);
    write_output(c, ps::canonical_json(j));
    return 0;
  }
  if (format_or(c, "json") != "json") throw ps::ConfigError("perturb supports --format json here");
  const double omega = need(c.omega, "--omega");
  const ps::PerturbationResult p =
      c.model == "parity" ? ps::zeta_parity_preserved(c.m, omega, kappa, c.epsilon, opt)
                          : ps::zeta_parity_broken(c.m, omega, kappa, c.epsilon, opt);
  ps::Json j;
  j["schema"] = ps::kSchemaVersion;
  j["kind"] = "perturbation";
  j["result"] = ps::to_json(p);
  write_output(c, ps::canonical_json(j));
  if (!p.regime_verified) {
    std::cerr << "warning: omega below the validated regime (omega >= 0.9 m)\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& c) {
  const int jobs = jobs_of(c);
  std::vector<ps::CriterionResult> results;
  auto print = [](const ps::CriterionResult& r) {
    std::cout << ps::format_result(r) << std::endl;
  };
  if (c.criterion != 0) {
    results.push_back(ps::run_criterion(c.criterion, jobs));
    print(results.back());
  } else {
    results = ps::run_all_criteria(jobs, print);
  }
  int failed = 0;
  for (const ps::CriterionResult& r : results) failed += r.passed ? 0 : 1;
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--m", c.m, "mass m > 0");
  sub->add_option("--omega", c.omega, "frequency in (-m, m)");
  sub->add_option("--kappa", c.kappa, "nonlinearity exponent");
  sub->add_option("--epsilon", c.epsilon, "perturbation strength");
  sub->add_option("--model", c.model, "soler, parity or broken");
  sub->add_option("--out", c.out, "output file (default: stdout)");
  sub->add_option("--format", c.format, "csv, json or svg");
  sub->add_option("--tol", c.tol, "root finder / Newton relative residual target");
  sub->add_option("--grid", c.grid, "kmin:kmax:n,wmin:wmax:n (omega in units of m)");
  sub->add_option("--jobs", c.jobs, "worker threads (default: POINTSOLER_JOBS or all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral stability of solitary waves of the point Soler model"};
  app.require_subcommand(1);
  RunConfig cfg;
  CLI::App* classify = app.add_subcommand("classify", "closed-form spectral classification (JSON)");
  CLI::App* diagram = app.add_subcommand("diagram", "stability diagram over a (kappa, omega) grid");
  CLI::App* roots = app.add_subcommand("roots", "roots of the dispersion function in a rectangle");
  CLI::App* perturb = app.add_subcommand("perturb", "perturbed models: eigenvalue shift near 2 omega");
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  for (CLI::App* s : {classify, diagram, roots, perturb, verify}) add_common(s, cfg);
  roots->add_option("--rect", cfg.rect, "re_min re_max im_min im_max (units of m)")->expected(4);
  perturb->add_option("--omegas", cfg.omegas, "frequency list for a scaling study")->delimiter(',');
  perturb->add_option("--epsilons", cfg.epsilons, "epsilon list for a scaling study")->delimiter(',');
  verify->add_option("--criterion", cfg.criterion, "run a single criterion (1..10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    validate(cfg);
    if (*classify) return cmd_classify(cfg);
    if (*diagram) return cmd_diagram(cfg);
    if (*roots) return cmd_roots(cfg);
    if (*perturb) return cmd_perturb(cfg);
    if (*verify) return cmd_verify(cfg);
  } catch (const ps::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ps::NoSolutionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
