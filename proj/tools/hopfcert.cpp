// SPDX-License-Identifier: Apache-2.0
//
// hopfcert: certify, scan-m, example, verify, catalog.
// Exit status: 0 certified / success, 2 violated, 3 invalid input,
// 4 unverifiable at resolution.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hopfcert/certifier.hpp"
#include "hopfcert/config.hpp"
#include "hopfcert/csv.hpp"
#include "hopfcert/errors.hpp"
#include "hopfcert/oracle.hpp"

namespace fs = std::filesystem;
using namespace hopfcert;

namespace {

constexpr int kInvalid = 3;

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << text;
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

std::string fmt(double x) { return csv::format_number(x); }

int run_certify(const fs::path& config_path, const std::string& out_override, bool quiet) {
  const config::Config cfg = config::load(config_path);
  const fs::path out = out_override.empty() ? cfg.output.certificate : fs::path(out_override);
  const certifier::Certificate cert = certifier::certify(cfg.spec);
  write_text(out, cert.serialize());

  if (cert.domain) {
    ensure_parent(cfg.output.polygon);
    csv::write_polygon(cfg.output.polygon, cert.domain->boundary);
    if (cert.verdict != "invalid_input") {
      spectral::RestrictedFamily rf(cfg.spec.family, cfg.spec.space, cfg.spec.symmetry);
      std::vector<contour::WindingSample> trace;
      try {
        spectral::n_l(rf, *cert.domain, 1, cfg.spec.tol.winding, &trace);
        ensure_parent(cfg.output.contour);
        csv::write_contour_trace(cfg.output.contour, trace);
      } catch (const Error&) {
        // The certificate already records the failure.
      }
    }
  }
  if (!quiet) {
    std::cout << "verdict: " << cert.verdict << "\n";
    std::cout << "symmetry: " << cert.symmetry << " (order " << cert.symmetry_order << ")\n";
    for (std::size_t i = 0; i < cert.conditions.size(); ++i)
      std::cout << "  P" << i << ": " << certifier::to_string(cert.conditions[i].verdict) << " - "
                << cert.conditions[i].detail << "\n";
    if (cert.t_minus && cert.t_plus)
      std::cout << "t_- = " << *cert.t_minus << ", t_+ = " << *cert.t_plus << "\n";
    if (cert.threshold) std::cout << "threshold N = " << fmt(*cert.threshold) << "\n";
    if (cert.R)
      std::cout << "branch amplitudes [r, R] = [" << fmt(cert.r.value_or(0.0)) << ", "
                << (std::isinf(*cert.R) ? std::string("unbounded") : fmt(*cert.R)) << "]\n";
    for (const auto& d : cert.diagnostics) std::cout << "diagnostic: " << d << "\n";
    std::cout << "certificate: " << out.string() << "\n";
  }
  return certifier::exit_code(cert.verdict);
}

int run_scan(const fs::path& config_path, const std::string& out_override) {
  const config::Config cfg = config::load(config_path);
  spectral::RestrictedFamily rf(cfg.spec.family, cfg.spec.space, cfg.spec.symmetry);
  const auto& s = cfg.scan;
  const auto grid = estimator::scan_m_grid(rf, s.alpha[0], s.alpha[1], s.beta[0], s.beta[1], s.n_alpha,
                                           s.n_beta, cfg.spec.mode, cfg.spec.tol.m_rel_tol);
  const fs::path out = out_override.empty() ? cfg.output.m_grid : fs::path(out_override);
  ensure_parent(out);
  csv::write_m_grid(out, grid);
  std::cout << "M grid " << s.n_alpha << " x " << s.n_beta << " (" << estimator::to_string(cfg.spec.mode)
            << ") written to " << out.string() << "\n";
  return 0;
}

int run_example(const std::string& name, const fs::path& dir, bool run) {
  const auto doc = config::example(name);
  fs::create_directories(dir);
  const fs::path path = dir / (name + ".json");
  write_text(path, doc.dump(2) + "\n");
  std::cout << "config: " << path.string() << "\n";
  if (!run) return 0;
  return run_certify(path, "", false);
}

int run_verify(const fs::path& config_path, const std::string& cert_override) {
  const config::Config cfg = config::load(config_path);
  if (!cfg.field) throw ConfigError("verify needs a preset model with a known nonlinearity");
  const fs::path cert_path = cert_override.empty() ? cfg.output.certificate : fs::path(cert_override);
  std::ifstream in(cert_path);
  if (!in) throw ConfigError("cannot open certificate '" + cert_path.string() + "'");
  certifier::Json cert;
  try {
    cert = certifier::Json::parse(in);
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("certificate '" + cert_path.string() + "' is not valid JSON");
  }
  if (!cert.contains("verdict") || !cert.contains("R") || !cert.contains("domain_d"))
    throw ConfigError("certificate '" + cert_path.string() + "' lacks verdict, R or domain_d");
  if (cert.at("verdict") != "certified") {
    std::cout << "certificate verdict is " << cert.at("verdict").get<std::string>()
              << "; nothing to verify\n";
    return 2;
  }
  const double r_cert = cert.at("r").get<double>();
  const double R_cert = cert.at("R").is_string() ? INFINITY : cert.at("R").get<double>();
  const auto beta_range = cert.at("domain_d").at("beta_range");
  const double bmin = beta_range[0].get<double>(), bmax = beta_range[1].get<double>();

  oracle::ShootingSystem sys;
  sys.rhs = *cfg.field;
  sys.dim = cfg.spec.family.dim();
  const MatrixXd q = group::real_fixed_space(cfg.spec.space, cfg.spec.symmetry.kernel());
  if (q.cols() < sys.dim) sys.basis = q;
  sys.critical_basis = group::fixed_space(cfg.spec.space, cfg.spec.symmetry, 1).columns;

  oracle::ContinuationOptions opt;
  opt.alpha_min = cfg.oracle.alpha_min;
  opt.alpha_max = cfg.oracle.alpha_max;
  opt.amplitude_min = cfg.oracle.amplitude_min;
  opt.amplitude_max = cfg.oracle.amplitude_max;
  std::vector<oracle::OrbitSample> all;
  for (int dir : {-1, 1}) {
    const auto tr = oracle::continue_branch(sys, cfg.oracle.alpha_start, dir, opt);
    std::cout << "direction " << dir << ": " << tr.samples.size() << " orbits, stop "
              << oracle::to_string(tr.reason) << (tr.message.empty() ? "" : " (" + tr.message + ")")
              << "\n";
    all.insert(all.end(), tr.samples.begin(), tr.samples.end());
  }
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.amplitude < b.amplitude; });
  ensure_parent(cfg.output.trace);
  csv::write_branch(cfg.output.trace, all);
  if (all.empty()) {
    std::cout << "no periodic orbits found\n";
    return 2;
  }

  // Population: targets spread over [r, min(R, largest traced amplitude)].
  const double top = std::min(R_cert, all.back().amplitude);
  bool populated = true;
  for (int k = 1; k <= 10; ++k) {
    const double s = r_cert + (top - r_cert) * k / 10.0;
    double best = INFINITY;
    for (const auto& o : all) best = std::min(best, std::abs(o.amplitude - s));
    if (best > 1e-2) {
      populated = false;
      std::cout << "amplitude " << fmt(s) << " not populated (nearest " << fmt(best) << ")\n";
    }
  }
  bool periods_ok = true;
  for (const auto& o : all) {
    if (o.alpha < cfg.spec.alpha_lo || o.alpha > cfg.spec.alpha_hi || o.amplitude > R_cert) continue;
    const double b = 2.0 * M_PI / o.period;
    if (b < 0.9 * bmin || b > 1.1 * bmax) {
      periods_ok = false;
      std::cout << "orbit at " << cfg.spec.parameter << " = " << fmt(o.alpha) << " has 2pi/period "
                << fmt(b) << " outside the certified beta range\n";
    }
  }
  double sym = 0.0;
  for (std::size_t i = 0; i < all.size(); i += std::max<std::size_t>(1, all.size() / 8)) {
    const auto traj = oracle::orbit_trajectory(sys, all[i]);
    for (const auto& h : cfg.spec.symmetry.elements())
      sym = std::max(sym, oracle::symmetry_residual(traj, all[i].period, cfg.spec.space.action(h), h.phase));
  }
  std::cout << "amplitudes traced: [" << fmt(all.front().amplitude) << ", " << fmt(all.back().amplitude)
            << "], certified [" << fmt(r_cert) << ", "
            << (std::isinf(R_cert) ? std::string("unbounded") : fmt(R_cert)) << "]\n";
  std::cout << "max symmetry residual: " << fmt(sym) << "\n";
  std::cout << "trace: " << cfg.output.trace.string() << "\n";
  const bool ok = populated && periods_ok && sym < 1e-6;
  std::cout << (ok ? "verified: certified range populated" : "not verified") << "\n";
  return ok ? 0 : 2;
}

int run_catalog(bool json) {
  certifier::Json out = certifier::Json::array();
  for (const auto& name : group::catalog_names()) {
    try {
      const auto h = group::catalog(name);
      if (json) {
        certifier::Json els = certifier::Json::array();
        for (const auto& e : h.elements()) els.push_back({e.sign, e.perm.str(), e.phase.str()});
        out.push_back(certifier::Json{{"name", name}, {"order", h.order()}, {"elements", els}});
      } else {
        std::cout << name << "  order " << h.order() << "\n";
        for (const auto& e : h.elements()) std::cout << "    " << e.str() << "\n";
      }
    } catch (const LookupError& e) {
      if (json)
        out.push_back(certifier::Json{{"name", name}, {"unresolved", e.what()}});
      else
        std::cout << name << "  unresolved: " << e.what() << "\n";
    }
  }
  if (json) std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certification of equivariant Hopf branches"};
  app.require_subcommand(1);

  std::string config_path, out_path, cert_path, example_name, dir = ".";
  bool quiet = false, no_run = false, json = false;

  auto* certify = app.add_subcommand("certify", "Check (P0)-(P5) and write a certificate");
  certify->add_option("config", config_path, "Problem configuration (JSON)")->required();
  certify->add_option("-o,--output", out_path, "Certificate path (overrides the config)");
  certify->add_flag("-q,--quiet", quiet, "Only set the exit status");

  auto* scan = app.add_subcommand("scan-m", "Write the M(alpha, beta) grid as CSV");
  scan->add_option("config", config_path, "Problem configuration (JSON)")->required();
  scan->add_option("-o,--output", out_path, "CSV path (overrides the config)");

  auto* example = app.add_subcommand("example", "Write a built-in configuration and certify it");
  example->add_option("name", example_name, "vdp, cube-hopf or cube-coupling")
      ->required()
      ->check(CLI::IsMember(config::example_names()));
  example->add_option("-d,--dir", dir, "Directory for the config and outputs");
  example->add_flag("--no-run", no_run, "Only write the configuration");

  auto* verify = app.add_subcommand("verify", "Trace the branch numerically against a certificate");
  verify->add_option("config", config_path, "Problem configuration (JSON)")->required();
  verify->add_option("-c,--certificate", cert_path, "Certificate path (overrides the config)");

  auto* catalog = app.add_subcommand("catalog", "List the twisted subgroups of Z2 x O4");
  catalog->add_flag("--json", json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "hopfcert: error: " << e.what() << "\n";
    return kInvalid;
  }

  try {
    if (*certify) return run_certify(config_path, out_path, quiet);
    if (*scan) return run_scan(config_path, out_path);
    if (*example) return run_example(example_name, dir, !no_run);
    if (*verify) return run_verify(config_path, cert_path);
    if (*catalog) return run_catalog(json);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::cerr << "hopfcert: error: " << msg << "\n";
    return kInvalid;
  }
  return kInvalid;
}
