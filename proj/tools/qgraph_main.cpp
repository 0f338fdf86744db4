#include <CLI11.hpp>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qgraph/errors.hpp"
#include "qgraph/json_io.hpp"
#include "qgraph/selftest.hpp"

namespace {

using nlohmann::json;
using namespace qgraph;

struct RunConfig {
  std::string command;
  std::string input;
  std::string out;
  std::string format = "json";
  double tol_ode = 1e-11;
  double tol_quad = 1e-10;
  double k_max = 10.0;
  double grid_step = 0.0;
  std::vector<double> gammas;
  std::string gamma_grid;
  std::vector<std::string> s_values;
  int truncation = 0;
  bool limit = false;
};

std::vector<double> expand_gamma_grid(const std::string& grid) {
  // start:stop:count or start:stop:count:log
  std::vector<std::string> parts;
  std::stringstream ss(grid);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3 && parts.size() != 4)
    throw ParseError("--gamma-grid expects start:stop:count[:log]");
  const double start = std::stod(parts[0]);
  const double stop = std::stod(parts[1]);
  const int count = std::stoi(parts[2]);
  const bool logspace = parts.size() == 4 && parts[3] == "log";
  if (count < 2) throw ParseError("--gamma-grid needs count >= 2");
  if (logspace && (start <= 0.0 || stop <= 0.0))
    throw ParseError("--gamma-grid log spacing needs positive endpoints");
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    out[i] = logspace ? start * std::pow(stop / start, f) : start + f * (stop - start);
  }
  return out;
}

std::complex<double> parse_s(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {std::stod(text), 0.0};
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

void write_output(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload << "\n";
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw NumericError("cannot open output file: " + cfg.out);
  f << payload << "\n";
}

std::string csv_escape(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

int run(const RunConfig& cfg) {
  SolverOptions solver;
  solver.rtol = cfg.tol_ode;
  solver.atol = cfg.tol_ode / 10.0;

  if (cfg.command == "selftest") {
    const auto cases = run_selftest(&std::cout);
    int failed = 0;
    for (const auto& c : cases)
      if (!c.passed) ++failed;
    std::cout << cases.size() - failed << "/" << cases.size() << " oracle cases passed\n";
    return failed == 0 ? 0 : 4;
  }

  if (cfg.input.empty()) throw ParseError("--input is required for this command");
  GraphSpec spec = parse_graph_spec_file(cfg.input);

  if (cfg.command == "validate") {
    const ValidationReport report = validate_self_adjoint(spec.conditions, spec.graph);
    json j;
    j["valid"] = report.valid;
    j["violations"] = report.violations;
    write_output(cfg, dump_fixed(j));
    return report.valid ? 0 : 3;
  }

  if (cfg.command == "eigenvalues") {
    EigenSearchOptions opt;
    opt.grid_step = cfg.grid_step;
    opt.solver = solver;
    const Spectrum spectrum = find_eigenvalues(spec.graph, spec.conditions, cfg.k_max, opt);
    if (cfg.format == "csv") {
      std::ostringstream os;
      os << "j,E_j,multiplicity";
      int j = 0;
      for (const auto& e : spectrum.entries)
        os << "\n" << j++ << "," << csv_escape(e.energy) << "," << e.multiplicity;
      write_output(cfg, os.str());
    } else if (cfg.format == "text") {
      std::ostringstream os;
      os << "eigenvalues up to k_max = " << cfg.k_max << ":\n";
      int j = 0;
      for (const auto& e : spectrum.entries)
        os << "  E_" << j++ << " = " << csv_escape(e.energy)
           << "  (multiplicity " << e.multiplicity << ")\n";
      for (const auto& w : spectrum.warnings) os << "  warning: " << w << "\n";
      write_output(cfg, os.str());
    } else {
      write_output(cfg, dump_fixed(spectrum_to_json(spectrum)));
    }
    return 0;
  }

  if (cfg.command == "det") {
    std::vector<double> gammas = cfg.gammas;
    if (!cfg.gamma_grid.empty()) {
      const auto grid = expand_gamma_grid(cfg.gamma_grid);
      gammas.insert(gammas.end(), grid.begin(), grid.end());
    }
    if (gammas.empty()) throw ParseError("det needs --gamma or --gamma-grid");
    DetOptions opt;
    opt.allow_limit = cfg.limit;
    opt.solver = solver;
    std::vector<DeterminantResult> results;
    results.reserve(gammas.size());
    for (double g : gammas) results.push_back(spectral_determinant(spec.graph, spec.conditions, g, opt));
    if (cfg.format == "csv") {
      std::ostringstream os;
      os << "gamma,S,dirichlet_factor,secular_factor_re,secular_factor_im";
      for (const auto& r : results)
        os << "\n"
           << csv_escape(r.gamma) << "," << csv_escape(r.value) << ","
           << csv_escape(r.dirichlet_factor) << "," << csv_escape(r.secular_factor.real())
           << "," << csv_escape(r.secular_factor.imag());
      write_output(cfg, os.str());
    } else if (cfg.format == "text") {
      std::ostringstream os;
      for (const auto& r : results)
        os << "S(" << r.gamma << ") = " << csv_escape(r.value)
           << (r.extrapolated ? "  (extrapolated)" : "") << "\n";
      write_output(cfg, os.str());
    } else if (results.size() == 1) {
      write_output(cfg, dump_fixed(determinant_to_json(results[0])));
    } else {
      json arr = json::array();
      for (const auto& r : results) arr.push_back(determinant_to_json(r));
      write_output(cfg, dump_fixed(arr));
    }
    return 0;
  }

  if (cfg.command == "zeta") {
    if (cfg.s_values.empty()) throw ParseError("zeta needs at least one --s value");
    if (cfg.gammas.size() != 1) throw ParseError("zeta needs exactly one --gamma");
    ZetaOptions opt;
    opt.quad_rel_tol = cfg.tol_quad;
    opt.quad_abs_tol = cfg.tol_quad / 100.0;
    opt.order = cfg.truncation;
    opt.solver = solver;
    json arr = json::array();
    std::ostringstream csv;
    csv << "s_re,s_im,gamma,value_re,value_im,error_estimate";
    for (const auto& stext : cfg.s_values) {
      const ZetaResult r = zeta(spec.graph, spec.conditions, parse_s(stext), cfg.gammas[0], opt);
      json jz = zeta_to_json(r);
      jz["zeta_prime_zero_identity"] =
          zeta_prime_zero(spec.graph, spec.conditions, cfg.gammas[0], solver);
      arr.push_back(jz);
      csv << "\n"
          << csv_escape(r.s.real()) << "," << csv_escape(r.s.imag()) << ","
          << csv_escape(r.gamma) << "," << csv_escape(r.value.real()) << ","
          << csv_escape(r.value.imag()) << "," << csv_escape(r.error_estimate);
    }
    if (cfg.format == "csv")
      write_output(cfg, csv.str());
    else
      write_output(cfg, dump_fixed(arr.size() == 1 ? arr[0] : arr));
    return 0;
  }

  if (cfg.command == "asymptotics") {
    AsymptoticProfile profile = leading_coefficient(spec.graph, spec.conditions, cfg.truncation);
    profile.P = zero_order_p(spec.graph, spec.conditions);
    write_output(cfg, dump_fixed(profile_to_json(profile)));
    return 0;
  }

  throw ParseError("unknown command: " + cfg.command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qgraph: eigenvalues, zeta-regularized spectral determinants and zeta functions of "
      "Schrodinger operators on metric graphs"};
  app.require_subcommand(0, 1);

  RunConfig cfg;
  app.add_option("--command", cfg.command,
                 "command to run (validate|eigenvalues|det|zeta|asymptotics|selftest)");
  app.add_option("--input", cfg.input, "graph specification file (JSON)");
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--format", cfg.format, "output format: json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--tol-ode", cfg.tol_ode, "ODE relative tolerance");
  app.add_option("--tol-quad", cfg.tol_quad, "quadrature relative tolerance");
  app.add_option("--k-max", cfg.k_max, "upper end of the eigenvalue search window (in k)");
  app.add_option("--grid-step", cfg.grid_step, "eigenvalue scan grid step override");
  app.add_option("--gamma", cfg.gammas, "spectral parameter(s) gamma");
  app.add_option("--gamma-grid", cfg.gamma_grid, "gamma grid start:stop:count[:log]");
  app.add_option("--s", cfg.s_values, "zeta argument(s), 're' or 're,im'");
  app.add_option("--truncation-J", cfg.truncation, "asymptotic truncation order override");
  app.add_flag("--limit", cfg.limit, "allow gamma -> 0 extrapolation when P > 0");

  for (const char* name : {"validate", "eigenvalues", "det", "zeta", "asymptotics", "selftest"})
    app.add_subcommand(name, "")->fallthrough();

  CLI11_PARSE(app, argc, argv);

  for (const auto* sub : app.get_subcommands())
    cfg.command = sub->get_name();
  if (cfg.command.empty()) {
    std::cerr << app.help() << "\n";
    return 2;
  }

  auto emit_error = [](const char* kind, const std::exception& ex) {
    nlohmann::json j;
    j["error"] = {{"kind", kind}, {"message", ex.what()}};
    std::cerr << j.dump() << "\n";
  };

  try {
    return run(cfg);
  } catch (const ParseError& ex) {
    emit_error("parse", ex);
    return 2;
  } catch (const ValidationError& ex) {
    emit_error("validation", ex);
    return 3;
  } catch (const ProfileError& ex) {
    emit_error("undetermined-profile", ex);
    return 5;
  } catch (const NumericError& ex) {
    emit_error("numeric", ex);
    return 4;
  } catch (const std::exception& ex) {
    emit_error("internal", ex);
    return 4;
  }
}
