#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "steklov/acceptance.hpp"
#include "steklov/assembler.hpp"
#include "steklov/bounds.hpp"
#include "steklov/errors.hpp"
#include "steklov/fem.hpp"
#include "steklov/scenario_io.hpp"
#include "steklov/spherecaps.hpp"

using namespace steklov;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string scenario_path;
  std::vector<double> eps;
  std::optional<double> delta;
  std::optional<int> k_max, q_max;
  int count = 20;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 20240607;
};

// A run is a header (key/value pairs, printed before any data) and a table.
struct Table {
  json header = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
  return buf;
}

void emit(const Table& t, const RunConfig& cfg) {
  std::ostringstream os;
  if (cfg.format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
      nlohmann::ordered_json o = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r[i];
      rows.push_back(o);
    }
    nlohmann::ordered_json doc;
    doc["run"] = t.header;
    doc["rows"] = rows;
    os << doc.dump(2) << "\n";
  } else {
    for (const auto& [k, v] : t.header.items()) os << "# " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell(r[i]);
      os << "\n";
    }
  }
  if (cfg.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigurationError("cannot write " + cfg.out);
    f << os.str();
  }
}

ScenarioFile scenario(const RunConfig& cfg) {
  if (cfg.scenario_path.empty()) throw ConfigurationError("--scenario is required");
  return load_scenario(cfg.scenario_path);
}

void check_eps(const std::vector<double>& eps, double delta) {
  if (eps.empty()) throw ConfigurationError("--eps needs at least one value");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0 && eps[i] < delta)) throw ConfigurationError("every eps must lie in (0, delta)");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw ConfigurationError("--eps must be strictly decreasing");
  }
}

double run_delta(const RunConfig& cfg, const ExcisionScenario& s) {
  const double d = cfg.delta ? *cfg.delta : default_delta(s);
  if (!(d > 0.0)) throw ConfigurationError("--delta must be positive");
  check_eps(cfg.eps, d);
  return d;
}

json header(const std::string& command, const RunConfig& cfg) {
  json h = json::object();
  h["command"] = command;
  if (!cfg.scenario_path.empty()) h["scenario"] = cfg.scenario_path;
  return h;
}

void mode_row(Table& t, double eps, const ModeEigenvalue& e) {
  t.rows.push_back({eps, e.j, e.k, e.q, to_string(e.family), e.multiplicity, e.value, eps * e.value,
                    eps * std::abs(std::log(eps)) * e.value});
}

const std::vector<std::string> kSpectrumColumns = {"eps", "j", "k", "q", "family", "multiplicity",
                                                   "sigma", "eps_sigma", "eps_logeps_sigma"};

void model_spectrum(const RunConfig& cfg) {
  const auto s = scenario(cfg).scenario;
  const double delta = run_delta(cfg, s);
  Table t;
  t.header = header("model-spectrum", cfg);
  t.header["delta"] = delta;
  t.columns = kSpectrumColumns;
  for (double eps : cfg.eps) {
    if (cfg.k_max || cfg.q_max) {
      // Raw per-family listings at fixed mode limits.
      const int k_max = cfg.k_max.value_or(3), q_max = cfg.q_max.value_or(3);
      for (int j = 0; j < s.count(); ++j)
        for (auto bc : {BoundaryFamily::SteklovNeumann, BoundaryFamily::SteklovDirichlet})
          for (const auto& m : family(s, j, eps, delta, bc, k_max, q_max).modes) mode_row(t, eps, m);
    } else {
      for (auto bc : {BoundaryFamily::SteklovNeumann, BoundaryFamily::SteklovDirichlet}) {
        const auto ts = truncated_spectrum(s, eps, delta, cfg.count, bc);
        if (!ts.complete) throw CompletenessError("truncated spectrum could not be certified at eps " + cell(eps));
        for (const auto& m : ts.modes) mode_row(t, eps, m);
      }
    }
  }
  emit(t, cfg);
}

void bracket_cmd(const RunConfig& cfg) {
  const auto s = scenario(cfg).scenario;
  const double delta = run_delta(cfg, s);
  Table t;
  t.header = header("bracket", cfg);
  t.header["delta"] = delta;
  t.columns = {"eps", "ell", "lower", "upper", "eps_lower", "eps_upper", "eps_logeps_lower", "eps_logeps_upper"};
  for (double eps : cfg.eps) {
    const auto [sn, sd] = merged_values(s, eps, delta, cfg.count);
    const double lg = std::abs(std::log(eps));
    for (int l = 0; l < cfg.count; ++l)
      t.rows.push_back({eps, l, sn[l], sd[l], eps * sn[l], eps * sd[l], eps * lg * sn[l], eps * lg * sd[l]});
  }
  emit(t, cfg);
}

void rates(const RunConfig& cfg) {
  const auto s = scenario(cfg).scenario;
  const double delta = run_delta(cfg, s);
  if (cfg.eps.size() < 3) throw ConfigurationError("rates needs at least three eps values");
  const int q_max = cfg.q_max.value_or(2);
  Table t;
  t.header = header("rates", cfg);
  t.header["delta"] = delta;
  t.columns = {"j", "k", "q", "family", "model", "predicted", "fitted", "last_value", "monotone", "eps_min"};
  for (int j = 0; j < s.count(); ++j) {
    const int n = s.submanifolds[j].dim;
    for (int q = 0; q <= q_max; ++q) {
      const auto pl = predicted_limit(s.m, n, q);
      for (auto bc : {BoundaryFamily::SteklovNeumann, BoundaryFamily::SteklovDirichlet}) {
        if (bc == BoundaryFamily::SteklovNeumann && q == 0) continue; // constant mode
        RateSeries series;
        series.model = pl.log_flag ? RateModel::InverseEpsLog : RateModel::InverseEps;
        for (double eps : cfg.eps)
          for (const auto& m : family(s, j, eps, delta, bc, 0, q).modes)
            if (m.k == 0 && m.q == q) series.samples.push_back({eps, m.value});
        const auto fit = rate_fit(series);
        t.rows.push_back({j, 0, q, to_string(bc), to_string(series.model), pl.log_flag ? 1.0 : pl.value,
                          fit.limit_estimate, fit.last_value, fit.monotone, cfg.eps.back()});
      }
    }
  }
  emit(t, cfg);
}

void sphere_caps(const RunConfig& cfg, int n_max, int grid) {
  if (cfg.eps.empty()) throw ConfigurationError("--eps needs at least one value");
  if (n_max < 0) throw ConfigurationError("--n must be >= 0");
  Table t;
  t.header = header("sphere-caps", cfg);
  t.header["grid"] = grid;
  t.columns = {"eps", "n", "sign", "sigma", "oracle", "oracle_rel", "determinant_rel", "eps_sigma", "eps_logeps_sigma"};
  for (double eps : cfg.eps) {
    const double lg = std::abs(std::log(eps));
    auto row = [&](int n, const char* sign, double sigma, double oracle, json det) {
      t.rows.push_back({eps, n, sign, sigma, oracle, std::abs(oracle - sigma) / sigma, det, eps * sigma, eps * lg * sigma});
    };
    row(0, "log", caps::sigma_zero(eps), caps::ode_oracle(0, eps, grid)[1], nullptr);
    for (int n = 1; n <= n_max; ++n) {
      const auto pm = caps::sigma_pm(n, eps);
      const auto o = caps::ode_oracle(n, eps, grid);
      row(n, "-", pm.minus, o[0], caps::determinant_residual_relative(n, eps, pm.minus));
      row(n, "+", pm.plus, o[1], caps::determinant_residual_relative(n, eps, pm.plus));
    }
  }
  emit(t, cfg);
}

void fem_cmd(const RunConfig& cfg, const std::string& shape, double h_factor, bool neumann, const std::string& mesh_out) {
  Table t;
  t.header = header("fem", cfg);
  t.header["shape"] = shape;
  t.columns = kSpectrumColumns;
  auto add = [&](double eps, const std::vector<double>& values, const char* family) {
    for (double v : values) t.rows.push_back({eps, nullptr, nullptr, nullptr, family, 1, v, eps * v, eps * std::abs(std::log(eps)) * v});
  };
  if (cfg.count < 2) throw ConfigurationError("--count must be >= 2");
  if (!(h_factor > 4.0)) throw ConfigurationError("--h-factor must exceed 4 (h = eps / factor)");
  if (shape == "torus") {
    const auto f = scenario(cfg);
    if (!f.torus) throw ConfigurationError("scenario has no torus geometry");
    if (cfg.eps.empty()) throw ConfigurationError("--eps needs at least one value");
    t.header["h"] = "eps/" + cell(h_factor);
    for (double eps : cfg.eps) {
      const auto m = fem::mesh_torus_minus_disks(f.torus->L, f.torus->centers, eps, eps / h_factor);
      if (!mesh_out.empty()) {
        std::ofstream mo(mesh_out + "." + cell(eps) + ".mesh");
        fem::write_mesh(mo, m);
      }
      add(eps, fem::steklov_spectrum(m, cfg.count), "steklov");
      if (neumann) add(eps, fem::neumann_spectrum(m, cfg.count), "neumann");
    }
  } else if (shape == "disk" || shape == "annulus") {
    // eps is the disk radius, or the inner radius of an annulus with outer radius 1.
    const std::vector<double> radii = cfg.eps.empty() ? std::vector<double>{shape == "disk" ? 1.0 : 0.5} : cfg.eps;
    for (double r : radii) {
      fem::PlanarShape s = shape == "disk" ? fem::PlanarShape{fem::Disk{r}} : fem::PlanarShape{fem::Annulus{r, 1.0}};
      const double h = r / h_factor;
      t.header["h"] = "eps/" + cell(h_factor);
      const auto m = fem::mesh_planar(s, h);
      if (!mesh_out.empty()) {
        std::ofstream mo(mesh_out + "." + cell(r) + ".mesh");
        fem::write_mesh(mo, m);
      }
      add(r, fem::steklov_spectrum(m, cfg.count), "steklov");
      if (shape == "annulus") {
        add(r, fem::steklov_spectrum(m, cfg.count, {}, {fem::kOuterMarker}), "SN");
        add(r, fem::steklov_spectrum(m, cfg.count, {fem::kOuterMarker}), "SD");
      }
      if (neumann) add(r, fem::neumann_spectrum(m, cfg.count), "neumann");
    }
  } else {
    throw ConfigurationError("--shape must be torus, disk or annulus");
  }
  emit(t, cfg);
}

void bounds_cmd(const RunConfig& cfg) {
  const auto s = scenario(cfg).scenario;
  const auto report = constant_C(s);
  json j = to_json(report);
  j["upper_bound_limit"] = upper_bound_limit(s);
  j["thresholds"] = json::array();
  for (double eps : cfg.eps)
    j["thresholds"].push_back({{"eps", eps}, {"sigma1_lower", report.constant_C * std::pow(eps, -report.exponent)}});
  std::ostringstream os;
  os << j.dump(2) << "\n";
  if (cfg.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigurationError("cannot write " + cfg.out);
    f << os.str();
  }
}

int verify_all(const RunConfig& cfg, const std::vector<int>& only) {
  bool ok = true;
  std::ostringstream os;
  for (const auto& r : run_acceptance(only, cfg.seed)) {
    const auto line = format_result(r);
    std::cout << line << std::endl;
    os << line << "\n";
    ok = ok && r.pass;
  }
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    f << os.str();
  }
  return ok ? 0 : 3;
}

int fail(int code, const char* kind, const std::string& message) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << std::endl;
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steklov spectra of domains with excised tubes"};
  app.require_subcommand(1);
  RunConfig cfg;
  int n_max = 5, grid = 4000;
  std::string shape = "torus", mesh_out;
  double h_factor = 6.0;
  bool neumann = false;
  std::vector<int> only;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--scenario", cfg.scenario_path, "Scenario JSON file");
    sub->add_option("--eps", cfg.eps, "Strictly decreasing eps values")->delimiter(',');
    sub->add_option("--delta", cfg.delta, "Collar width (default: half the smallest separation, else 0.5)");
    sub->add_option("--kmax", cfg.k_max, "Transverse mode limit");
    sub->add_option("--qmax", cfg.q_max, "Sphere mode limit");
    sub->add_option("--count", cfg.count, "Number of eigenvalues");
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", cfg.seed, "Seed for random test inputs");
  };
  auto* ms = app.add_subcommand("model-spectrum", "Separated SN/SD spectra of the model collars");
  auto* br = app.add_subcommand("bracket", "Bracketing pairs per index");
  auto* rt = app.add_subcommand("rates", "Fitted limits of the scaled eigenvalues");
  auto* sc = app.add_subcommand("sphere-caps", "Sphere minus two antipodal caps");
  auto* fe = app.add_subcommand("fem", "Finite-element spectra");
  auto* bd = app.add_subcommand("bounds", "Lower-bound constant and thresholds");
  auto* va = app.add_subcommand("verify-all", "Run the acceptance checks");
  for (auto* s : {ms, br, rt, sc, fe, bd, va}) common(s);
  sc->add_option("--n", n_max, "Largest angular frequency");
  sc->add_option("--grid", grid, "Oracle grid size");
  fe->add_option("--shape", shape, "torus, disk or annulus");
  fe->add_option("--h-factor", h_factor, "Mesh size h = eps / factor");
  fe->add_flag("--neumann", neumann, "Also compute Neumann eigenvalues");
  fe->add_option("--mesh-out", mesh_out, "Write meshes to <prefix>.<eps>.mesh");
  va->add_option("--only", only, "Criteria to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(1, "configuration", e.what());
  }

  try {
    if (*ms) model_spectrum(cfg);
    else if (*br) bracket_cmd(cfg);
    else if (*rt) rates(cfg);
    else if (*sc) sphere_caps(cfg, n_max, grid);
    else if (*fe) fem_cmd(cfg, shape, h_factor, neumann, mesh_out);
    else if (*bd) bounds_cmd(cfg);
    else if (*va) return verify_all(cfg, only);
  } catch (const ConfigurationError& e) {
    return fail(1, "configuration", e.what());
  } catch (const DomainError& e) {
    return fail(1, "configuration", e.what());
  } catch (const NumericalError& e) {
    return fail(2, "numerical", e.what());
  } catch (const CompletenessError& e) {
    return fail(2, "numerical", e.what());
  }
  return 0;
}
