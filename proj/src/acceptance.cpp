#include "steklov/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "steklov/assembler.hpp"
#include "steklov/bessel.hpp"
#include "steklov/bounds.hpp"
#include "steklov/errors.hpp"
#include "steklov/fem.hpp"
#include "steklov/radial.hpp"
#include "steklov/scenario_io.hpp"
#include "steklov/spherecaps.hpp"

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Torus-minus-two-disks spectra are shared by several checks.
class TorusCache {
public:
  const std::vector<double>& steklov(double eps) {
    auto it = steklov_.find(eps);
    if (it == steklov_.end()) it = steklov_.emplace(eps, fem::steklov_spectrum(mesh(eps), 10)).first;
    return it->second;
  }
  const fem::Mesh& mesh(double eps) {
    auto it = meshes_.find(eps);
    if (it == meshes_.end()) {
      const auto geo = *torus_two_points().torus;
      it = meshes_.emplace(eps, fem::mesh_torus_minus_disks(geo.L, geo.centers, eps, eps / 6)).first;
    }
    return it->second;
  }

private:
  std::map<double, fem::Mesh> meshes_;
  std::map<double, std::vector<double>> steklov_;
};

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Separated limits for k = 0 modes of a single collar.
Outcome radial_limits() {
  struct Case {
    int m;
    SubmanifoldSpec N;
  };
  const Case cases[] = {{2, SubmanifoldSpec::point()},
                        {3, SubmanifoldSpec::point()},
                        {3, SubmanifoldSpec::circle(2.0 * kPi)},
                        {4, SubmanifoldSpec::circle(2.0 * kPi)},
                        {4, SubmanifoldSpec::round_sphere(2, 1.0)},
                        {5, SubmanifoldSpec::point()}};
  Outcome out;
  double worst = 0.0, worst_log = 0.0;
  int checked = 0;
  for (const auto& c : cases) {
    const ExcisionScenario s{c.m, {c.N}, 1.0, {}};
    for (int q = 0; q <= 2; ++q) {
      const auto pl = predicted_limit(c.m, c.N.dim, q);
      const double eps = pl.log_flag ? 1e-6 : 1e-5;
      const double target = pl.log_flag ? 1.0 : pl.value;
      for (auto bc : {BoundaryFamily::SteklovDirichlet, BoundaryFamily::SteklovNeumann}) {
        // (k, q) = (0, 0) is the constant SN mode.
        if (bc == BoundaryFamily::SteklovNeumann && q == 0) continue;
        const auto f = family(s, 0, eps, 0.5, bc, 0, 2);
        for (const auto& mode : f.modes) {
          if (mode.k != 0 || mode.q != q) continue;
          const double scaled = scaled_value(eps, mode.value, pl.log_flag ? RateModel::InverseEpsLog : RateModel::InverseEps);
          const double err = rel(scaled, target);
          ++checked;
          if (pl.log_flag) {
            worst_log = std::max(worst_log, err);
            if (err > 0.06) out.pass = false;
          } else {
            worst = std::max(worst, err);
            if (err > 0.01) out.pass = false;
          }
        }
      }
    }
  }
  out.detail = std::to_string(checked) + " modes, worst rel " + fmt("%.2e", worst) + ", log-normalized " + fmt("%.2e", worst_log);
  return out;
}

Outcome sphere_example() {
  Outcome out;
  double worst_oracle = 0.0, worst_det = 0.0, worst_lim = 0.0;
  for (double eps : {0.1, 0.3, 0.5}) {
    const auto z = caps::ode_oracle(0, eps, 4000);
    worst_oracle = std::max(worst_oracle, rel(z[1], caps::sigma_zero(eps)));
    for (int n = 1; n <= 5; ++n) {
      const auto pm = caps::sigma_pm(n, eps);
      const auto o = caps::ode_oracle(n, eps, 4000);
      worst_oracle = std::max({worst_oracle, rel(o[0], pm.minus), rel(o[1], pm.plus)});
      worst_det = std::max({worst_det, std::abs(caps::determinant_residual_relative(n, eps, pm.minus)),
                            std::abs(caps::determinant_residual_relative(n, eps, pm.plus))});
    }
  }
  for (int n = 1; n <= 5; ++n) {
    const auto pm = caps::sigma_pm(n, 1e-3);
    worst_lim = std::max({worst_lim, rel(1e-3 * pm.minus, n), rel(1e-3 * pm.plus, n)});
  }
  out.pass = worst_oracle <= 1e-5 && worst_det <= 1e-9 && worst_lim <= 5e-3;
  out.detail = "oracle " + fmt("%.2e", worst_oracle) + ", determinant " + fmt("%.2e", worst_det) + ", eps*sigma vs n " +
               fmt("%.2e", worst_lim);
  return out;
}

Outcome torus_bracketing() {
  const double eps = 0.03, delta = 0.12;
  const auto geo = *torus_two_points().torus;
  const auto sigma = fem::steklov_spectrum(fem::mesh_torus_minus_disks(geo.L, geo.centers, eps, eps / 6), 9);
  const auto scenario = torus_two_points().scenario;
  Outcome out;
  double margin_lo = 1e300, margin_hi = 1e300;
  for (int l = 0; l <= 8; ++l) {
    const auto [lo, hi] = bracket(scenario, eps, delta, l);
    const double up = sigma[l] * 1.02;
    if (lo > up || sigma[l] > hi * 1.02) out.pass = false;
    if (lo > 0) margin_lo = std::min(margin_lo, up / lo - 1.0);
    margin_hi = std::min(margin_hi, hi * 1.02 / sigma[l] - 1.0);
  }
  out.detail = "min margin below " + fmt("%.3f", margin_lo) + ", above " + fmt("%.3f", margin_hi);
  return out;
}

Outcome second_eigenvalue_rate(TorusCache& cache) {
  Outcome out;
  double prev = 1e300;
  std::string devs;
  for (double eps : {0.04, 0.02, 0.01}) {
    const double dev = std::abs(eps * cache.steklov(eps)[2] - 1.0);
    if (!(dev < prev)) out.pass = false;
    prev = dev;
    devs += (devs.empty() ? "" : " ") + fmt("%.7f", dev);
  }
  if (!(prev < 0.15)) out.pass = false;
  out.detail = "|eps*sigma_2 - 1| = " + devs;
  return out;
}

double sphere_sigma1(double eps) { return std::min(caps::sigma_zero(eps), caps::sigma_pm(1, eps).minus); }

Outcome upper_bound_proxy(TorusCache& cache) {
  Outcome out;
  const double limit = 1.1 * upper_bound_limit(torus_two_points().scenario);
  const double torus = 0.01 * cache.steklov(0.01)[1];
  if (!(torus <= limit)) out.pass = false;
  const double sphere_limit = 1.1 * upper_bound_limit(sphere_two_points());
  double worst = 0.0;
  for (double eps : {0.1, 0.05, 0.01, 1e-3, 1e-4, 1e-6}) {
    const double v = eps * sphere_sigma1(eps);
    worst = std::max(worst, v);
    if (!(v <= sphere_limit)) out.pass = false;
  }
  out.detail = "torus eps*sigma_1 " + fmt("%.4f", torus) + ", sphere max " + fmt("%.4f", worst);
  return out;
}

Outcome lower_bound(TorusCache& cache) {
  Outcome out;
  const auto torus = torus_two_points().scenario;
  const auto report = constant_C(torus);
  const double err = std::abs(report.constant_C - kPi * kPi / 128.0);
  if (!(err <= 1e-12)) out.pass = false;
  double worst = 1e300;
  for (double eps : {0.04, 0.02, 0.01}) {
    const double s1 = cache.steklov(eps)[1];
    if (!lower_bound_check(s1, eps, report, 2, 0.0)) out.pass = false;
    worst = std::min(worst, s1 / (report.constant_C * std::pow(eps, -1.0 / 3.0)));
  }
  const auto sphere = constant_C(sphere_two_points());
  for (double eps : {0.1, 0.01, 0.001}) {
    const double s1 = sphere_sigma1(eps);
    if (!lower_bound_check(s1, eps, sphere, 2, 0.0)) out.pass = false;
    worst = std::min(worst, s1 / (sphere.constant_C * std::pow(eps, -1.0 / 3.0)));
  }
  out.detail = "C - pi^2/128 = " + fmt("%.1e", err) + ", min sigma_1 / (C eps^-1/3) " + fmt("%.3g", worst);
  return out;
}

Outcome neumann_limit(TorusCache& cache) {
  const double l1 = fem::neumann_spectrum(cache.mesh(0.01), 2)[1];
  const double err = rel(l1, 4 * kPi * kPi);
  return {err <= 0.05, "lambda_1 " + fmt("%.4f", l1) + ", rel " + fmt("%.2e", err)};
}

Outcome energy_inequalities(std::uint64_t seed) {
  const double a = 0.3, b = 1.0;
  const auto mesh = fem::mesh_planar(fem::Annulus{a, b}, 0.03);
  const double s1 = sigma_mixed(RadialMode{0.0, 1, 1}, a, b, OuterCondition::Neumann);
  const double l1 = fem::neumann_spectrum(mesh, 2)[1];
  const auto pos = fem::dof_positions(mesh);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);

  auto random_function = [&] {
    // Low-order Fourier modes times quadratic radial profiles.
    double c[4][2][3];
    for (auto& q : c)
      for (auto& s : q)
        for (auto& v : s) v = g(rng);
    Eigen::VectorXd f(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) {
      const double r = std::hypot(pos[i][0], pos[i][1]), th = std::atan2(pos[i][1], pos[i][0]);
      double v = 0.0;
      for (int q = 0; q < 4; ++q)
        v += (c[q][0][0] + c[q][0][1] * r + c[q][0][2] * r * r) * std::cos(q * th) +
             (c[q][1][0] + c[q][1][1] * r + c[q][1][2] * r * r) * std::sin(q * th);
      f[i] = v;
    }
    return f;
  };

  int energy_fail = 0, poincare_fail = 0;
  double worst_e = 1e300, worst_p = 1e300;
  for (int t = 0; t < 100; ++t) {
    const auto f = random_function();
    const auto e = fem::dirichlet_energy_check(mesh, f, s1);
    if (!e.holds) ++energy_fail;
    if (e.rhs > 0) worst_e = std::min(worst_e, e.lhs / e.rhs);
  }
  for (int t = 0; t < 100; ++t) {
    const auto f = random_function();
    const double phi = u(rng), cx = std::cos(phi), cy = std::sin(phi);
    std::vector<int> V1, V2;
    for (int k = 0; k < static_cast<int>(mesh.triangles.size()); ++k) {
      double x = 0, y = 0;
      for (int v : mesh.triangles[k]) {
        x += mesh.vertices[v][0] / 3;
        y += mesh.vertices[v][1] / 3;
      }
      const double s = cx * x + cy * y;
      if (s > 0.1) V1.push_back(k);
      else if (s < -0.1) V2.push_back(k);
    }
    const auto p = fem::poincare_check(mesh, f, V1, V2, l1);
    if (!p.holds) ++poincare_fail;
    if (p.rhs > 0) worst_p = std::min(worst_p, p.lhs / p.rhs);
  }
  return {energy_fail == 0 && poincare_fail == 0,
          "failures " + std::to_string(energy_fail) + "/" + std::to_string(poincare_fail) + ", min lhs/rhs " +
              fmt("%.3f", worst_e) + " / " + fmt("%.3f", worst_p)};
}

Outcome cross_solver() {
  Outcome out;
  const double a = 0.5, b = 1.0;
  std::vector<double> ref;
  // Modes up to q = 8; the eighth value already comes from q = 4.
  for (int q = 0; q <= 8; ++q) {
    const auto p = sigma_annulus_pair(RadialMode{0.0, 1, q}, a, b);
    for (int r = 0; r < (q == 0 ? 1 : 2); ++r) {
      ref.push_back(p.minus);
      ref.push_back(p.plus);
    }
  }
  std::sort(ref.begin(), ref.end());
  ref.resize(8);
  const auto ann = fem::steklov_spectrum(fem::mesh_planar(fem::Annulus{a, b}, 0.005), 8);
  double worst_ann = std::abs(ann[0]);
  for (int l = 1; l < 8; ++l) worst_ann = std::max(worst_ann, rel(ann[l], ref[l]));
  const auto disk = fem::steklov_spectrum(fem::mesh_planar(fem::Disk{1.0}, 0.02), 7);
  const double exact[] = {0, 1, 1, 2, 2, 3, 3};
  double worst_disk = std::abs(disk[0]);
  for (int l = 1; l < 7; ++l) worst_disk = std::max(worst_disk, rel(disk[l], exact[l]));
  out.pass = worst_ann <= 0.01 && worst_disk <= 0.01;
  out.detail = "annulus worst rel " + fmt("%.2e", worst_ann) + ", disk " + fmt("%.2e", worst_disk);
  return out;
}

Outcome kernels(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_w = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const double nu = 50.0 * u(rng);
    const double x = std::exp(std::log(1e-3) + (std::log(700.0) - std::log(1e-3)) * u(rng));
    // x (I K' - I' K) = -1, in log form so that no factor overflows.
    const auto b = bessel_ik(nu, x);
    const double w = x * std::exp(b.log_i + b.log_k) * (b.dk - b.di);
    worst_w = std::max(worst_w, std::abs(w + 1.0));
  }
  double worst_s = 0.0;
  for (int t = 0; t < 500; ++t) {
    const int d = 1 + static_cast<int>(u(rng) * 4);
    const int q = static_cast<int>(u(rng) * 6);
    const double lambda = u(rng) < 0.2 ? 0.0 : std::exp(-3.0 + 8.0 * u(rng));
    const double eps = std::exp(-6.0 + 5.0 * u(rng));
    const double delta = eps * (1.5 + 20.0 * u(rng));
    const double s = std::exp(-2.0 + 4.0 * u(rng));
    for (auto bc : {OuterCondition::Dirichlet, OuterCondition::Neumann}) {
      const double lhs = sigma_mixed({lambda, d, q}, s * eps, s * delta, bc);
      const double rhs = sigma_mixed({s * s * lambda, d, q}, eps, delta, bc) / s;
      worst_s = std::max(worst_s, rel(lhs, rhs));
    }
  }
  return {worst_w <= 1e-10 && worst_s <= 1e-10,
          "Wronskian " + fmt("%.2e", worst_w) + ", scaling " + fmt("%.2e", worst_s)};
}

} // namespace

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::uint64_t seed) {
  TorusCache cache;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> table = {
      {"radial limits", radial_limits},
      {"sphere caps", sphere_example},
      {"torus bracketing", torus_bracketing},
      {"eps*sigma_2 -> 1 on the torus", [&] { return second_eigenvalue_rate(cache); }},
      {"upper bound proxy", [&] { return upper_bound_proxy(cache); }},
      {"lower bound constant", [&] { return lower_bound(cache); }},
      {"Neumann lambda_1 recovery", [&] { return neumann_limit(cache); }},
      {"energy and Poincare inequalities", [&] { return energy_inequalities(seed); }},
      {"FEM vs separated solutions", cross_solver},
      {"Bessel and scaling kernels", [&] { return kernels(seed); }},
  };
  std::vector<int> run = ids;
  if (run.empty())
    for (int i = 1; i <= 10; ++i) run.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : run) {
    if (id < 1 || id > 10) throw ConfigurationError("acceptance: criteria are numbered 1..10");
    CriterionResult r;
    r.id = id;
    r.title = table[id - 1].first;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto o = table[id - 1].second();
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(r);
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "  (%.1f s)", r.seconds);
  return "criterion " + std::to_string(r.id) + ": " + (r.pass ? "PASS" : "FAIL") + "  " + r.title + "  " + r.detail +
         buf;
}

} // namespace steklov
