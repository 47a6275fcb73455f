#include "steklov/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "steklov/errors.hpp"

namespace steklov {

BoundReport constant_C(const ExcisionScenario& scenario) {
  scenario.validate();
  const int b = scenario.count();
  if (b < 2) throw DomainError("constant_C requires at least two excised submanifolds");
  const int m = scenario.m;

  int min_codim = m;
  double wmin = std::numeric_limits<double>::infinity(), wmax = 0.0;
  for (int j = 0; j < b; ++j) {
    const auto& N = scenario.submanifolds[j];
    min_codim = std::min(min_codim, m - N.dim - 2);
    const double w = N.volume * sphere_volume(scenario.sphere_dim(j));
    wmin = std::min(wmin, w * w);
    wmax = std::max(wmax, w * w);
  }
  const double bb = b * (b - 1.0) * (b - 1.0);

  BoundReport r;
  r.terms[0] = std::max(min_codim, 1) / 4.0;
  r.terms[1] = wmin / (16.0 * bb);
  r.terms[2] = scenario.lambda1_M * wmin / (128.0 * m * bb * wmax);
  const auto it = std::min_element(r.terms.begin(), r.terms.end());
  r.constant_C = *it;
  r.binding_term = static_cast<int>(it - r.terms.begin()) + 1;
  r.exponent = 1.0 / (m + 1.0);
  return r;
}

bool lower_bound_check(double sigma1, double eps, const BoundReport& report, int m, double slack) {
  if (!(slack >= 0.0 && slack < 1.0)) throw ConfigurationError("lower_bound_check: slack must lie in [0, 1)");
  if (!(eps > 0.0) || m < 2) throw ConfigurationError("lower_bound_check: needs eps > 0 and m >= 2");
  return sigma1 >= (1.0 - slack) * report.constant_C * std::pow(eps, -1.0 / (m + 1.0));
}

SweepReport lower_bound_sweep(const std::vector<std::pair<double, double>>& eps_sigma, const BoundReport& report,
                              int m) {
  SweepReport out;
  for (std::size_t i = 0; i < eps_sigma.size(); ++i) {
    const auto [eps, sigma] = eps_sigma[i];
    if (i > 0 && !(eps < eps_sigma[i - 1].first)) throw ConfigurationError("lower_bound_sweep: eps must decrease");
    SweepPoint p{eps, sigma, report.constant_C * std::pow(eps, -1.0 / (m + 1.0)), true, 0.0};
    p.holds = lower_bound_check(sigma, eps, report, m, 0.0);
    if (!p.holds) p.violation = sigma > 0.0 ? p.threshold / sigma - 1.0 : std::numeric_limits<double>::infinity();
    out.points.push_back(p);
  }
  bool any_fail = false, growing = false;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    if (out.points[i].holds) continue;
    any_fail = true;
    if (i > 0 && !out.points[i - 1].holds && out.points[i].violation > out.points[i - 1].violation) growing = true;
  }
  out.verdict = growing ? SweepVerdict::Fail : any_fail ? SweepVerdict::Warning : SweepVerdict::Pass;
  return out;
}

double upper_bound_limit(const ExcisionScenario& scenario) {
  scenario.validate();
  int n = scenario.m;
  for (const auto& N : scenario.submanifolds) n = std::min(n, N.dim);
  return std::max(1, scenario.m - n - 2);
}

double quasi_ratio_bound(double K, int m) {
  if (!(K >= 1.0)) throw ConfigurationError("quasi_ratio_bound: K must be >= 1");
  return std::pow(K, m + 0.5);
}

double fitted_divergence_exponent(const std::vector<std::pair<double, double>>& eps_sigma) {
  if (eps_sigma.size() < 2) throw ConfigurationError("fitted_divergence_exponent needs at least two samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(eps_sigma.size());
  for (const auto& [eps, sigma] : eps_sigma) {
    if (!(eps > 0.0 && sigma > 0.0)) throw ConfigurationError("fitted_divergence_exponent: eps and sigma must be > 0");
    const double x = -std::log(eps), y = std::log(sigma);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw ConfigurationError("fitted_divergence_exponent: eps values must differ");
  return (n * sxy - sx * sy) / den;
}

nlohmann::json to_json(const BoundReport& report) {
  return {{"C", report.constant_C},
          {"terms", {report.terms[0], report.terms[1], report.terms[2]}},
          {"binding", report.binding_term},
          {"exponent", report.exponent}};
}

} // namespace steklov
