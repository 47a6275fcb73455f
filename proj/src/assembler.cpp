#include "steklov/assembler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <tuple>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

constexpr int kStartLimit = 2;
constexpr int kQCap = 400;
constexpr int kKCap = 1024;

OuterCondition outer_of(BoundaryFamily bc) {
  switch (bc) {
  case BoundaryFamily::SteklovNeumann:
    return OuterCondition::Neumann;
  case BoundaryFamily::SteklovDirichlet:
    return OuterCondition::Dirichlet;
  default:
    throw ConfigurationError("family: boundary condition must be SN or SD");
  }
}

bool mode_less(const ModeEigenvalue& a, const ModeEigenvalue& b) {
  return std::tie(a.value, a.j, a.k, a.q) < std::tie(b.value, b.j, b.k, b.q);
}

struct Collected {
  std::vector<ModeEigenvalue> merged;
  bool complete = true;
  int k_max = 0;
  int q_max = 0;
};

// Merged spectrum over all families, with the mode limits raised until the
// first `needed` individually counted values are certified.
Collected collect(const ExcisionScenario& scenario, double eps, double delta, BoundaryFamily bc, std::int64_t needed) {
  const int b = scenario.count();
  std::vector<int> k_max(b, kStartLimit), q_max(b, kStartLimit);
  while (true) {
    Collected out;
    std::vector<FamilySpectrum> fams;
    for (int j = 0; j < b; ++j) {
      fams.push_back(family(scenario, j, eps, delta, bc, k_max[j], q_max[j]));
      out.merged.insert(out.merged.end(), fams.back().modes.begin(), fams.back().modes.end());
    }
    std::sort(out.merged.begin(), out.merged.end(), mode_less);
    out.k_max = *std::max_element(k_max.begin(), k_max.end());
    out.q_max = *std::max_element(q_max.begin(), q_max.end());

    double target = std::numeric_limits<double>::infinity();
    std::int64_t acc = 0;
    for (const auto& e : out.merged) {
      acc += e.multiplicity;
      if (acc >= needed) {
        target = e.value;
        break;
      }
    }
    bool certified = true, raised = false;
    for (int j = 0; j < b; ++j) {
      if (fams[j].floor_q < target) {
        certified = false;
        if (q_max[j] < kQCap) {
          q_max[j] = std::min(2 * q_max[j] + 1, kQCap);
          raised = true;
        }
      }
      if (fams[j].floor_k < target) {
        certified = false;
        if (k_max[j] < kKCap) {
          k_max[j] = std::min(2 * k_max[j] + 1, kKCap);
          raised = true;
        }
      }
    }
    if (certified) return out;
    if (!raised) {
      out.complete = false;
      return out;
    }
  }
}

std::vector<double> expand(const std::vector<ModeEigenvalue>& modes, std::int64_t count) {
  std::vector<double> v;
  for (const auto& e : modes) {
    for (std::int64_t i = 0; i < e.multiplicity && static_cast<std::int64_t>(v.size()) < count; ++i)
      v.push_back(e.value);
    if (static_cast<std::int64_t>(v.size()) >= count) break;
  }
  return v;
}

void check_geometry(const ExcisionScenario& scenario, double eps, double delta) {
  scenario.validate();
  if (!(eps > 0.0 && eps < delta)) throw ConfigurationError("requires 0 < eps < delta");
}

} // namespace

FamilySpectrum family(const ExcisionScenario& scenario, int j, double eps, double delta, BoundaryFamily bc, int k_max,
                      int q_max) {
  check_geometry(scenario, eps, delta);
  if (j < 0 || j >= scenario.count()) throw ConfigurationError("family: submanifold index out of range");
  const ModelAnnulus annulus{eps, delta, scenario.sphere_dim(j), scenario.submanifolds[j]};
  auto mixed = mixed_spectrum(annulus, outer_of(bc), k_max, q_max);
  FamilySpectrum out;
  out.modes = std::move(mixed.modes);
  for (auto& e : out.modes) e.j = j;
  out.omitted_floor = mixed.omitted_floor;
  out.floor_q = mixed.floor_q;
  out.floor_k = mixed.floor_k;
  out.truncated = mixed.truncated;
  return out;
}

TruncatedSpectrum truncated_spectrum(const ExcisionScenario& scenario, double eps, double delta, int count,
                                     BoundaryFamily bc) {
  check_geometry(scenario, eps, delta);
  if (count < 1) throw ConfigurationError("truncated_spectrum: count must be >= 1");
  const int b = scenario.count();
  auto c = collect(scenario, eps, delta, bc, static_cast<std::int64_t>(count) + b);

  TruncatedSpectrum out;
  out.complete = c.complete;
  out.k_max = c.k_max;
  out.q_max = c.q_max;
  std::int64_t to_drop = b;
  std::int64_t kept = 0;
  for (auto e : c.merged) {
    if (kept >= count) break;
    if (bc == BoundaryFamily::SteklovNeumann) {
      if (e.k == 0 && e.q == 0) continue;
    } else if (to_drop > 0) {
      const std::int64_t d = std::min(to_drop, e.multiplicity);
      to_drop -= d;
      e.multiplicity -= d;
      if (e.multiplicity == 0) continue;
    }
    kept += e.multiplicity;
    out.modes.push_back(e);
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> merged_values(const ExcisionScenario& scenario, double eps,
                                                                  double delta, int count) {
  check_geometry(scenario, eps, delta);
  if (count < 1) throw ConfigurationError("merged_values: count must be >= 1");
  auto sn = collect(scenario, eps, delta, BoundaryFamily::SteklovNeumann, count);
  auto sd = collect(scenario, eps, delta, BoundaryFamily::SteklovDirichlet, count);
  if (!sn.complete || !sd.complete)
    throw CompletenessError("mode limits (k_max " + std::to_string(kKCap) + ", q_max " + std::to_string(kQCap) +
                            ") reached before index " + std::to_string(count - 1) + " was certified");
  return {expand(sn.merged, count), expand(sd.merged, count)};
}

std::pair<double, double> bracket(const ExcisionScenario& scenario, double eps, double delta, int ell) {
  if (ell < 0) throw ConfigurationError("bracket: ell must be >= 0");
  auto [sn, sd] = merged_values(scenario, eps, delta, ell + 1);
  return {sn[ell], sd[ell]};
}

std::string to_string(RateModel model) {
  return model == RateModel::InverseEps ? "inverse_eps" : "inverse_eps_log";
}

void RateSeries::validate() const {
  if (samples.size() < 3) throw ConfigurationError("rate series needs at least 3 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [eps, sigma] = samples[i];
    if (!(eps > 0.0) || !(sigma > 0.0) || !std::isfinite(sigma))
      throw ConfigurationError("rate series: eps and sigma must be positive");
    if (i > 0 && !(eps < samples[i - 1].first))
      throw ConfigurationError("rate series: eps must be strictly decreasing");
    if (model == RateModel::InverseEpsLog && !(eps < 1.0))
      throw ConfigurationError("rate series: log model requires eps < 1");
  }
}

double scaled_value(double eps, double sigma, RateModel model) {
  return model == RateModel::InverseEps ? eps * sigma : eps * std::abs(std::log(eps)) * sigma;
}

RateFit rate_fit(const RateSeries& series) {
  series.validate();
  RateFit fit;
  for (const auto& [eps, sigma] : series.samples) fit.residuals.push_back(scaled_value(eps, sigma, series.model));
  const std::size_t n = fit.residuals.size();
  fit.last_value = fit.residuals.back();

  int sign = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = fit.residuals[i] - fit.residuals[i - 1];
    const int s = (d > 0) - (d < 0);
    if (s != 0 && sign != 0 && s != sign) fit.monotone = false;
    if (s != 0) sign = s;
  }
  if (!fit.monotone) fit.warnings.push_back("scaled sequence is not monotone");

  // Leading correction is linear in h = eps (power laws) or h = 1/|log eps|.
  auto h_of = [&](double eps) { return series.model == RateModel::InverseEps ? eps : 1.0 / std::abs(std::log(eps)); };
  const double h1 = h_of(series.samples[n - 2].first), h2 = h_of(series.samples[n - 1].first);
  const double s1 = fit.residuals[n - 2], s2 = fit.residuals[n - 1];
  fit.limit_estimate = s2 + (s2 - s1) * h2 / (h1 - h2);
  return fit;
}

PredictedLimit predicted_limit(int m, int n, int q) {
  if (m < 2 || n < 0 || n > m - 2 || q < 0) throw ConfigurationError("predicted_limit requires 0 <= n <= m-2, q >= 0");
  const bool log_flag = q == 0 && ((n == m - 2 && m > 2) || (n == 0 && m == 2));
  return {static_cast<double>(m - n - 2 + q), log_flag};
}

double default_delta(const ExcisionScenario& scenario) {
  if (scenario.separations.empty()) return 0.5;
  return 0.5 * *std::min_element(scenario.separations.begin(), scenario.separations.end());
}

void write_spectrum_csv(std::ostream& os, double eps, const std::vector<ModeEigenvalue>& modes, bool header) {
  if (header) os << "eps,j,k,q,family,multiplicity,sigma,eps_sigma,eps_logeps_sigma\n";
  char buf[512];
  for (const auto& e : modes) {
    std::snprintf(buf, sizeof buf, "%.17g,%d,%d,%d,%s,%lld,%.17g,%.17g,%.17g\n", eps, e.j, e.k, e.q,
                  to_string(e.family).c_str(), static_cast<long long>(e.multiplicity), e.value, eps * e.value,
                  eps * std::abs(std::log(eps)) * e.value);
    os << buf;
  }
}

} // namespace steklov
