#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "steklov/core.hpp"
#include "steklov/radial.hpp"

namespace steklov {

struct FamilySpectrum {
  std::vector<ModeEigenvalue> modes; // ascending, ties by (k, q)
  double omitted_floor = 0.0;        // lower bound on every omitted mode
  double floor_q = 0.0;              // first omitted value along q
  double floor_k = 0.0;              // first omitted value along k (+inf if none)
  bool truncated = false;
};

/// Mixed spectrum of the model collar N_j x [eps, delta] x S^{d_j}, tagged
/// with j. `bc` must be SteklovNeumann or SteklovDirichlet.
FamilySpectrum family(const ExcisionScenario& scenario, int j, double eps, double delta, BoundaryFamily bc, int k_max,
                      int q_max);

struct TruncatedSpectrum {
  // Ascending, ties by (j, k, q); the multiplicities sum to at least `count`.
  std::vector<ModeEigenvalue> modes;
  // False when the mode limits were hit before every listed index could be
  // certified against the omitted modes.
  bool complete = true;
  int k_max = 0;
  int q_max = 0;
};

/// Model predictor for {sigma_l(Omega_eps) : l >= b}. The SN variant drops
/// the b zero modes (k, q) = (0, 0); the SD variant drops the b smallest
/// values, so that entry i of either list brackets sigma_{b+i}. `count` is
/// measured with multiplicity. Mode limits are raised until the list is
/// certified or the hard caps are reached.
TruncatedSpectrum truncated_spectrum(const ExcisionScenario& scenario, double eps, double delta, int count,
                                     BoundaryFamily bc = BoundaryFamily::SteklovNeumann);

/// Merged SN and SD spectra of all collars, individually counted, certified
/// to hold at least `count` values each. Throws CompletenessError otherwise.
std::pair<std::vector<double>, std::vector<double>> merged_values(const ExcisionScenario& scenario, double eps,
                                                                  double delta, int count);

/// (sigma_l^SN(A), sigma_{l+1}^SD(A)) for the union A of model collars. The
/// SD spectrum is counted from 1, so the upper value is the entry at 0-based
/// position l of the sorted SD list.
std::pair<double, double> bracket(const ExcisionScenario& scenario, double eps, double delta, int ell);

enum class RateModel { InverseEps, InverseEpsLog };

std::string to_string(RateModel model);

struct RateSeries {
  std::vector<std::pair<double, double>> samples; // (eps, sigma), eps strictly decreasing
  RateModel model = RateModel::InverseEps;

  void validate() const;
};

struct RateFit {
  double limit_estimate = 0.0; // Richardson over the last two samples
  double last_value = 0.0;     // scaled value at the smallest eps
  std::vector<double> residuals; // scaled value per sample
  bool monotone = true;
  std::vector<std::string> warnings;
};

// eps*sigma or eps*|log eps|*sigma.
double scaled_value(double eps, double sigma, RateModel model);

RateFit rate_fit(const RateSeries& series);

struct PredictedLimit {
  double value = 0.0;
  bool log_flag = false;
};

/// Limit of eps * sigma for cluster q of a codimension m - n tube, and
/// whether the eps |log eps| normalization applies instead.
PredictedLimit predicted_limit(int m, int n, int q);

/// 0.5 * smallest separation when separations are given, 0.5 otherwise.
double default_delta(const ExcisionScenario& scenario);

void write_spectrum_csv(std::ostream& os, double eps, const std::vector<ModeEigenvalue>& modes, bool header = true);

} // namespace steklov
