#pragma once

#include <array>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "steklov/core.hpp"

namespace steklov {

struct BoundReport {
  double constant_C = 0.0;
  double exponent = 0.0; // 1/(m+1)
  std::array<double, 3> terms{};
  int binding_term = 1; // 1-based index of the smallest term
};

/// The explicit constant of the lower bound sigma_1 >= C eps^{-1/(m+1)}:
/// min of max(min_j(m-n_j-2), 1)/4, min|N|^2 w^2 / (16 b (b-1)^2) and
/// lambda_1 min|N|^2 w^2 / (128 m b (b-1)^2 max|N|^2 w^2), with w = |S^{d_j}|.
/// Requires b >= 2.
BoundReport constant_C(const ExcisionScenario& scenario);

// sigma1 >= (1 - slack) C eps^{-1/(m+1)}; slack in [0, 1).
bool lower_bound_check(double sigma1, double eps, const BoundReport& report, int m, double slack);

enum class SweepVerdict { Pass, Warning, Fail };

struct SweepPoint {
  double eps = 0.0;
  double sigma1 = 0.0;
  double threshold = 0.0;
  bool holds = true;
  double violation = 0.0; // threshold / sigma1 - 1 when it fails
};

struct SweepReport {
  std::vector<SweepPoint> points;
  SweepVerdict verdict = SweepVerdict::Pass;
};

/// Runs lower_bound_check with slack 0 along a strictly decreasing eps grid.
/// Isolated failures are warnings; a violation that keeps growing as eps
/// decreases is a failure.
SweepReport lower_bound_sweep(const std::vector<std::pair<double, double>>& eps_sigma, const BoundReport& report,
                              int m);

// max{1, m - min_j n_j - 2}.
double upper_bound_limit(const ExcisionScenario& scenario);

// K^{m + 1/2}.
double quasi_ratio_bound(double K, int m);

/// Least-squares slope p of log sigma = p log(1/eps) + c.
double fitted_divergence_exponent(const std::vector<std::pair<double, double>>& eps_sigma);

nlohmann::json to_json(const BoundReport& report);

} // namespace steklov
