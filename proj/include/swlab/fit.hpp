// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SWLAB_FIT_HPP
#define SWLAB_FIT_HPP

// Log-log least-squares power-law fit with R^2 diagnostics.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace swlab {

struct PowerLawFit {
  double exponent = 0.0;
  double amplitude = 0.0;  // y ~ amplitude * x^exponent
  double r2 = 0.0;
  int points_used = 0;
};

inline PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points,
                                 std::optional<std::pair<double, double>> x_range = {}) {
  std::vector<double> lx, ly;
  for (const auto& [x, y] : points) {
    if (x_range && (x < x_range->first || x > x_range->second)) continue;
    if (!(x > 0.0) || !(y > 0.0))
      throw std::invalid_argument("fit_power_law: data must be positive");
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  const int n = static_cast<int>(lx.size());
  if (n < 3) throw std::invalid_argument("fit_power_law: need at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_power_law: degenerate abscissae");
  PowerLawFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - fit.exponent * sx) / n;
  fit.amplitude = std::exp(intercept);
  double ss_res = 0, ss_tot = 0;
  const double ymean = sy / n;
  for (int i = 0; i < n; ++i) {
    const double pred = intercept + fit.exponent * lx[i];
    ss_res += (ly[i] - pred) * (ly[i] - pred);
    ss_tot += (ly[i] - ymean) * (ly[i] - ymean);
  }
  fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  fit.points_used = n;
  return fit;
}

}  // namespace swlab

#endif  // SWLAB_FIT_HPP
