// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SWLAB_TAUBES_HPP
#define SWLAB_TAUBES_HPP

// Quantitative perturbation step: given certified constants of a nonlinear
// map F(y) = L y + N(y) — a lower bound mu for L, a quadratic Lipschitz
// constant kappa for N, and the residual eps0 = |N(0)| — decide whether the
// contraction y <- -L^{-1} N(y) is certified and run it.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace swlab {

struct TaubesProblem {
  double mu = 1.0;     // > 0
  double kappa = 0.0;  // >= 0
  double eps0 = 0.0;   // >= 0

  double q() const { return kappa / mu; }

  void validate() const {
    if (!(mu > 0.0) || !(kappa >= 0.0) || !(eps0 >= 0.0))
      throw std::invalid_argument("TaubesProblem: constants out of range");
  }
};

struct TaubesRadius {
  bool admissible = false;
  double r = 0.0;
};

// Perturbation radius from the certified constants.  For q > 0 the radius is
// (1 - sqrt(1 - 4 q eps0)) / (4 q); the q = 0 case returns eps0.
inline TaubesRadius taubes_radius(const TaubesProblem& p) {
  p.validate();
  TaubesRadius out;
  if (p.eps0 == 0.0) {
    out.admissible = true;
    out.r = 0.0;
    return out;
  }
  const double q = p.q();
  if (q == 0.0) {
    out.admissible = p.eps0 < 0.5;
    out.r = p.eps0;
    return out;
  }
  out.admissible = (p.eps0 < 1.0 / (4.0 * q)) && (p.eps0 < 0.5);
  if (out.admissible) out.r = (1.0 - std::sqrt(1.0 - 4.0 * q * p.eps0)) / (4.0 * q);
  return out;
}

// Invariant-ball radius for the fixed-point iteration: the smallest root of
// q rho^2 - rho + eps0/mu = 0.
inline double taubes_ball_radius(const TaubesProblem& p) {
  const double q = p.q();
  const double e = p.eps0 / p.mu;
  if (q == 0.0) return e;
  const double disc = 1.0 - 4.0 * q * e;
  if (disc < 0.0) return -1.0;  // no invariant ball
  return (1.0 - std::sqrt(disc)) / (2.0 * q);
}

using Vec = std::vector<double>;

inline double vnorm(const Vec& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

// Nonlinear map handle: F(y) = L y + N(y) with an exact inverse of L.
struct TaubesMap {
  std::function<Vec(const Vec&)> solve_L;  // y -> L^{-1} y
  std::function<Vec(const Vec&)> N;
  std::function<Vec(const Vec&)> F;        // full map, used to verify the result
};

struct TaubesSolution {
  bool success = false;
  Vec y;
  int iterations = 0;
  double residual = 0.0;     // |F(y)|
  double norm = 0.0;         // |y|
  double contraction = 0.0;  // worst observed step ratio
  std::string message;
};

// Banach iteration y <- -L^{-1} N(y) from y = 0, certified by the constants.
inline TaubesSolution taubes_solve(const TaubesMap& map, const TaubesProblem& p,
                                   double tol = 1e-12, int max_iter = 200) {
  p.validate();
  TaubesSolution out;
  const TaubesRadius rad = taubes_radius(p);
  if (!rad.admissible) {
    out.message = "constants inadmissible";
    return out;
  }
  const double rho = taubes_ball_radius(p);
  if (rho < 0.0) {
    out.message = "no invariant ball";
    return out;
  }
  const double certified_ratio = 2.0 * p.q() * rho;

  Vec y(p.eps0 == 0.0 ? map.N(Vec{}).size() : map.N(Vec{}).size(), 0.0);
  double prev_step = -1.0;
  for (int it = 1; it <= max_iter; ++it) {
    Vec ny = map.N(y);
    Vec ynew = map.solve_L(ny);
    for (double& v : ynew) v = -v;
    Vec diff = ynew;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= y[i];
    const double step = vnorm(diff);
    if (prev_step > 0.0 && step > 1e-14) {
      const double ratio = step / prev_step;
      out.contraction = std::max(out.contraction, ratio);
      if (ratio > std::max(certified_ratio * 1.5, 0.9999)) {
        out.message = "observed contraction ratio exceeds the certified bound";
        out.y = std::move(ynew);
        return out;
      }
    }
    prev_step = step;
    y = std::move(ynew);
    out.iterations = it;
    if (step <= tol * std::max(1.0, vnorm(y))) break;
  }
  out.y = y;
  out.norm = vnorm(y);
  out.residual = vnorm(map.F(y));
  if (out.norm > rho * (1.0 + 1e-9)) {
    out.message = "solution left the certified ball";
    return out;
  }
  out.success = true;
  return out;
}

}  // namespace swlab

#endif  // SWLAB_TAUBES_HPP
