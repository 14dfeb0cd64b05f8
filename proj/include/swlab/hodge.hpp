// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SWLAB_HODGE_HPP
#define SWLAB_HODGE_HPP

// Discrete Hodge pieces for fiber-invariant deviation 1-forms.  Gauge
// directions only move the base components (r1, r2); the Coulomb slice is
// their orthogonal complement, computed through a conjugate-gradient
// Poisson solve on the plain periodic base grid.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "swlab/lattice.hpp"

namespace swlab {

namespace base2d {

inline std::size_t bidx(const Lattice& lat, int ix, int iy) {
  return static_cast<std::size_t>(ix) + static_cast<std::size_t>(lat.nx()) * iy;
}
inline std::size_t bfx(const Lattice& lat, std::size_t b) { return b % lat.nx() == static_cast<std::size_t>(lat.nx()) - 1 ? b + 1 - lat.nx() : b + 1; }
inline std::size_t bfy(const Lattice& lat, std::size_t b) {
  const std::size_t stride = lat.nx();
  return b + stride >= lat.base_volume() ? b + stride - lat.base_volume() : b + stride;
}
inline std::size_t bbx(const Lattice& lat, std::size_t b) { return b % lat.nx() == 0 ? b + lat.nx() - 1 : b - 1; }
inline std::size_t bby(const Lattice& lat, std::size_t b) {
  const std::size_t stride = lat.nx();
  return b < stride ? b + lat.base_volume() - stride : b - stride;
}

}  // namespace base2d

// forward gradient of a base function into the (r1, r2) slots
inline FormField dbase(const Lattice& lat, const std::vector<double>& f) {
  FormField out(lat);
  for (std::size_t b = 0; b < lat.base_volume(); ++b) {
    out.r1[b] = (f[base2d::bfx(lat, b)] - f[b]) / lat.hx();
    out.r2[b] = (f[base2d::bfy(lat, b)] - f[b]) / lat.hy();
  }
  return out;
}

// negative adjoint of dbase restricted to (r1, r2)
inline std::vector<double> div_base(const Lattice& lat, const FormField& a) {
  std::vector<double> out(lat.base_volume());
  for (std::size_t b = 0; b < lat.base_volume(); ++b) {
    out[b] = (a.r1[b] - a.r1[base2d::bbx(lat, b)]) / lat.hx() +
             (a.r2[b] - a.r2[base2d::bby(lat, b)]) / lat.hy();
  }
  return out;
}

// plaquette curl density of the base components, colocated at the cell corner
inline std::vector<double> curl_base(const Lattice& lat, const FormField& a) {
  std::vector<double> out(lat.base_volume());
  for (std::size_t b = 0; b < lat.base_volume(); ++b) {
    out[b] = (a.r2[base2d::bfx(lat, b)] - a.r2[b]) / lat.hx() -
             (a.r1[base2d::bfy(lat, b)] - a.r1[b]) / lat.hy();
  }
  return out;
}

// exact transpose of curl_base (plain l2 pairing on the base grid)
inline FormField curl_base_transpose(const Lattice& lat, const std::vector<double>& u) {
  FormField out(lat);
  for (std::size_t b = 0; b < lat.base_volume(); ++b) {
    out.r2[b] = (u[base2d::bbx(lat, b)] - u[b]) / lat.hx();
    out.r1[b] = (u[b] - u[base2d::bby(lat, b)]) / lat.hy();
  }
  return out;
}

// 5-point periodic Poisson solve  (div grad) u = rhs,  mean-zero gauge.
// Reports iterations; throws on non-convergence.
inline std::vector<double> poisson_solve_base(const Lattice& lat, std::vector<double> rhs,
                                              double tol = 1e-12, int max_iter = 20000,
                                              int* iters_out = nullptr) {
  const std::size_t n = lat.base_volume();
  double mean = 0.0;
  for (double v : rhs) mean += v;
  mean /= static_cast<double>(n);
  for (double& v : rhs) v -= mean;

  auto lap = [&lat](const std::vector<double>& u) {
    std::vector<double> out(u.size());
    const double wx = 1.0 / (lat.hx() * lat.hx());
    const double wy = 1.0 / (lat.hy() * lat.hy());
    for (std::size_t b = 0; b < u.size(); ++b) {
      out[b] = wx * (u[base2d::bfx(lat, b)] - 2.0 * u[b] + u[base2d::bbx(lat, b)]) +
               wy * (u[base2d::bfy(lat, b)] - 2.0 * u[b] + u[base2d::bby(lat, b)]);
    }
    return out;
  };

  std::vector<double> x(n, 0.0), r = rhs, p = r;
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
  };
  double rr = dot(r, r);
  const double rhs_norm = std::sqrt(rr);
  if (rhs_norm == 0.0) {
    if (iters_out) *iters_out = 0;
    return x;
  }
  int it = 0;
  for (; it < max_iter; ++it) {
    if (std::sqrt(rr) <= tol * rhs_norm) break;
    std::vector<double> ap = lap(p);
    for (double& v : ap) v = -v;  // -Laplacian is SPD
    const double alpha = rr / dot(p, ap);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rr_new = dot(r, r);
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + (rr_new / rr) * p[i];
    rr = rr_new;
  }
  if (it >= max_iter) throw std::runtime_error("poisson_solve_base: CG did not converge");
  if (iters_out) *iters_out = it;
  // negate: we solved (-lap) x = rhs, want lap u = rhs
  for (double& v : x) v = -v;
  return x;
}

// g_delta-orthogonal projection onto the kernel of the codifferential
// (orthogonal complement of the gauge directions).  Idempotent to solver
// tolerance; the eta-component is untouched by fiber-invariant gauge motion.
inline FormField coulomb_project(const FormField& a, double tol = 1e-12) {
  const Lattice& lat = *a.lat;
  std::vector<double> u = poisson_solve_base(lat, div_base(lat, a), tol);
  FormField grad = dbase(lat, u);
  FormField out = a;
  for (std::size_t b = 0; b < lat.base_volume(); ++b) {
    out.r1[b] -= grad.r1[b];
    out.r2[b] -= grad.r2[b];
  }
  return out;
}

inline double coulomb_defect(const FormField& a) {
  const Lattice& lat = *a.lat;
  const auto d = div_base(lat, a);
  double acc = 0.0;
  for (double v : d) acc += v * v;
  return std::sqrt(acc * lat.hx() * lat.hy());
}

// Removes the two harmonic directions (constant base components); these are
// tangent to the reducible torus and belong to the moduli, not the gap.
inline void project_out_harmonic(FormField& a) {
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t b = 0; b < a.r1.size(); ++b) {
    m1 += a.r1[b];
    m2 += a.r2[b];
  }
  m1 /= static_cast<double>(a.r1.size());
  m2 /= static_cast<double>(a.r2.size());
  for (std::size_t b = 0; b < a.r1.size(); ++b) {
    a.r1[b] -= m1;
    a.r2[b] -= m2;
  }
}

}  // namespace swlab

#endif  // SWLAB_HODGE_HPP
