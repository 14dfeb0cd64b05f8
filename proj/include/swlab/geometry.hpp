// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SWLAB_GEOMETRY_HPP
#define SWLAB_GEOMETRY_HPP

// Closed-form invariants of Killing metric almost contact structures on
// circle bundles over surfaces, and their behavior under anisotropic
// (fiber-only) metric deformations.  Everything here is exact arithmetic
// on formulas; no discretization.

#include <array>
#include <cmath>
#include <stdexcept>

namespace swlab {

inline constexpr double kBaseArea = 3.14159265358979323846;  // normalized vol(base) = pi
inline constexpr double kFiberLength = 2.0 * 3.14159265358979323846;

// Pointwise invariants of a Killing m.a.c. structure with constant twist.
//   lambda : d(eta) = 2*lambda * (*eta)
//   varphi : infinitesimal fiber rotation
//   b      : lambda + varphi
//   sigma  : transverse curvature invariant (deformation-inert)
//   kappa  : sectional curvature of the horizontal plane
//   scal   : scalar curvature
//   delta  : fiber deformation parameter (1 = undeformed)
struct MacInvariants {
  double lambda = 0.0;
  double varphi = 0.0;
  double b = 0.0;
  double sigma = 0.0;
  double kappa = 0.0;
  double scal = 0.0;
  double delta = 1.0;

  // Structural identities; violations indicate construction bugs.
  double identity_b_defect() const { return b - (lambda + varphi); }
  double identity_scal_defect() const { return scal - (2.0 * kappa + 4.0 * lambda * lambda); }
  double identity_kappa_defect() const {
    return kappa - (sigma - lambda * lambda + 2.0 * lambda * varphi);
  }
};

// Topological/geometric data fixing a problem instance: a degree-ell circle
// bundle over a genus-g surface of area pi, a line-bundle class, and the
// fiber deformation parameter delta.
struct BundleSpec {
  long ell = 0;        // bundle degree
  int genus = 1;       // base genus (>= 0)
  double base_area = kBaseArea;
  double delta = 1.0;  // > 0
  long l_n_class = 0;  // torsion class of L (mod |ell| when ell != 0) resp. degree when ell = 0
  bool is_pullback = true;

  void validate() const {
    if (delta <= 0.0) throw std::invalid_argument("BundleSpec: delta must be positive");
    if (genus < 0) throw std::invalid_argument("BundleSpec: genus must be >= 0");
  }
};

// Invariants of the standard structure on the degree-ell bundle, fiber
// metric scaled by 1/delta^2.  sigma_base is the transverse curvature of
// the base connection (0 for a flat torus).
inline MacInvariants boothby_wang_invariants(const BundleSpec& spec, double sigma_base) {
  spec.validate();
  const double d = spec.delta;
  const double l = static_cast<double>(spec.ell);
  MacInvariants inv;
  inv.delta = d;
  inv.lambda = -l / d;
  inv.varphi = l / d;
  inv.b = 0.0;
  inv.sigma = sigma_base;
  inv.kappa = sigma_base - 3.0 * l * l / (d * d);
  inv.scal = 2.0 * (sigma_base - l * l / (d * d));
  return inv;
}

// Fiber-only rescaling of the metric by 1/delta^2 (a D-homothety).
// Composes exactly: deform(deform(x, d1), d2) == deform(x, d1*d2).
inline MacInvariants anisotropic_deform(const MacInvariants& inv, double delta) {
  if (delta <= 0.0) throw std::invalid_argument("anisotropic_deform: delta must be positive");
  MacInvariants out;
  out.delta = inv.delta * delta;
  out.lambda = inv.lambda / delta;
  out.b = delta * inv.b;
  out.varphi = delta * inv.varphi + (delta - 1.0 / delta) * inv.lambda;
  out.sigma = inv.sigma;
  out.kappa = out.sigma - out.lambda * out.lambda + 2.0 * out.lambda * out.varphi;
  out.scal = 2.0 * out.kappa + 4.0 * out.lambda * out.lambda;
  return out;
}

using Mat3 = std::array<std::array<double, 3>, 3>;

// Ricci curvature in the adapted frame (zeta, zeta1, zeta2).
inline Mat3 ricci_matrix(const MacInvariants& inv) {
  const double l2 = inv.lambda * inv.lambda;
  const double k = inv.kappa;
  return Mat3{{{2.0 * l2, 0.0, 0.0}, {0.0, k + l2, -k}, {0.0, -k, k + l2}}};
}

inline double trace(const Mat3& m) { return m[0][0] + m[1][1] + m[2][2]; }

}  // namespace swlab

#endif  // SWLAB_GEOMETRY_HPP
