// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SWLAB_GAUGE_HPP
#define SWLAB_GAUGE_HPP

// Compact U(1) gauge fields as link phases exp(i*angle) on lattice edges,
// plus the standard constructions: the reference connection with a given
// base flux, and flat connections parameterized by fiber and base
// holonomies.  Curvature is extracted per closed plaquette loop; frame
// components mix coordinate plaquettes through the bundle twist.

#include <cmath>
#include <vector>

#include "swlab/lattice.hpp"

namespace swlab {

class GaugeField {
 public:
  explicit GaugeField(const Lattice& lat) : lat_(&lat) {
    for (int d = 0; d < 3; ++d) {
      angle_[d].assign(lat.volume(), 0.0);
      link_[d].assign(lat.volume(), cplx{1.0, 0.0});
    }
  }

  const Lattice& lattice() const { return *lat_; }

  double angle(std::size_t s, Dir d) const { return angle_[d][s]; }
  cplx link(std::size_t s, Dir d) const { return link_[d][s]; }

  void set_angle(std::size_t s, Dir d, double a) {
    angle_[d][s] = a;
    link_[d][s] = std::polar(1.0, a);
  }
  void add_angle(std::size_t s, Dir d, double a) { set_angle(s, d, angle_[d][s] + a); }

  // gauge transformation by gamma = exp(i f): U_mu(s) -> gamma(s) U gamma(s+mu)^-1
  void gauge_transform(const std::vector<double>& f) {
    const Lattice& lat = *lat_;
    for (int d = 0; d < 3; ++d)
      for (std::size_t s = 0; s < lat.volume(); ++s)
        set_angle(s, static_cast<Dir>(d), angle_[d][s] + f[s] - f[lat.neighbor(s, static_cast<Dir>(d))]);
  }

  // Reference connection carrying base flux `degree` through the base torus;
  // fiber links are trivial, so its curvature is purely horizontal.
  static GaugeField reference(const Lattice& lat, long degree) {
    GaugeField g(lat);
    g.add_flux_pattern(degree);
    return g;
  }

  // Flat connection with fiber Wilson loop exp(2 pi i k/ell) and base
  // holonomies exp(2 pi i hol_j); requires ell != 0 and 0 <= k < |ell|.
  static GaugeField flat(const Lattice& lat, long k, double hol1, double hol2) {
    const long ell = lat.ell();
    if (ell == 0) throw std::invalid_argument("flat: requires a nontrivial bundle (ell != 0)");
    if (k < 0 || k >= std::labs(ell)) throw std::invalid_argument("flat: k out of range [0,|ell|)");
    GaugeField g(lat);
    const double kf = static_cast<double>(k) / static_cast<double>(ell);
    // (k/ell) * eta as edge integrals: exact flatness against the flux pattern below
    for (std::size_t s = 0; s < lat.volume(); ++s) {
      g.add_angle(s, DIR_T, kf * lat.ht());
      g.add_angle(s, DIR_X, kf * 2.0 * ell * lat.y_of(s) * lat.hx());
    }
    g.add_flux_pattern(-k);
    // base holonomies
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (std::size_t s = 0; s < lat.volume(); ++s) {
      g.add_angle(s, DIR_X, two_pi * hol1 / lat.nx());
      g.add_angle(s, DIR_Y, two_pi * hol2 / lat.ny());
    }
    return g;
  }

  // Wilson loop along the fiber through base point (ix, iy).
  cplx fiber_wilson_loop(int ix, int iy) const {
    const Lattice& lat = *lat_;
    cplx acc{1.0, 0.0};
    std::size_t s = lat.index(0, ix, iy);
    for (int k = 0; k < lat.nt(); ++k) {
      acc *= link_[DIR_T][s];
      s = lat.neighbor(s, DIR_T);
    }
    return acc;
  }

  // Wilson loop around a base cycle (dir = DIR_X or DIR_Y) at fixed others.
  cplx base_wilson_loop(Dir dir, int it, int other) const {
    const Lattice& lat = *lat_;
    std::size_t s = dir == DIR_X ? lat.index(it, 0, other) : lat.index(it, other, 0);
    const int n = dir == DIR_X ? lat.nx() : lat.ny();
    cplx acc{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
      acc *= link_[dir][s];
      s = lat.neighbor(s, dir);
    }
    return acc;
  }

 private:
  // Landau pattern with total plaquette angle -2*pi*degree per base slice.
  void add_flux_pattern(long degree) {
    if (degree == 0) return;
    const Lattice& lat = *lat_;
    const double two_pi = 2.0 * 3.14159265358979323846;
    const double d = static_cast<double>(degree);
    for (std::size_t s = 0; s < lat.volume(); ++s) {
      const int ix = lat.coord_x(s);
      const int iy = lat.coord_y(s);
      add_angle(s, DIR_Y, -two_pi * d * ix / (static_cast<double>(lat.nx()) * lat.ny()));
      if (ix == lat.nx() - 1) add_angle(s, DIR_X, two_pi * d * iy / lat.ny());
    }
  }

  const Lattice* lat_;
  std::vector<double> angle_[3];
  std::vector<cplx> link_[3];
};

// Per-cell curvature in frame components; values are the real densities f
// with F = i f (connections are u(1)-valued).  f01 = F(zeta,zeta1),
// f02 = F(zeta,zeta2), f12 = F(zeta1,zeta2).
struct CurvatureField {
  const Lattice* lat = nullptr;
  std::vector<double> f01, f02, f12;
  bool branch_cut_flag = false;  // some plaquette phase within 1e-6 of -1

  explicit CurvatureField(const Lattice& l)
      : lat(&l), f01(l.volume()), f02(l.volume()), f12(l.volume()) {}
};

// Principal-branch plaquette curvature of a compact gauge field.
inline CurvatureField curvature(const GaugeField& g) {
  const Lattice& lat = g.lattice();
  CurvatureField out(lat);
  const auto link = [&g](std::size_t s, Dir d) { return g.link(s, d); };
  for (std::size_t s = 0; s < lat.volume(); ++s) {
    const cplx ptx = lat.loop_product(s, lat.plaquette_loop(s, DIR_T, DIR_X), link);
    const cplx pty = lat.loop_product(s, lat.plaquette_loop(s, DIR_T, DIR_Y), link);
    const cplx pxy = lat.loop_product(s, lat.plaquette_loop(s, DIR_X, DIR_Y), link);
    for (const cplx& p : {ptx, pty, pxy})
      if (std::abs(p + cplx{1.0, 0.0}) < 1e-6) out.branch_cut_flag = true;
    const double atx = std::arg(ptx) / (lat.ht() * lat.hx());
    const double aty = std::arg(pty) / (lat.ht() * lat.hy());
    const double axy = std::arg(pxy) / (lat.hx() * lat.hy());
    out.f01[s] = atx;
    out.f02[s] = aty;
    // F(zeta1, zeta2) = F(dx, dy) - 2*ell*y * F(dt, dy)
    out.f12[s] = axy - 2.0 * lat.ell() * lat.y_of(s) * aty;
  }
  return out;
}

struct ChernPairing {
  long degree = 0;         // integer base flux
  double degree_defect = 0.0;
  double pairing = 0.0;    // integral of eta wedge c1(F)
  bool branch_cut_flag = false;
};

// Integer base flux (fiber-averaged plaquette sum) and the fiber pairing
// integral of eta wedge c1.
inline ChernPairing chern_pairing(const GaugeField& g) {
  const Lattice& lat = g.lattice();
  const CurvatureField f = curvature(g);
  ChernPairing out;
  out.branch_cut_flag = f.branch_cut_flag;
  double fluxsum = 0.0;
  double pairsum = 0.0;
  for (std::size_t s = 0; s < lat.volume(); ++s) {
    const double axy_frame_free = f.f12[s] + 2.0 * lat.ell() * lat.y_of(s) * f.f02[s];
    fluxsum += axy_frame_free * lat.hx() * lat.hy();
    pairsum += f.f12[s];
  }
  fluxsum /= lat.nt();  // fiber average of the slice flux
  const double two_pi = 2.0 * 3.14159265358979323846;
  const double deg = -fluxsum / two_pi;
  out.degree = std::lround(deg);
  out.degree_defect = std::abs(deg - out.degree);
  // integral eta ^ c1 = -(1/2pi) * sum f12 dv  (c1 = (i/2pi) F, F = i f)
  out.pairing = -pairsum * lat.cell_volume() / two_pi;
  return out;
}

}  // namespace swlab

#endif  // SWLAB_GAUGE_HPP
