// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SWLAB_LATTICE_HPP
#define SWLAB_LATTICE_HPP

// Discrete model of a degree-ell circle bundle over a flat rectangular
// torus of area pi.  Coordinates (t, x, y) on a regular grid; fields are
// periodic in t and x, and the y-wraparound composes with a fiber shift
// S(ix) = (ell*nt/nx)*ix that realizes the bundle twist.  Small loops in
// the (x,y) plane that cross the y-seam fail to close by a fiber
// translation; plaquette loops there are closed with compensating fiber
// legs.  All bundle data (fluxes, holonomies) lives in link variables.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "swlab/geometry.hpp"
#include "swlab/spinor.hpp"

namespace swlab {

struct LatticeSpec {
  int n_fiber = 8;
  int n_x = 8;
  int n_y = 8;
  long ell = 0;
  double delta = 1.0;
  long l_degree = 0;     // flux of the line bundle through the base
  double aspect = 0.0;   // base side L_x; 0 selects the square sqrt(pi)

  void validate() const {
    if (n_fiber < 4 || n_x < 4 || n_y < 4)
      throw std::invalid_argument("LatticeSpec: grid sizes must be >= 4");
    if (delta <= 0.0) throw std::invalid_argument("LatticeSpec: delta must be positive");
    if ((ell * n_fiber) % n_x != 0)
      throw std::invalid_argument(
          "LatticeSpec: fiber twist ell*n_fiber/n_x must be an integer (inconsistent flux)");
  }
};

enum Dir : int { DIR_T = 0, DIR_X = 1, DIR_Y = 2 };

class Lattice {
 public:
  explicit Lattice(const LatticeSpec& spec) : spec_(spec) {
    spec.validate();
    nt_ = spec.n_fiber;
    nx_ = spec.n_x;
    ny_ = spec.n_y;
    vol_ = static_cast<std::size_t>(nt_) * nx_ * ny_;
    lx_ = spec.aspect > 0.0 ? spec.aspect : std::sqrt(kBaseArea);
    ly_ = kBaseArea / lx_;
    ht_ = kFiberLength / nt_;
    hx_ = lx_ / nx_;
    hy_ = ly_ / ny_;
    twist_ = static_cast<int>(((spec.ell * nt_ / nx_) % nt_ + nt_) % nt_);
    build_neighbors();
  }

  const LatticeSpec& spec() const { return spec_; }
  int nt() const { return nt_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t volume() const { return vol_; }
  std::size_t base_volume() const { return static_cast<std::size_t>(nx_) * ny_; }
  double ht() const { return ht_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }
  double cell_volume() const { return ht_ * hx_ * hy_; }
  int twist_per_x() const { return twist_; }
  long ell() const { return spec_.ell; }

  // site-major index, t fastest
  std::size_t index(int it, int ix, int iy) const {
    return static_cast<std::size_t>(it) + static_cast<std::size_t>(nt_) * (ix + static_cast<std::size_t>(nx_) * iy);
  }
  int coord_t(std::size_t s) const { return static_cast<int>(s % nt_); }
  int coord_x(std::size_t s) const { return static_cast<int>((s / nt_) % nx_); }
  int coord_y(std::size_t s) const { return static_cast<int>(s / (static_cast<std::size_t>(nt_) * nx_)); }
  std::size_t base_index(std::size_t s) const { return s / nt_; }

  // y coordinate value used by the frame twist coefficient
  double y_of(std::size_t s) const { return coord_y(s) * hy_; }

  std::size_t neighbor(std::size_t s, Dir d) const { return fwd_[d][s]; }
  std::size_t neighbor_back(std::size_t s, Dir d) const { return bwd_[d][s]; }

  // fiber shift applied when wrapping in +y at column ix
  int seam_shift(int ix) const { return static_cast<int>((static_cast<long>(twist_) * ix) % nt_); }

  // Closed plaquette loop in the (mu,nu) plane based at s, as a sequence of
  // signed steps.  Loops crossing the y-seam are closed with backward fiber
  // legs; the number of legs equals the accumulated fiber shift.
  struct Step {
    Dir dir;
    bool forward;
  };
  std::vector<Step> plaquette_loop(std::size_t s, Dir mu, Dir nu) const {
    std::vector<Step> steps = {{mu, true}, {nu, true}, {mu, false}, {nu, false}};
    std::size_t w = s;
    for (const Step& st : steps) w = st.forward ? fwd_[st.dir][w] : bwd_[st.dir][w];
    int dt = (coord_t(w) - coord_t(s) + nt_) % nt_;
    for (int k = 0; k < dt; ++k) steps.push_back({DIR_T, false});
    return steps;
  }

  // Walks a step sequence accumulating sum of edge values with orientation signs.
  // edge_value(site, dir) -> double
  template <class EdgeValue>
  double loop_sum(std::size_t s, const std::vector<Step>& steps, EdgeValue&& edge_value) const {
    double acc = 0.0;
    std::size_t w = s;
    for (const Step& st : steps) {
      if (st.forward) {
        acc += edge_value(w, st.dir);
        w = fwd_[st.dir][w];
      } else {
        w = bwd_[st.dir][w];
        acc -= edge_value(w, st.dir);
      }
    }
    if (w != s) throw std::logic_error("plaquette loop failed to close");
    return acc;
  }

  // Same walk multiplying unitary link values.
  template <class LinkValue>
  cplx loop_product(std::size_t s, const std::vector<Step>& steps, LinkValue&& link) const {
    cplx acc{1.0, 0.0};
    std::size_t w = s;
    for (const Step& st : steps) {
      if (st.forward) {
        acc *= link(w, st.dir);
        w = fwd_[st.dir][w];
      } else {
        w = bwd_[st.dir][w];
        acc *= std::conj(link(w, st.dir));
      }
    }
    if (w != s) throw std::logic_error("plaquette loop failed to close");
    return acc;
  }

  // Exhaustive closure check of every 2-cell: the trivial cocycle must give
  // a closed walk and unit holonomy on all plaquette loops.
  bool verify_cocycle() const {
    for (std::size_t s = 0; s < vol_; ++s) {
      for (auto [mu, nu] : {std::pair{DIR_T, DIR_X}, {DIR_T, DIR_Y}, {DIR_X, DIR_Y}}) {
        const auto loop = plaquette_loop(s, mu, nu);
        const cplx h = loop_product(s, loop, [](std::size_t, Dir) { return cplx{1.0, 0.0}; });
        if (std::abs(h - cplx{1.0, 0.0}) > 1e-12) return false;
      }
    }
    return true;
  }

 private:
  void build_neighbors() {
    for (int d = 0; d < 3; ++d) {
      fwd_[d].resize(vol_);
      bwd_[d].resize(vol_);
    }
    for (int iy = 0; iy < ny_; ++iy) {
      for (int ix = 0; ix < nx_; ++ix) {
        for (int it = 0; it < nt_; ++it) {
          const std::size_t s = index(it, ix, iy);
          fwd_[DIR_T][s] = index((it + 1) % nt_, ix, iy);
          bwd_[DIR_T][s] = index((it + nt_ - 1) % nt_, ix, iy);
          fwd_[DIR_X][s] = index(it, (ix + 1) % nx_, iy);
          bwd_[DIR_X][s] = index(it, (ix + nx_ - 1) % nx_, iy);
          if (iy + 1 < ny_) {
            fwd_[DIR_Y][s] = index(it, ix, iy + 1);
          } else {
            fwd_[DIR_Y][s] = index((it + seam_shift(ix)) % nt_, ix, 0);
          }
          if (iy > 0) {
            bwd_[DIR_Y][s] = index(it, ix, iy - 1);
          } else {
            bwd_[DIR_Y][s] = index((it - seam_shift(ix) % nt_ + nt_) % nt_, ix, ny_ - 1);
          }
        }
      }
    }
  }

  LatticeSpec spec_;
  int nt_ = 0, nx_ = 0, ny_ = 0;
  std::size_t vol_ = 0;
  double lx_ = 0, ly_ = 0, ht_ = 0, hx_ = 0, hy_ = 0;
  int twist_ = 0;
  std::vector<std::size_t> fwd_[3], bwd_[3];
};

// Two-component spinor field, one (alpha, beta) per site.
struct SpinorField {
  const Lattice* lat = nullptr;
  std::vector<cplx> alpha, beta;

  SpinorField() = default;
  explicit SpinorField(const Lattice& l) : lat(&l), alpha(l.volume()), beta(l.volume()) {}

  void set_zero() {
    std::fill(alpha.begin(), alpha.end(), cplx{});
    std::fill(beta.begin(), beta.end(), cplx{});
  }
  void set_constant(cplx a, cplx b) {
    std::fill(alpha.begin(), alpha.end(), a);
    std::fill(beta.begin(), beta.end(), b);
  }
  SpinorField& operator+=(const SpinorField& o) {
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      alpha[i] += o.alpha[i];
      beta[i] += o.beta[i];
    }
    return *this;
  }
  SpinorField& operator-=(const SpinorField& o) {
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      alpha[i] -= o.alpha[i];
      beta[i] -= o.beta[i];
    }
    return *this;
  }
  SpinorField& operator*=(cplx s) {
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      alpha[i] *= s;
      beta[i] *= s;
    }
    return *this;
  }
};

// L^2 pairing with the deformed volume weight (1/delta per cell).
inline cplx spinor_ip(const SpinorField& u, const SpinorField& v, double delta) {
  cplx acc{};
  for (std::size_t i = 0; i < u.alpha.size(); ++i)
    acc += std::conj(u.alpha[i]) * v.alpha[i] + std::conj(u.beta[i]) * v.beta[i];
  return acc * (u.lat->cell_volume() / delta);
}

inline double spinor_norm(const SpinorField& u, double delta) {
  return std::sqrt(std::real(spinor_ip(u, u, delta)));
}

// Fiber-invariant imaginary 1-form deviation, stored through its real frame
// components (r0, r1, r2) on the base grid: a = i*(r0 eta + r1 eta^1 + r2 eta^2).
struct FormField {
  const Lattice* lat = nullptr;
  std::vector<double> r0, r1, r2;

  FormField() = default;
  explicit FormField(const Lattice& l)
      : lat(&l), r0(l.base_volume()), r1(l.base_volume()), r2(l.base_volume()) {}

  void set_zero() {
    std::fill(r0.begin(), r0.end(), 0.0);
    std::fill(r1.begin(), r1.end(), 0.0);
    std::fill(r2.begin(), r2.end(), 0.0);
  }
  FormField& operator+=(const FormField& o) {
    for (std::size_t i = 0; i < r0.size(); ++i) {
      r0[i] += o.r0[i];
      r1[i] += o.r1[i];
      r2[i] += o.r2[i];
    }
    return *this;
  }
  FormField& operator-=(const FormField& o) {
    for (std::size_t i = 0; i < r0.size(); ++i) {
      r0[i] -= o.r0[i];
      r1[i] -= o.r1[i];
      r2[i] -= o.r2[i];
    }
    return *this;
  }
  FormField& operator*=(double s) {
    for (std::size_t i = 0; i < r0.size(); ++i) {
      r0[i] *= s;
      r1[i] *= s;
      r2[i] *= s;
    }
    return *this;
  }
};

// g_delta inner product on 1-forms: the eta-component carries weight delta^2,
// the cell volume carries 1/delta, and the fiber direction is integrated out.
inline double form_ip(const FormField& u, const FormField& v, double delta) {
  const Lattice& lat = *u.lat;
  double acc = 0.0;
  for (std::size_t i = 0; i < u.r0.size(); ++i)
    acc += delta * delta * u.r0[i] * v.r0[i] + u.r1[i] * v.r1[i] + u.r2[i] * v.r2[i];
  return acc * (kFiberLength * lat.hx() * lat.hy() / delta);
}

inline double form_norm(const FormField& u, double delta) { return std::sqrt(form_ip(u, u, delta)); }

}  // namespace swlab

#endif  // SWLAB_LATTICE_HPP
