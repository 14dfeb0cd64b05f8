// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SWLAB_OPERATORS_HPP
#define SWLAB_OPERATORS_HPP

// Matrix-free lattice Dirac blocks.  Z is the diagonal fiber-derivative
// block (limiting connection), T the off-diagonal transverse block built
// from a forward Dolbeault-type stencil, its exact matrix adjoint, and a
// doubler-suppressing second-order term that vanishes on constants.  The
// full operator is D_delta = delta*Z + T + (lambda_delta/2).
//
// Every hop term is enumerated once, together with the link path it
// traverses, so that applications, derivatives with respect to link
// angles, and gradient collections share one stencil definition.

#include <functional>
#include <memory>
#include <vector>

#include "swlab/gauge.hpp"
#include "swlab/lattice.hpp"
#include "swlab/rng.hpp"
#include "swlab/spectral.hpp"

namespace swlab {

struct HopEdge {
  std::size_t site;
  Dir dir;
  int sign;  // +1 forward traversal, -1 conjugated
};

// f(co, ci, out_site, in_site, coef, edges, nedges, in_Z)
// co/ci: spinor components of the output/input slots.
template <class F>
inline void for_each_dirac_term(const Lattice& lat, const GaugeField& U, F&& f) {
  const double ht = lat.ht(), hx = lat.hx(), hy = lat.hy();
  const cplx I{0.0, 1.0};
  const double ell = static_cast<double>(lat.ell());
  for (std::size_t s = 0; s < lat.volume(); ++s) {
    const std::size_t st = lat.neighbor(s, DIR_T), sx = lat.neighbor(s, DIR_X), sy = lat.neighbor(s, DIR_Y);
    const std::size_t bt = lat.neighbor_back(s, DIR_T), bx = lat.neighbor_back(s, DIR_X), by = lat.neighbor_back(s, DIR_Y);
    const cplx ut = U.link(s, DIR_T), ux = U.link(s, DIR_X), uy = U.link(s, DIR_Y);
    const cplx utb = std::conj(U.link(bt, DIR_T)), uxb = std::conj(U.link(bx, DIR_X)), uyb = std::conj(U.link(by, DIR_Y));
    const HopEdge et{s, DIR_T, +1}, ex{s, DIR_X, +1}, ey{s, DIR_Y, +1};
    const HopEdge etb{bt, DIR_T, -1}, exb{bx, DIR_X, -1}, eyb{by, DIR_Y, -1};
    const double y = lat.y_of(s);

    // Z = diag(xi, -xi), xi = i * centered covariant fiber difference
    for (int c = 0; c < 2; ++c) {
      const double sg = c == 0 ? 1.0 : -1.0;
      f(c, c, s, st, sg * (I / (2.0 * ht)) * ut, &et, 1, true);
      f(c, c, s, bt, sg * (-I / (2.0 * ht)) * utb, &etb, 1, true);
    }

    // T upper block: alpha += B beta
    // B = Dx^f - 2*ell*y*Dt^c + i*Dy^f + (1/2)(hx*Lap_x + hy*Lap_y)
    {
      const int co = 0, ci = 1;
      f(co, ci, s, sx, cplx{1.0 / hx, 0.0} * ux, &ex, 1, false);
      f(co, ci, s, s, cplx{-1.0 / hx, 0.0}, nullptr, 0, false);
      f(co, ci, s, st, cplx{-2.0 * ell * y / (2.0 * ht), 0.0} * ut, &et, 1, false);
      f(co, ci, s, bt, cplx{2.0 * ell * y / (2.0 * ht), 0.0} * utb, &etb, 1, false);
      f(co, ci, s, sy, (I / hy) * uy, &ey, 1, false);
      f(co, ci, s, s, -I / hy, nullptr, 0, false);
      // Wilson term
      f(co, ci, s, sx, cplx{1.0 / (2.0 * hx), 0.0} * ux, &ex, 1, false);
      f(co, ci, s, bx, cplx{1.0 / (2.0 * hx), 0.0} * uxb, &exb, 1, false);
      f(co, ci, s, sy, cplx{1.0 / (2.0 * hy), 0.0} * uy, &ey, 1, false);
      f(co, ci, s, by, cplx{1.0 / (2.0 * hy), 0.0} * uyb, &eyb, 1, false);
      f(co, ci, s, s, cplx{-1.0 / hx - 1.0 / hy, 0.0}, nullptr, 0, false);
    }

    // T lower block: beta += B^dag alpha
    // B^dag = -Dx^b + 2*ell*y*Dt^c + i*Dy^b + (1/2)(hx*Lap_x + hy*Lap_y)
    {
      const int co = 1, ci = 0;
      f(co, ci, s, s, cplx{-1.0 / hx, 0.0}, nullptr, 0, false);
      f(co, ci, s, bx, cplx{1.0 / hx, 0.0} * uxb, &exb, 1, false);
      f(co, ci, s, st, cplx{2.0 * ell * y / (2.0 * ht), 0.0} * ut, &et, 1, false);
      f(co, ci, s, bt, cplx{-2.0 * ell * y / (2.0 * ht), 0.0} * utb, &etb, 1, false);
      f(co, ci, s, s, I / hy, nullptr, 0, false);
      f(co, ci, s, by, (-I / hy) * uyb, &eyb, 1, false);
      // Wilson term
      f(co, ci, s, sx, cplx{1.0 / (2.0 * hx), 0.0} * ux, &ex, 1, false);
      f(co, ci, s, bx, cplx{1.0 / (2.0 * hx), 0.0} * uxb, &exb, 1, false);
      f(co, ci, s, sy, cplx{1.0 / (2.0 * hy), 0.0} * uy, &ey, 1, false);
      f(co, ci, s, by, cplx{1.0 / (2.0 * hy), 0.0} * uyb, &eyb, 1, false);
      f(co, ci, s, s, cplx{-1.0 / hx - 1.0 / hy, 0.0}, nullptr, 0, false);
    }
  }
}

namespace detail {
inline const cplx* comp(const SpinorField& v, int c) { return c == 0 ? v.alpha.data() : v.beta.data(); }
inline cplx* comp(SpinorField& v, int c) { return c == 0 ? v.alpha.data() : v.beta.data(); }
}  // namespace detail

inline SpinorField apply_Z(const GaugeField& U, const SpinorField& psi) {
  const Lattice& lat = U.lattice();
  SpinorField out(lat);
  for_each_dirac_term(lat, U, [&](int co, int ci, std::size_t so, std::size_t si, cplx coef,
                                  const HopEdge*, int, bool in_Z) {
    if (in_Z) detail::comp(out, co)[so] += coef * detail::comp(psi, ci)[si];
  });
  return out;
}

inline SpinorField apply_T(const GaugeField& U, const SpinorField& psi) {
  const Lattice& lat = U.lattice();
  SpinorField out(lat);
  for_each_dirac_term(lat, U, [&](int co, int ci, std::size_t so, std::size_t si, cplx coef,
                                  const HopEdge*, int, bool in_Z) {
    if (!in_Z) detail::comp(out, co)[so] += coef * detail::comp(psi, ci)[si];
  });
  return out;
}

inline double lambda_delta(const Lattice& lat, double delta) {
  return -static_cast<double>(lat.ell()) / delta;
}

// D_delta = delta*Z + T + lambda_delta/2
inline SpinorField apply_dirac(double delta, const GaugeField& U, const SpinorField& psi) {
  const Lattice& lat = U.lattice();
  SpinorField out(lat);
  const double shift = 0.5 * lambda_delta(lat, delta);
  for_each_dirac_term(lat, U, [&](int co, int ci, std::size_t so, std::size_t si, cplx coef,
                                  const HopEdge*, int, bool in_Z) {
    detail::comp(out, co)[so] += (in_Z ? delta * coef : coef) * detail::comp(psi, ci)[si];
  });
  for (std::size_t s = 0; s < lat.volume(); ++s) {
    out.alpha[s] += shift * psi.alpha[s];
    out.beta[s] += shift * psi.beta[s];
  }
  return out;
}

// Edge angle field (one real value per lattice edge).
struct EdgeField {
  const Lattice* lat = nullptr;
  std::vector<double> v[3];
  explicit EdgeField(const Lattice& l) : lat(&l) {
    for (int d = 0; d < 3; ++d) v[d].assign(l.volume(), 0.0);
  }
};

// Edge angles of a fiber-invariant deviation 1-form (exact edge integrals).
inline EdgeField edge_angles(const Lattice& lat, const FormField& r) {
  EdgeField th(lat);
  const double ell = static_cast<double>(lat.ell());
  for (std::size_t s = 0; s < lat.volume(); ++s) {
    const std::size_t b = lat.base_index(s);
    th.v[DIR_T][s] = r.r0[b] * lat.ht();
    th.v[DIR_X][s] = (r.r1[b] + 2.0 * ell * lat.y_of(s) * r.r0[b]) * lat.hx();
    th.v[DIR_Y][s] = r.r2[b] * lat.hy();
  }
  return th;
}

// Transpose of edge_angles: collects a real edge gradient into form components.
inline FormField collect_to_form(const Lattice& lat, const EdgeField& g) {
  FormField out(lat);
  const double ell = static_cast<double>(lat.ell());
  for (std::size_t s = 0; s < lat.volume(); ++s) {
    const std::size_t b = lat.base_index(s);
    out.r0[b] += g.v[DIR_T][s] * lat.ht() + g.v[DIR_X][s] * 2.0 * ell * lat.y_of(s) * lat.hx();
    out.r1[b] += g.v[DIR_X][s] * lat.hx();
    out.r2[b] += g.v[DIR_Y][s] * lat.hy();
  }
  return out;
}

inline GaugeField dressed(const GaugeField& ref, const FormField& r) {
  const Lattice& lat = ref.lattice();
  GaugeField out = ref;
  const EdgeField th = edge_angles(lat, r);
  for (int d = 0; d < 3; ++d)
    for (std::size_t s = 0; s < lat.volume(); ++s)
      if (th.v[d][s] != 0.0) out.add_angle(s, static_cast<Dir>(d), th.v[d][s]);
  return out;
}

// Directional derivative of D_delta with respect to link angles:
// each hop term picks up i * (signed sum of thdot over its link path).
inline SpinorField apply_dirac_dtheta(double delta, const GaugeField& U, const EdgeField& thdot,
                                      const SpinorField& psi) {
  const Lattice& lat = U.lattice();
  SpinorField out(lat);
  const cplx I{0.0, 1.0};
  for_each_dirac_term(lat, U, [&](int co, int ci, std::size_t so, std::size_t si, cplx coef,
                                  const HopEdge* e, int ne, bool in_Z) {
    if (ne == 0) return;
    double path = 0.0;
    for (int k = 0; k < ne; ++k) path += e[k].sign * thdot.v[e[k].dir][e[k].site];
    detail::comp(out, co)[so] += (in_Z ? delta * coef : coef) * (I * path) * detail::comp(psi, ci)[si];
  });
  return out;
}

// Per-edge collection Re <chi, i dD/dtheta_e psi>, optionally weighted once
// more by i * path(thdot) for the second angle derivative.
inline EdgeField dirac_edge_collect(double delta, const GaugeField& U, const SpinorField& chi,
                                    const SpinorField& psi, const EdgeField* thdot = nullptr) {
  const Lattice& lat = U.lattice();
  EdgeField out(lat);
  const cplx I{0.0, 1.0};
  for_each_dirac_term(lat, U, [&](int co, int ci, std::size_t so, std::size_t si, cplx coef,
                                  const HopEdge* e, int ne, bool in_Z) {
    if (ne == 0) return;
    cplx term = (in_Z ? delta * coef : coef) * detail::comp(psi, ci)[si];
    if (thdot) {
      double path = 0.0;
      for (int k = 0; k < ne; ++k) path += e[k].sign * thdot->v[e[k].dir][e[k].site];
      term *= I * path;
    }
    const cplx down = std::conj(detail::comp(chi, co)[so]) * I * term;
    for (int k = 0; k < ne; ++k) out.v[e[k].dir][e[k].site] += e[k].sign * std::real(down);
  });
  return out;
}

// Matrix-free handle for the Dirac operator on flattened spinors
// [alpha; beta]; self-adjoint in the uniformly weighted product.
inline LinearOperator<cplx> dirac_operator(double delta, const GaugeField& U) {
  auto gauge = std::make_shared<GaugeField>(U);
  LinearOperator<cplx> op;
  op.dim = 2 * U.lattice().volume();
  op.name = "dirac";
  op.apply = [gauge, delta](const std::vector<cplx>& x, std::vector<cplx>& y) {
    const Lattice& lat = gauge->lattice();
    const std::size_t v = lat.volume();
    SpinorField in(lat);
    std::copy(x.begin(), x.begin() + v, in.alpha.begin());
    std::copy(x.begin() + v, x.end(), in.beta.begin());
    const SpinorField out = apply_dirac(delta, *gauge, in);
    y.resize(2 * v);
    std::copy(out.alpha.begin(), out.alpha.end(), y.begin());
    std::copy(out.beta.begin(), out.beta.end(), y.begin() + v);
  };
  return op;
}

// Norm estimate of the anticommutator identity defect
// {Z,T} - (vertical curvature block) on seeded sample fields.
inline double anticommutator_residual(const GaugeField& U, std::uint64_t seed = 11,
                                      int samples = 4) {
  const Lattice& lat = U.lattice();
  const CurvatureField F = curvature(U);
  double worst = 0.0;
  for (int j = 0; j < samples; ++j) {
    Rng rng = Rng::derive(seed, j);
    SpinorField phi(lat);
    for (std::size_t s = 0; s < lat.volume(); ++s) {
      phi.alpha[s] = rng.cnormal();
      phi.beta[s] = rng.cnormal();
    }
    SpinorField zt = apply_T(U, apply_Z(U, phi));
    zt += apply_Z(U, apply_T(U, phi));
    // block [[0, -f01 - i f02],[f01 - i f02, 0]]
    SpinorField cur(lat);
    for (std::size_t s = 0; s < lat.volume(); ++s) {
      const cplx m01{-F.f01[s], -F.f02[s]};
      const cplx m10{F.f01[s], -F.f02[s]};
      cur.alpha[s] = m01 * phi.beta[s];
      cur.beta[s] = m10 * phi.alpha[s];
    }
    zt -= cur;
    worst = std::max(worst, spinor_norm(zt, 1.0) / spinor_norm(phi, 1.0));
  }
  return worst;
}

}  // namespace swlab

#endif  // SWLAB_OPERATORS_HPP
