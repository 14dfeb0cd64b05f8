// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SWLAB_SW_HPP
#define SWLAB_SW_HPP

// The deformed Chern-Simons-Dirac functional on lattice configurations
// (spinor, deviation 1-form), its exact gradient and Hessian in the
// deformed metrics, the constrained linearization, and the critical-point
// search (residual descent with Armijo backtracking, then inexact Newton
// through conjugate-gradient solves, with Coulomb re-projection).

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "swlab/gauge.hpp"
#include "swlab/hodge.hpp"
#include "swlab/lattice.hpp"
#include "swlab/operators.hpp"
#include "swlab/spectral.hpp"

namespace swlab {

struct Configuration {
  SpinorField psi;
  FormField a;     // deviation from the reference connection
  double delta = 1.0;

  Configuration() = default;
  Configuration(const Lattice& lat, double d) : psi(lat), a(lat), delta(d) {}
};

struct SwGradient {
  SpinorField psi_slot;
  FormField form_slot;  // Riesz representative in the g_delta form metric
};

// Problem context: lattice, reference connection, deformation parameter,
// and the precomputed reference curvature (frame densities on the base).
class SwProblem {
 public:
  SwProblem(const Lattice& lat, GaugeField ref, double delta)
      : lat_(&lat), ref_(std::move(ref)), delta_(delta) {
    const CurvatureField F = curvature(ref_);
    g01_.assign(lat.base_volume(), 0.0);
    g02_.assign(lat.base_volume(), 0.0);
    g12_.assign(lat.base_volume(), 0.0);
    for (std::size_t s = 0; s < lat.volume(); ++s) {
      const std::size_t b = lat.base_index(s);
      g01_[b] += F.f01[s] / lat.nt();
      g02_[b] += F.f02[s] / lat.nt();
      g12_[b] += F.f12[s] / lat.nt();
    }
  }

  const Lattice& lattice() const { return *lat_; }
  const GaugeField& reference() const { return ref_; }
  double delta() const { return delta_; }

  Configuration zero_configuration() const { return Configuration(*lat_, delta_); }

  GaugeField dressed_gauge(const Configuration& c) const { return dressed(ref_, c.a); }

  // ---- functional ----------------------------------------------------

  double functional(const Configuration& c) const {
    const Lattice& lat = *lat_;
    const double cell = kFiberLength * lat.hx() * lat.hy();
    const double ell = static_cast<double>(lat.ell());
    const auto curl = curl_base(lat, c.a);
    double cs = 0.0;
    for (std::size_t b = 0; b < lat.base_volume(); ++b) {
      // linear pairing with the reference curvature
      cs -= c.a.r0[b] * g12_[b] - c.a.r1[b] * g02_[b] + c.a.r2[b] * g01_[b];
      // quadratic Chern-Simons part, fiber-invariant reduction
      cs -= c.a.r0[b] * curl[b] - ell * c.a.r0[b] * c.a.r0[b];
    }
    cs *= cell;
    const GaugeField U = dressed_gauge(c);
    const SpinorField dpsi = apply_dirac(delta_, U, c.psi);
    const double dirac = 0.5 * std::real(spinor_ip(c.psi, dpsi, delta_));
    return cs + dirac;
  }

  // ---- gradient --------------------------------------------------------

  // Riesz gradient in (Re <.,.>_delta) x (form metric).  When `constrained`,
  // the form slot is projected onto the Coulomb slice.
  SwGradient gradient(const Configuration& c, bool constrained = false) const {
    const Lattice& lat = *lat_;
    const GaugeField U = dressed_gauge(c);
    SwGradient g;
    g.psi_slot = apply_dirac(delta_, U, c.psi);

    FormField raw = cs_gradient_raw(c.a);
    const EdgeField collected = dirac_edge_collect(delta_, U, c.psi, c.psi);
    const FormField dirac_part = collect_to_form(lat, collected);
    const double measure = 0.5 * lat.cell_volume() / delta_;
    for (std::size_t b = 0; b < lat.base_volume(); ++b) {
      raw.r0[b] += measure * dirac_part.r0[b];
      raw.r1[b] += measure * dirac_part.r1[b];
      raw.r2[b] += measure * dirac_part.r2[b];
    }
    g.form_slot = riesz_form(raw);
    if (constrained) g.form_slot = coulomb_project(g.form_slot);
    return g;
  }

  double residual(const Configuration& c) const {
    const SwGradient g = gradient(c, false);
    const double a = spinor_norm(g.psi_slot, delta_);
    const double b = form_norm(g.form_slot, delta_);
    return std::sqrt(a * a + b * b);
  }

  // ---- Hessian ---------------------------------------------------------

  struct Tangent {
    SpinorField psi;
    FormField a;
  };

  Tangent hessian_apply(const Configuration& c, const GaugeField& U, const Tangent& t) const {
    const Lattice& lat = *lat_;
    Tangent out;
    const EdgeField thdot = edge_angles(lat, t.a);
    out.psi = apply_dirac(delta_, U, t.psi);
    out.psi += apply_dirac_dtheta(delta_, U, thdot, c.psi);

    FormField raw = cs_hessian_raw(t.a);
    const double measure = 0.5 * lat.cell_volume() / delta_;
    const EdgeField mixed_a = dirac_edge_collect(delta_, U, c.psi, t.psi);
    const EdgeField mixed_b = dirac_edge_collect(delta_, U, t.psi, c.psi);
    const EdgeField second = dirac_edge_collect(delta_, U, c.psi, c.psi, &thdot);
    const FormField fa = collect_to_form(lat, mixed_a);
    const FormField fb = collect_to_form(lat, mixed_b);
    const FormField fs = collect_to_form(lat, second);
    for (std::size_t b = 0; b < lat.base_volume(); ++b) {
      raw.r0[b] += measure * (0.5 * (fa.r0[b] + fb.r0[b]) + 0.5 * fs.r0[b]);
      raw.r1[b] += measure * (0.5 * (fa.r1[b] + fb.r1[b]) + 0.5 * fs.r1[b]);
      raw.r2[b] += measure * (0.5 * (fa.r2[b] + fb.r2[b]) + 0.5 * fs.r2[b]);
    }
    out.a = riesz_form(raw);
    return out;
  }

  // ---- constrained linearization as a real matrix-free operator --------

  // Real flattening: [Re alpha, Im alpha, Re beta, Im beta, r0, r1, r2].
  std::size_t tangent_dim() const { return 4 * lat_->volume() + 3 * lat_->base_volume(); }

  std::vector<double> tangent_metric() const {
    const Lattice& lat = *lat_;
    std::vector<double> w(tangent_dim());
    const double ws = lat.cell_volume() / delta_;
    const double wf = kFiberLength * lat.hx() * lat.hy() / delta_;
    std::size_t i = 0;
    for (; i < 4 * lat.volume(); ++i) w[i] = ws;
    for (std::size_t b = 0; b < lat.base_volume(); ++b) w[i++] = wf * delta_ * delta_;
    for (std::size_t b = 0; b < lat.base_volume(); ++b) w[i++] = wf;
    for (std::size_t b = 0; b < lat.base_volume(); ++b) w[i++] = wf;
    return w;
  }

  Tangent unflatten(const std::vector<double>& x) const {
    const Lattice& lat = *lat_;
    Tangent t{SpinorField(lat), FormField(lat)};
    const std::size_t v = lat.volume();
    for (std::size_t s = 0; s < v; ++s) {
      t.psi.alpha[s] = {x[s], x[v + s]};
      t.psi.beta[s] = {x[2 * v + s], x[3 * v + s]};
    }
    const std::size_t off = 4 * v;
    const std::size_t nb = lat.base_volume();
    for (std::size_t b = 0; b < nb; ++b) {
      t.a.r0[b] = x[off + b];
      t.a.r1[b] = x[off + nb + b];
      t.a.r2[b] = x[off + 2 * nb + b];
    }
    return t;
  }

  void flatten(const Tangent& t, std::vector<double>& x) const {
    const Lattice& lat = *lat_;
    const std::size_t v = lat.volume();
    x.resize(tangent_dim());
    for (std::size_t s = 0; s < v; ++s) {
      x[s] = t.psi.alpha[s].real();
      x[v + s] = t.psi.alpha[s].imag();
      x[2 * v + s] = t.psi.beta[s].real();
      x[3 * v + s] = t.psi.beta[s].imag();
    }
    const std::size_t off = 4 * v;
    const std::size_t nb = lat.base_volume();
    for (std::size_t b = 0; b < nb; ++b) {
      x[off + b] = t.a.r0[b];
      x[off + nb + b] = t.a.r1[b];
      x[off + 2 * nb + b] = t.a.r2[b];
    }
  }

  struct LinearizationOptions {
    bool coulomb = true;          // restrict forms to the Coulomb slice
    bool circle_slice = true;     // project against the i*psi direction
    bool remove_harmonic = false; // quotient the flat-torus moduli directions
  };

  void project_tangent(const Configuration& c, const LinearizationOptions& opt, Tangent& t) const {
    if (opt.coulomb) t.a = coulomb_project(t.a);
    if (opt.remove_harmonic) project_out_harmonic(t.a);
    if (opt.circle_slice) {
      const double nrm2 = std::real(spinor_ip(c.psi, c.psi, delta_));
      if (nrm2 > 1e-24) {
        // remove the real span of i*psi
        SpinorField ipsi = c.psi;
        ipsi *= cplx{0.0, 1.0};
        const double coef = std::real(spinor_ip(ipsi, t.psi, delta_)) / nrm2;
        for (std::size_t s = 0; s < t.psi.alpha.size(); ++s) {
          t.psi.alpha[s] -= coef * ipsi.alpha[s];
          t.psi.beta[s] -= coef * ipsi.beta[s];
        }
      }
    }
  }

  // Self-adjoint handle for the (projected) second variation at c.
  LinearOperator<double> linearization(const Configuration& c,
                                       LinearizationOptions opt = {}) const {
    LinearOperator<double> op;
    op.dim = tangent_dim();
    op.weight = tangent_metric();
    op.name = "sw-linearization";
    auto U = std::make_shared<GaugeField>(dressed_gauge(c));
    auto cc = std::make_shared<Configuration>(c);
    const SwProblem* self = this;
    op.apply = [self, U, cc, opt](const std::vector<double>& x, std::vector<double>& y) {
      Tangent t = self->unflatten(x);
      self->project_tangent(*cc, opt, t);
      Tangent ht = self->hessian_apply(*cc, *U, t);
      self->project_tangent(*cc, opt, ht);
      self->flatten(ht, y);
    };
    return op;
  }

  // ---- critical point search -------------------------------------------

  struct SolveParams {
    double tol = 1e-9;            // target residual (gradient norm)
    int max_iter = 400;
    double newton_threshold = 1e-3;
    int cg_max_iter = 200;
    double reducibility_factor = 1e-6;
  };

  struct SolveLogRow {
    int iter;
    double functional;
    double residual;
    double psi_norm;
  };

  struct SolveResult {
    Configuration c;
    bool converged = false;
    bool reducible = false;
    double residual = 0.0;
    int iterations = 0;
    std::vector<SolveLogRow> log;
    std::string message;
  };

  SolveResult find_critical_point(const Configuration& start, const SolveParams& p = {}) const;

  double reducibility_threshold(double factor = 1e-6) const {
    const double vol = kFiberLength * kBaseArea / delta_;
    return factor * std::sqrt(vol);
  }

 private:
  FormField cs_gradient_raw(const FormField& a) const {
    const Lattice& lat = *lat_;
    const double cell = kFiberLength * lat.hx() * lat.hy();
    const double ell = static_cast<double>(lat.ell());
    const auto curl = curl_base(lat, a);
    const FormField ct = curl_base_transpose(lat, a.r0);
    FormField raw(lat);
    for (std::size_t b = 0; b < lat.base_volume(); ++b) {
      raw.r0[b] = -cell * (g12_[b] + curl[b] - 2.0 * ell * a.r0[b]);
      raw.r1[b] = -cell * (-g02_[b] + ct.r1[b]);
      raw.r2[b] = -cell * (g01_[b] + ct.r2[b]);
    }
    return raw;
  }

  FormField cs_hessian_raw(const FormField& da) const {
    const Lattice& lat = *lat_;
    const double cell = kFiberLength * lat.hx() * lat.hy();
    const double ell = static_cast<double>(lat.ell());
    const auto curl = curl_base(lat, da);
    const FormField ct = curl_base_transpose(lat, da.r0);
    FormField raw(lat);
    for (std::size_t b = 0; b < lat.base_volume(); ++b) {
      raw.r0[b] = -cell * (curl[b] - 2.0 * ell * da.r0[b]);
      raw.r1[b] = -cell * ct.r1[b];
      raw.r2[b] = -cell * ct.r2[b];
    }
    return raw;
  }

  FormField riesz_form(const FormField& raw) const {
    const Lattice& lat = *lat_;
    const double wf = kFiberLength * lat.hx() * lat.hy() / delta_;
    FormField out = raw;
    for (std::size_t b = 0; b < lat.base_volume(); ++b) {
      out.r0[b] /= wf * delta_ * delta_;
      out.r1[b] /= wf;
      out.r2[b] /= wf;
    }
    return out;
  }

  const Lattice* lat_;
  GaugeField ref_;
  double delta_;
  std::vector<double> g01_, g02_, g12_;
};

namespace detail_sw {

inline void axpy(SwProblem::Tangent& y, double a, const SwProblem::Tangent& x) {
  for (std::size_t s = 0; s < y.psi.alpha.size(); ++s) {
    y.psi.alpha[s] += a * x.psi.alpha[s];
    y.psi.beta[s] += a * x.psi.beta[s];
  }
  for (std::size_t b = 0; b < y.a.r0.size(); ++b) {
    y.a.r0[b] += a * x.a.r0[b];
    y.a.r1[b] += a * x.a.r1[b];
    y.a.r2[b] += a * x.a.r2[b];
  }
}

inline double tangent_ip(const SwProblem::Tangent& u, const SwProblem::Tangent& v, double delta) {
  return std::real(spinor_ip(u.psi, v.psi, delta)) + form_ip(u.a, v.a, delta);
}

}  // namespace detail_sw

inline SwProblem::SolveResult SwProblem::find_critical_point(const Configuration& start,
                                                             const SolveParams& p) const {
  SolveResult res;
  res.c = start;
  res.c.a = coulomb_project(res.c.a);

  auto grad_tangent = [this](const Configuration& c) {
    SwGradient g = gradient(c, true);
    Tangent t{std::move(g.psi_slot), std::move(g.form_slot)};
    return t;
  };

  auto apply_step = [this](const Configuration& c, const Tangent& d, double s) {
    Configuration out = c;
    for (std::size_t i = 0; i < out.psi.alpha.size(); ++i) {
      out.psi.alpha[i] += s * d.psi.alpha[i];
      out.psi.beta[i] += s * d.psi.beta[i];
    }
    for (std::size_t b = 0; b < out.a.r0.size(); ++b) {
      out.a.r0[b] += s * d.a.r0[b];
      out.a.r1[b] += s * d.a.r1[b];
      out.a.r2[b] += s * d.a.r2[b];
    }
    out.a = coulomb_project(out.a);
    return out;
  };

  Tangent g = grad_tangent(res.c);
  double rq = detail_sw::tangent_ip(g, g, delta_);
  double step = 1.0;

  for (int it = 0; it < p.max_iter; ++it) {
    const double resid = std::sqrt(rq);
    res.log.push_back({it, functional(res.c), resid, spinor_norm(res.c.psi, delta_)});
    res.iterations = it;
    if (resid <= p.tol) {
      res.converged = true;
      break;
    }

    bool accepted = false;
    if (resid < p.newton_threshold) {
      // inexact Newton: solve H dx = -g by CG in the projected tangent space
      GaugeField U = dressed_gauge(res.c);
      Tangent x{SpinorField(*lat_), FormField(*lat_)};
      Tangent r = g;
      detail_sw::axpy(r, -2.0, g);  // r = -g
      Tangent pdir = r;
      double rr = detail_sw::tangent_ip(r, r, delta_);
      const double rr0 = rr;
      for (int cg = 0; cg < p.cg_max_iter && rr > 0.01 * rr0; ++cg) {
        Tangent hp = hessian_apply(res.c, U, pdir);
        hp.a = coulomb_project(hp.a);
        const double php = detail_sw::tangent_ip(pdir, hp, delta_);
        if (std::abs(php) < 1e-30) break;
        const double alpha = rr / php;
        detail_sw::axpy(x, alpha, pdir);
        detail_sw::axpy(r, -alpha, hp);
        const double rr_new = detail_sw::tangent_ip(r, r, delta_);
        Tangent pnew = r;
        detail_sw::axpy(pnew, rr_new / rr, pdir);  // pnew = r + beta * pdir
        pdir = std::move(pnew);
        rr = rr_new;
      }
      double s = 1.0;
      for (int ls = 0; ls < 20; ++ls) {
        Configuration trial = apply_step(res.c, x, s);
        Tangent gt = grad_tangent(trial);
        const double rq_t = detail_sw::tangent_ip(gt, gt, delta_);
        if (rq_t < rq) {
          res.c = std::move(trial);
          g = std::move(gt);
          rq = rq_t;
          accepted = true;
          break;
        }
        s *= 0.5;
      }
    }
    if (!accepted) {
      // residual descent: direction -grad(R) = -H g
      GaugeField U = dressed_gauge(res.c);
      Tangent hg = hessian_apply(res.c, U, g);
      hg.a = coulomb_project(hg.a);
      const double slope = detail_sw::tangent_ip(hg, hg, delta_);
      if (slope < 1e-30) {
        res.message = "stationary residual gradient";
        break;
      }
      double s = step;
      for (int ls = 0; ls < 40; ++ls) {
        Configuration trial = apply_step(res.c, hg, -s);
        Tangent gt = grad_tangent(trial);
        const double rq_t = detail_sw::tangent_ip(gt, gt, delta_);
        if (rq_t <= rq - 1e-4 * s * slope) {
          res.c = std::move(trial);
          g = std::move(gt);
          rq = rq_t;
          accepted = true;
          step = s * 1.5;
          break;
        }
        s *= 0.5;
      }
      if (!accepted) {
        res.message = "line search failed";
        break;
      }
    }
  }
  res.residual = std::sqrt(rq);
  if (res.residual <= p.tol) res.converged = true;
  res.reducible = spinor_norm(res.c.psi, delta_) < reducibility_threshold(p.reducibility_factor);
  return res;
}

}  // namespace swlab

#endif  // SWLAB_SW_HPP
