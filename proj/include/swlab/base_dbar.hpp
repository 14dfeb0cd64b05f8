// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SWLAB_BASE_DBAR_HPP
#define SWLAB_BASE_DBAR_HPP

// Transverse Dolbeault-type block on the flat square base torus, twisted by
// a degree-d line bundle in compact link form.  Forward differences plus the
// stabilizing second-order term; the adjoint is the exact matrix adjoint.
// Kernel dimensions count holomorphic sections.

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "swlab/geometry.hpp"
#include "swlab/spectral.hpp"
#include "swlab/spinor.hpp"

namespace swlab {

class BaseDbar {
 public:
  BaseDbar(int n, long degree, double hol1 = 0.0, double hol2 = 0.0)
      : n_(n), degree_(degree), h_(std::sqrt(kBaseArea) / n) {
    const std::size_t nb = static_cast<std::size_t>(n) * n;
    ux_.assign(nb, cplx{1.0, 0.0});
    uy_.assign(nb, cplx{1.0, 0.0});
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const std::size_t b = idx(ix, iy);
        double ay = -two_pi * degree * ix / (static_cast<double>(n) * n) + two_pi * hol2 / n;
        double ax = two_pi * hol1 / n;
        if (ix == n - 1) ax += two_pi * degree * iy / n;
        ux_[b] = std::polar(1.0, ax);
        uy_[b] = std::polar(1.0, ay);
      }
    }
  }

  int n() const { return n_; }
  double spacing() const { return h_; }
  std::size_t dim() const { return static_cast<std::size_t>(n_) * n_; }

  void apply(const std::vector<cplx>& u, std::vector<cplx>& out) const {
    out.assign(dim(), cplx{});
    const cplx I{0.0, 1.0};
    for (int iy = 0; iy < n_; ++iy) {
      for (int ix = 0; ix < n_; ++ix) {
        const std::size_t b = idx(ix, iy);
        const std::size_t bx = idx((ix + 1) % n_, iy), by = idx(ix, (iy + 1) % n_);
        const std::size_t mx = idx((ix + n_ - 1) % n_, iy), my = idx(ix, (iy + n_ - 1) % n_);
        const cplx fx = ux_[b] * u[bx], fy = uy_[b] * u[by];
        const cplx gx = std::conj(ux_[mx]) * u[mx], gy = std::conj(uy_[my]) * u[my];
        out[b] = (fx - u[b]) / h_ + I * (fy - u[b]) / h_ +
                 (fx - 2.0 * u[b] + gx) / (2.0 * h_) + (fy - 2.0 * u[b] + gy) / (2.0 * h_);
      }
    }
  }

  void apply_adjoint(const std::vector<cplx>& u, std::vector<cplx>& out) const {
    out.assign(dim(), cplx{});
    const cplx I{0.0, 1.0};
    for (int iy = 0; iy < n_; ++iy) {
      for (int ix = 0; ix < n_; ++ix) {
        const std::size_t b = idx(ix, iy);
        const std::size_t bx = idx((ix + 1) % n_, iy), by = idx(ix, (iy + 1) % n_);
        const std::size_t mx = idx((ix + n_ - 1) % n_, iy), my = idx(ix, (iy + n_ - 1) % n_);
        const cplx fx = ux_[b] * u[bx], fy = uy_[b] * u[by];
        const cplx gx = std::conj(ux_[mx]) * u[mx], gy = std::conj(uy_[my]) * u[my];
        out[b] = (gx - u[b]) / h_ - I * (gy - u[b]) / h_ +
                 (fx - 2.0 * u[b] + gx) / (2.0 * h_) + (fy - 2.0 * u[b] + gy) / (2.0 * h_);
      }
    }
  }

  // self-adjoint square, the operator whose small eigenvalues count
  // holomorphic sections
  LinearOperator<cplx> hermitian_square() const {
    auto self = std::make_shared<BaseDbar>(*this);
    LinearOperator<cplx> op;
    op.dim = dim();
    op.name = "dbar-square";
    op.apply = [self](const std::vector<cplx>& x, std::vector<cplx>& y) {
      std::vector<cplx> mid;
      self->apply(x, mid);
      self->apply_adjoint(mid, y);
    };
    return op;
  }

  Eigen::MatrixXcd dense() const {
    Eigen::MatrixXcd M(dim(), dim());
    std::vector<cplx> e(dim(), cplx{}), col(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      e[j] = 1.0;
      apply(e, col);
      for (std::size_t i = 0; i < dim(); ++i) M(i, j) = col[i];
      e[j] = 0.0;
    }
    return M;
  }

 private:
  std::size_t idx(int ix, int iy) const { return static_cast<std::size_t>(ix) + static_cast<std::size_t>(n_) * iy; }

  int n_;
  long degree_;
  double h_;
  std::vector<cplx> ux_, uy_;
};

}  // namespace swlab

#endif  // SWLAB_BASE_DBAR_HPP
