// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef SWLAB_SPINOR_HPP
#define SWLAB_SPINOR_HPP

// Pointwise 3D spinorial algebra: the Clifford representation on C^2,
// Clifford action of complexified 1-forms in an adapted coframe, and the
// quadratic map tau feeding the curvature equations.  Conventions: the
// inner product <u,v> is linear in u and conjugate-linear in v, matching
// the quaternion model q = u + jv <-> (u, v).

#include <array>
#include <cmath>
#include <complex>

namespace swlab {

using cplx = std::complex<double>;

struct Spinor {
  cplx alpha{0.0, 0.0};
  cplx beta{0.0, 0.0};

  double norm_sq() const { return std::norm(alpha) + std::norm(beta); }
};

// Coefficients of a complexified 1-form in the adapted coframe (eta^0, eta^1, eta^2).
struct CoframeVector {
  cplx c0{0.0, 0.0};
  cplx c1{0.0, 0.0};
  cplx c2{0.0, 0.0};
};

// Column-major-free tiny 2x2 complex matrix. a b / c d.
struct Mat2 {
  cplx a{0.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{0.0, 0.0};

  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator*(cplx s) const { return {s * a, s * b, s * c, s * d}; }
  Spinor operator*(const Spinor& v) const { return {a * v.alpha + b * v.beta, c * v.alpha + d * v.beta}; }
  Mat2 adjoint() const {
    return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
  }
  cplx trace() const { return a + d; }
  double max_abs() const {
    return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
  }
};

inline Mat2 operator*(cplx s, const Mat2& m) { return m * s; }

inline double max_abs(const Mat2& m) { return m.max_abs(); }

// Clifford matrices of the adapted orthonormal coframe.
inline Mat2 clifford_e(int i) {
  const cplx I{0.0, 1.0};
  switch (i) {
    case 0: return {I, 0.0, 0.0, -I};
    case 1: return {0.0, 1.0, -1.0, 0.0};
    default: return {0.0, I, I, 0.0};
  }
}

// Clifford action of a complexified 1-form.
inline Mat2 clifford(const CoframeVector& v) {
  return v.c0 * clifford_e(0) + v.c1 * clifford_e(1) + v.c2 * clifford_e(2);
}

// <u,v>: linear in the first slot, conjugate-linear in the second.
inline cplx pairing(const Spinor& u, const Spinor& v) {
  return u.alpha * std::conj(v.alpha) + u.beta * std::conj(v.beta);
}

// Quadratic map: tau(phi) psi = <psi, phi> phi - |phi|^2/2 psi, traceless Hermitian.
inline Mat2 tau(const Spinor& phi) {
  const double w = 0.5 * (std::norm(phi.alpha) - std::norm(phi.beta));
  return {cplx{w, 0.0}, phi.alpha * std::conj(phi.beta), std::conj(phi.alpha) * phi.beta,
          cplx{-w, 0.0}};
}

// Same map evaluated through the frame sum (1/2) sum_i <phi, c(e_i) phi> c(e_i).
inline Mat2 tau_via_frame(const Spinor& phi) {
  Mat2 out;
  for (int i = 0; i < 3; ++i) {
    const Mat2 ci = clifford_e(i);
    const cplx coeff = pairing(phi, ci * phi);
    out = out + (0.5 * coeff) * ci;
  }
  return out;
}

// Derivative of tau at psi in the direction psidot, as an endomorphism:
// i sum_i Im <psi, c(e_i) psidot> c(e_i).
inline Mat2 tau_dot(const Spinor& psi, const Spinor& psidot) {
  const cplx I{0.0, 1.0};
  Mat2 out;
  for (int i = 0; i < 3; ++i) {
    const Mat2 ci = clifford_e(i);
    const double im = std::imag(pairing(psi, ci * psidot));
    out = out + (I * im) * ci;
  }
  return out;
}

// Unit quaternion u + jv acting on C^2 through the spin representation.
inline Mat2 spin_action(cplx u, cplx v) {
  return {u, -std::conj(v), v, std::conj(u)};
}

// Coefficients of a traceless Hermitian endomorphism in the basis
// c(e_0), c(e_1), c(e_2); the result is a purely imaginary coframe vector.
inline CoframeVector clifford_inverse(const Mat2& m) {
  const cplx I{0.0, 1.0};
  CoframeVector v;
  v.c0 = -I * 0.5 * (m.a - m.d);
  // off-diagonal [[0,z],[zbar,0]] = Re(z) * (-i c2) + Im(z) * (i c1)
  v.c1 = I * std::imag(m.b);
  v.c2 = -I * std::real(m.b);
  return v;
}

}  // namespace swlab

#endif  // SWLAB_SPINOR_HPP
