// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "swlab/rng.hpp"
#include "swlab/spinor.hpp"

using namespace swlab;

namespace {
const cplx I{0.0, 1.0};

Spinor random_spinor(Rng& rng) { return {rng.cnormal(), rng.cnormal()}; }
}  // namespace

TEST_CASE("Clifford matrices of the frame covectors") {
  CoframeVector e0{1.0, 0.0, 0.0};
  Mat2 m = clifford(e0);
  CHECK(m.a == I);
  CHECK(m.d == -I);
  CHECK(m.b == cplx{});

  CHECK(max_abs(clifford(CoframeVector{})) == 0.0);

  // purely imaginary 1-forms act self-adjointly
  CoframeVector v{0.0, I, 0.0};
  m = clifford(v);
  CHECK(m.b == I);
  CHECK(m.c == -I);
  CHECK(max_abs(m - m.adjoint()) < 1e-15);
}

TEST_CASE("Clifford relations") {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Mat2 anti = clifford_e(i) * clifford_e(j) + clifford_e(j) * clifford_e(i);
      const Mat2 expect = (i == j) ? Mat2{-2.0, 0.0, 0.0, -2.0} : Mat2{};
      CHECK(max_abs(anti - expect) == 0.0);
    }
  }
}

TEST_CASE("tau on basis spinors") {
  Mat2 m = tau(Spinor{1.0, 0.0});
  CHECK(m.a == cplx{0.5});
  CHECK(m.d == cplx{-0.5});
  CHECK(m.b == cplx{});
  CHECK(max_abs(tau(Spinor{})) == 0.0);
  m = tau_via_frame(Spinor{0.0, 1.0});
  CHECK(m.a == cplx{-0.5});
  CHECK(m.d == cplx{0.5});
}

TEST_CASE("tau eigenvalues are +-|phi|^2/2") {
  // oracle: the 2x2 characteristic polynomial, det = -(|phi|^2/2)^2, trace 0
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Spinor phi = random_spinor(rng);
    const Mat2 m = tau(phi);
    const cplx det = m.a * m.d - m.b * m.c;
    const double half = 0.5 * phi.norm_sq();
    CHECK(std::abs(det + half * half) < 1e-12 * (1.0 + half * half));
    CHECK(std::abs(m.trace()) < 1e-14 * (1.0 + half));
    CHECK(max_abs(m - m.adjoint()) < 1e-14 * (1.0 + half));
  }
}

TEST_CASE("frame-sum form of tau agrees with the matrix form") {
  Rng rng(4);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Spinor phi = random_spinor(rng);
    worst = std::max(worst, max_abs(tau(phi) - tau_via_frame(phi)));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("tau is equivariant under the spin action") {
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    cplx u = rng.cnormal(), v = rng.cnormal();
    const double n = std::sqrt(std::norm(u) + std::norm(v));
    u /= n;
    v /= n;
    const Mat2 S = spin_action(u, v);
    const Spinor phi = random_spinor(rng);
    const Spinor sphi = S * phi;
    const Mat2 lhs = tau(sphi);
    const Mat2 rhs = S * tau(phi) * S.adjoint();  // S is unitary
    CHECK(max_abs(lhs - rhs) < 1e-12 * (1.0 + phi.norm_sq()));
  }
}

TEST_CASE("tau scales quadratically") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Spinor phi = random_spinor(rng);
    const cplx t = rng.cnormal();
    const Spinor tphi{t * phi.alpha, t * phi.beta};
    const Mat2 lhs = tau(tphi);
    const Mat2 rhs = std::norm(t) * tau(phi);
    CHECK(max_abs(lhs - rhs) < 1e-12 * (1.0 + std::norm(t) * phi.norm_sq()));
  }
}

TEST_CASE("clifford_inverse inverts the Clifford map on traceless Hermitians") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Spinor phi = random_spinor(rng);
    const Mat2 m = tau(phi);
    const CoframeVector v = clifford_inverse(m);
    CHECK(max_abs(clifford(v) - m) < 1e-13 * (1.0 + phi.norm_sq()));
    // coefficients of a Hermitian endomorphism are purely imaginary
    CHECK(std::abs(std::real(v.c0)) < 1e-14 * (1.0 + phi.norm_sq()));
    CHECK(std::abs(std::real(v.c1)) < 1e-14 * (1.0 + phi.norm_sq()));
    CHECK(std::abs(std::real(v.c2)) < 1e-14 * (1.0 + phi.norm_sq()));
  }
}

TEST_CASE("tau_dot matches the rank-one variation at a constant spinor") {
  const double c0 = 1.3;
  Rng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const Spinor psidot = random_spinor(rng);
    const Mat2 m = tau_dot(Spinor{0.0, c0}, psidot);
    // printed block: c0 * [[-Re psidot_1, psidot_0], [conj(psidot_0), Re psidot_1]]
    CHECK(std::abs(m.a - cplx{-c0 * std::real(psidot.beta), 0.0}) < 1e-13);
    CHECK(std::abs(m.b - c0 * psidot.alpha) < 1e-13);
    CHECK(std::abs(m.c - c0 * std::conj(psidot.alpha)) < 1e-13);
    CHECK(std::abs(m.d - cplx{c0 * std::real(psidot.beta), 0.0}) < 1e-13);
  }
}

TEST_CASE("tau_dot is the derivative of tau") {
  Rng rng(11);
  const double h = 1e-6;
  for (int trial = 0; trial < 10; ++trial) {
    const Spinor psi = random_spinor(rng);
    const Spinor dot = random_spinor(rng);
    const Spinor plus{psi.alpha + h * dot.alpha, psi.beta + h * dot.beta};
    const Spinor minus{psi.alpha - h * dot.alpha, psi.beta - h * dot.beta};
    const Mat2 fd = (tau(plus) - tau(minus)) * cplx{1.0 / (2.0 * h), 0.0};
    CHECK(max_abs(fd - tau_dot(psi, dot)) < 1e-7);
  }
}
