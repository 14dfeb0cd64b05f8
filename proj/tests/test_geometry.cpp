// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "swlab/geometry.hpp"
#include "swlab/rng.hpp"

using namespace swlab;

namespace {
constexpr double kTol = 1e-12;

BundleSpec make_spec(long ell, double delta) {
  BundleSpec s;
  s.ell = ell;
  s.delta = delta;
  return s;
}
}  // namespace

TEST_CASE("standard bundle invariants at ell=1, delta=1") {
  const MacInvariants inv = boothby_wang_invariants(make_spec(1, 1.0), 0.0);
  CHECK(inv.lambda == -1.0);
  CHECK(inv.varphi == 1.0);
  CHECK(inv.b == 0.0);
  CHECK(inv.kappa == -3.0);
  CHECK(inv.scal == -2.0);
}

TEST_CASE("untwisted product case is curvature passthrough") {
  const double c = 0.37;
  const MacInvariants inv = boothby_wang_invariants(make_spec(0, 1.0), c);
  CHECK(inv.lambda == 0.0);
  CHECK(inv.varphi == 0.0);
  CHECK(inv.b == 0.0);
  CHECK(inv.kappa == c);
  CHECK(inv.scal == 2.0 * c);
}

TEST_CASE("scalar curvature approaches the transverse value as delta grows") {
  const double sigma = 0.81;
  for (double delta : {10.0, 100.0, 1000.0}) {
    const MacInvariants inv = boothby_wang_invariants(make_spec(2, delta), sigma);
    CHECK(std::abs(inv.scal - 2.0 * sigma) <= 4.0 * 4.0 / (delta * delta) + 1e-15);
    // exact error for a flat transverse base: 2*l^2/delta^2
    CHECK(std::abs(inv.scal - 2.0 * sigma + 2.0 * 4.0 / (delta * delta)) < kTol);
  }
}

TEST_CASE("invariant identities hold for all sampled bundles") {
  Rng rng(21);
  for (int trial = 0; trial < 64; ++trial) {
    const long ell = static_cast<long>(rng.next_u64() % 9) - 4;
    const double delta = 0.25 + 8.0 * rng.uniform();
    const double sb = 2.0 * rng.normal();
    const MacInvariants inv = boothby_wang_invariants(make_spec(ell, delta), sb);
    CHECK(std::abs(inv.identity_b_defect()) < kTol);
    CHECK(std::abs(inv.identity_scal_defect()) < kTol * (1.0 + std::abs(inv.scal)));
    CHECK(std::abs(inv.identity_kappa_defect()) < kTol * (1.0 + std::abs(inv.kappa)));
  }
}

TEST_CASE("deformation rejects nonpositive delta") {
  CHECK_THROWS_AS(boothby_wang_invariants(make_spec(1, 0.0), 0.0), std::invalid_argument);
  const MacInvariants inv = boothby_wang_invariants(make_spec(1, 1.0), 0.0);
  CHECK_THROWS_AS(anisotropic_deform(inv, -2.0), std::invalid_argument);
}

TEST_CASE("deformation by one is the identity") {
  const MacInvariants inv = boothby_wang_invariants(make_spec(3, 1.0), 0.5);
  const MacInvariants out = anisotropic_deform(inv, 1.0);
  CHECK(out.lambda == inv.lambda);
  CHECK(out.varphi == inv.varphi);
  CHECK(out.b == inv.b);
  CHECK(out.sigma == inv.sigma);
  CHECK(out.kappa == inv.kappa);
  CHECK(out.scal == inv.scal);
}

TEST_CASE("deformations compose multiplicatively") {
  // Oracle: symbolic expansion of the one-parameter family checked offline by
  // substitution; on (lambda, b, sigma) and also on varphi the composition
  // collapses to the product of the parameters.
  Rng rng(5);
  for (int trial = 0; trial < 32; ++trial) {
    MacInvariants inv;
    inv.lambda = rng.normal();
    inv.varphi = rng.normal();
    inv.b = inv.lambda + inv.varphi;
    inv.sigma = rng.normal();
    inv.kappa = inv.sigma - inv.lambda * inv.lambda + 2.0 * inv.lambda * inv.varphi;
    inv.scal = 2.0 * inv.kappa + 4.0 * inv.lambda * inv.lambda;
    const double d1 = 0.5 + 2.0 * rng.uniform();
    const double d2 = 0.5 + 2.0 * rng.uniform();
    const MacInvariants two = anisotropic_deform(anisotropic_deform(inv, d1), d2);
    const MacInvariants one = anisotropic_deform(inv, d1 * d2);
    CHECK(two.lambda == Catch::Approx(one.lambda).margin(kTol));
    CHECK(two.b == Catch::Approx(one.b).margin(kTol));
    CHECK(two.sigma == one.sigma);
    CHECK(two.varphi == Catch::Approx(one.varphi).margin(1e-11));
  }
}

TEST_CASE("deformed bundle invariants reproduce the direct construction") {
  for (long ell : {-2L, 1L, 3L}) {
    for (double delta : {2.0, 5.0, 32.0}) {
      const MacInvariants direct = boothby_wang_invariants(make_spec(ell, delta), 0.0);
      const MacInvariants via =
          anisotropic_deform(boothby_wang_invariants(make_spec(ell, 1.0), 0.0), delta);
      CHECK(via.lambda == Catch::Approx(direct.lambda).margin(kTol));
      CHECK(via.varphi == Catch::Approx(direct.varphi).margin(kTol));
      CHECK(via.b == Catch::Approx(direct.b).margin(kTol));
      CHECK(via.kappa == Catch::Approx(direct.kappa).margin(kTol));
      CHECK(via.scal == Catch::Approx(direct.scal).margin(kTol));
    }
  }
}

TEST_CASE("lambda scales inversely with delta on the standard bundles") {
  for (double delta : {2.0, 4.0, 8.0}) {
    const MacInvariants inv = boothby_wang_invariants(make_spec(5, delta), 0.0);
    CHECK(inv.lambda * delta == Catch::Approx(-5.0).margin(kTol));
  }
}

TEST_CASE("Ricci matrix entries and trace identity") {
  MacInvariants inv;
  inv.lambda = 0.0;
  inv.kappa = 0.7;
  Mat3 r = ricci_matrix(inv);
  CHECK(r[0][0] == 0.0);
  CHECK(r[1][1] == Catch::Approx(0.7));
  CHECK(r[1][2] == Catch::Approx(-0.7));

  inv.lambda = 1.0;
  inv.kappa = 0.0;
  r = ricci_matrix(inv);
  CHECK(r[0][0] == Catch::Approx(2.0));
  CHECK(r[1][1] == Catch::Approx(1.0));
  CHECK(r[2][2] == Catch::Approx(1.0));
  CHECK(r[1][2] == 0.0);

  Rng rng(17);
  for (int trial = 0; trial < 32; ++trial) {
    MacInvariants m;
    m.lambda = rng.normal();
    m.varphi = rng.normal();
    m.sigma = rng.normal();
    m.kappa = m.sigma - m.lambda * m.lambda + 2.0 * m.lambda * m.varphi;
    m.scal = 2.0 * m.kappa + 4.0 * m.lambda * m.lambda;
    CHECK(trace(ricci_matrix(m)) == Catch::Approx(m.scal).margin(1e-11));
  }
}
