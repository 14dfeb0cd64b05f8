// Copyright (c) the swlab developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "swlab/gauge.hpp"
#include "swlab/lattice.hpp"
#include "swlab/rng.hpp"

using namespace swlab;

namespace {
LatticeSpec spec(int n, long ell, long d = 0) {
  LatticeSpec s;
  s.n_fiber = s.n_x = s.n_y = n;
  s.ell = ell;
  s.l_degree = d;
  return s;
}
}  // namespace

TEST_CASE("untwisted lattice has plain periodic tables") {
  Lattice lat(spec(6, 0));
  CHECK(lat.verify_cocycle());
  for (std::size_t s = 0; s < lat.volume(); ++s) {
    for (Dir d : {DIR_T, DIR_X, DIR_Y}) {
      CHECK(lat.neighbor_back(lat.neighbor(s, d), d) == s);
    }
  }
}

TEST_CASE("twisted lattice closes every 2-cell after twist accounting") {
  Lattice lat(spec(8, 1));
  CHECK(lat.twist_per_x() == 1);
  CHECK(lat.verify_cocycle());
  // wrap consistency also for |ell| > 1 and negative ell
  CHECK(Lattice(spec(8, 3)).verify_cocycle());
  CHECK(Lattice(spec(8, -2)).verify_cocycle());
}

TEST_CASE("grid constraints are validated") {
  LatticeSpec bad = spec(3, 0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  LatticeSpec frac = spec(8, 1);
  frac.n_x = 16;  // ell*nt/nx = 1/2 is not an integer
  CHECK_THROWS_AS(frac.validate(), std::invalid_argument);
}

TEST_CASE("reference connection carries the requested base flux") {
  // oracle: exhaustive plaquette-angle summation, telescoping to the winding
  for (long d : {-3L, -1L, 0L, 1L, 2L}) {
    Lattice lat(spec(8, 1, d));
    const GaugeField g = GaugeField::reference(lat, d);
    const ChernPairing cp = chern_pairing(g);
    CHECK(cp.degree == d);
    CHECK(cp.degree_defect < 1e-9);
    CHECK_FALSE(cp.branch_cut_flag);
  }
}

TEST_CASE("flat gauge fields have vanishing curvature and unit flux") {
  Lattice lat(spec(8, 3));
  Rng rng(12);
  for (long k : {0L, 1L, 2L}) {
    const GaugeField g = GaugeField::flat(lat, k, rng.uniform(), rng.uniform());
    const CurvatureField f = curvature(g);
    double worst = 0.0;
    for (std::size_t s = 0; s < lat.volume(); ++s)
      worst = std::max({worst, std::abs(f.f01[s]), std::abs(f.f02[s]), std::abs(f.f12[s])});
    CHECK(worst < 1e-11);
    const ChernPairing cp = chern_pairing(g);
    CHECK(cp.degree == 0);
    CHECK(std::abs(cp.pairing) < 1e-10);
    // fiber holonomy distinguishes the torsion class
    const cplx w = g.fiber_wilson_loop(2, 3);
    const cplx expect = std::polar(1.0, 2.0 * 3.14159265358979323846 * k / 3.0);
    CHECK(std::abs(w - expect) < 1e-12);
  }
}

TEST_CASE("flat connection rejects out-of-range classes") {
  Lattice lat(spec(8, 2));
  CHECK_THROWS_AS(GaugeField::flat(lat, 2, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GaugeField::flat(lat, -1, 0.0, 0.0), std::invalid_argument);
  Lattice untwisted(spec(8, 0));
  CHECK_THROWS_AS(GaugeField::flat(untwisted, 0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("base holonomies separate gauge-inequivalent flats") {
  Lattice lat(spec(6, 2));
  const GaugeField g1 = GaugeField::flat(lat, 1, 0.15, 0.65);
  const GaugeField g2 = GaugeField::flat(lat, 1, 0.40, 0.65);
  const cplx w1 = g1.base_wilson_loop(DIR_X, 0, 0);
  const cplx w2 = g2.base_wilson_loop(DIR_X, 0, 0);
  CHECK(std::abs(w1 - std::polar(1.0, 2.0 * 3.14159265358979323846 * 0.15)) < 1e-12);
  CHECK(std::abs(w1 - w2) > 0.1);
}

TEST_CASE("trivial gauge field is flat with zero pairing") {
  Lattice lat(spec(6, 1));
  const GaugeField g(lat);
  const CurvatureField f = curvature(g);
  for (std::size_t s = 0; s < lat.volume(); s += 7) {
    CHECK(f.f01[s] == 0.0);
    CHECK(f.f12[s] == 0.0);
  }
  const ChernPairing cp = chern_pairing(g);
  CHECK(cp.degree == 0);
  CHECK(cp.pairing == 0.0);
}

TEST_CASE("gauge transformations leave curvature invariant") {
  Lattice lat(spec(6, 1, 1));
  GaugeField g = GaugeField::reference(lat, 1);
  const CurvatureField before = curvature(g);
  Rng rng(77);
  std::vector<double> f(lat.volume());
  for (auto& v : f) v = rng.normal();
  g.gauge_transform(f);
  const CurvatureField after = curvature(g);
  double worst = 0.0;
  for (std::size_t s = 0; s < lat.volume(); ++s)
    worst = std::max(worst, std::abs(before.f12[s] - after.f12[s]));
  CHECK(worst < 1e-10);
}

TEST_CASE("integer flux survives small deviations") {
  Lattice lat(spec(8, 1, 2));
  GaugeField g = GaugeField::reference(lat, 2);
  Rng rng(5);
  for (std::size_t s = 0; s < lat.volume(); ++s)
    for (Dir d : {DIR_T, DIR_X, DIR_Y}) g.add_angle(s, d, 0.05 * rng.normal());
  const ChernPairing cp = chern_pairing(g);
  CHECK(cp.degree == 2);
  CHECK(cp.degree_defect < 1e-9);
}

TEST_CASE("field norms use the deformed volume weight") {
  Lattice lat(spec(6, 1));
  SpinorField u(lat);
  u.set_constant(1.0, 0.0);
  const double vol = kFiberLength * kBaseArea;
  CHECK(spinor_norm(u, 1.0) == Catch::Approx(std::sqrt(vol)).epsilon(1e-12));
  CHECK(spinor_norm(u, 4.0) == Catch::Approx(std::sqrt(vol / 4.0)).epsilon(1e-12));

  FormField a(lat);
  std::fill(a.r0.begin(), a.r0.end(), 1.0);
  CHECK(form_norm(a, 1.0) == Catch::Approx(std::sqrt(vol)).epsilon(1e-12));
  CHECK(form_norm(a, 4.0) == Catch::Approx(std::sqrt(4.0 * 4.0 * vol / 4.0)).epsilon(1e-12));
}
