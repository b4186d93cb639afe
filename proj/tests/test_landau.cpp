#include <random>

#include "cohtorus/bundles.hpp"
#include "cohtorus/errors.hpp"
#include "cohtorus/landau.hpp"
#include "doctest.h"

using namespace cohtorus;

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS((HofstadterConfig{4, 4, 0, 4}).validate(), InvalidConfig);
  CHECK_THROWS_AS((HofstadterConfig{0, 4, 1, 4}).validate(), InvalidConfig);
  CHECK_THROWS_AS((HofstadterConfig{4, 4, 2, 4}).validate(), InvalidConfig);
  CHECK_THROWS_AS((HofstadterConfig{3, 3, 1, 2}).validate(), FluxNotInteger);
  CHECK_THROWS_AS((HofstadterConfig{6, 6, 1, 4}).validate(), InvalidConfig);
  CHECK((HofstadterConfig{12, 12, 1, 4}).flux_quanta() == 36);
}

TEST_CASE("small Hofstadter Hamiltonians") {
  const auto h = hofstadter_hamiltonian({2, 2, 1, 2});
  CHECK(h.dimension() == 4);
  CHECK(std::abs(h.matrix().trace()) == 0.0);
  CHECK(hermiticity_defect(h.matrix()) == 0.0);

  const auto e = hermitian_spectrum(hofstadter_hamiltonian({4, 4, 1, 4}));
  const Eigen::VectorXd mirrored = -e.reverse();
  CHECK((e - mirrored).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("lowest Landau band multiplicity") {
  CHECK(lowest_band_degeneracy({12, 12, 1, 4}).lowest_multiplicity == 36);
  CHECK(lowest_band_degeneracy({12, 12, 1, 6}).lowest_multiplicity == 24);
  CHECK(lowest_band_degeneracy({8, 8, 3, 8}).lowest_multiplicity == 24);
  for (const HofstadterConfig cfg : {HofstadterConfig{8, 8, 1, 4}, HofstadterConfig{10, 10, 1, 5},
                                     HofstadterConfig{12, 6, 1, 6}, HofstadterConfig{12, 3, 1, 4}}) {
    const auto r = lowest_band_degeneracy(cfg);
    CHECK(r.lowest_multiplicity == riemann_roch_dim(make_chern({static_cast<int>(cfg.flux_quanta())})));
    CHECK(r.gap_ratio < 0.2);
    int total = 0;
    for (const auto& c : r.clusters) total += c.multiplicity;
    CHECK(total == cfg.lx * cfg.ly);
  }
}

TEST_CASE("q = 3 bands need a looser gap tolerance") {
  for (const HofstadterConfig cfg : {HofstadterConfig{6, 6, 1, 3}, HofstadterConfig{6, 12, 1, 3},
                                     HofstadterConfig{12, 12, 1, 3}}) {
    const auto r = lowest_band_degeneracy(cfg, 0.5);
    CHECK(r.lowest_multiplicity == cfg.flux_quanta());
    CHECK(r.gap_ratio < 0.5);
  }
}

TEST_CASE("spectrum clustering") {
  Eigen::VectorXd e(6);
  e << -2.0, -1.99, -1.98, 0.0, 0.01, 1.0;
  const auto r = cluster_spectrum(e, 0.2);
  CHECK(r.lowest_multiplicity == 3);
  CHECK(r.clusters.size() == 3);
  CHECK(r.reference_gap == doctest::Approx(1.98));
  CHECK_THROWS_AS(cluster_spectrum(Eigen::VectorXd::Constant(4, 1.5), 0.2), NoClearGap);
  CHECK_THROWS_AS(cluster_spectrum(e, 0.0), InvalidArgument);
  CHECK_THROWS_AS(cluster_spectrum(e, 1.0), InvalidArgument);
}

TEST_CASE("degeneracy formula") {
  CHECK(degeneracy_formula(5, 1) == 5);
  CHECK(degeneracy_formula(0, 0) == 1);
  CHECK(degeneracy_formula(3, 2) == 2);
  CHECK_THROWS_AS(degeneracy_formula(0, 2), NegativeDegeneracy);
  CHECK_THROWS_AS(degeneracy_formula(3, -1), InvalidArgument);
  for (int k = 1; k <= 50; ++k) CHECK(degeneracy_formula(k, 1) == riemann_roch_dim(make_chern({k})));
}

TEST_CASE("four-way cross-check") {
  const std::array<HofstadterConfig, 4> configs{HofstadterConfig{4, 1, 1, 4}, HofstadterConfig{4, 2, 1, 4},
                                                HofstadterConfig{4, 3, 1, 4}, HofstadterConfig{4, 4, 1, 4}};
  for (int k = 1; k <= 4; ++k) {
    const auto r = cross_check(k, Complex(0, 1), configs[static_cast<std::size_t>(k - 1)]);
    CHECK(r.pass);
    CHECK(r.riemann_roch == k);
    CHECK(r.theta_span == k);
    CHECK(r.theta_generated == k * k);
    CHECK(r.lowest_band == k);
    CHECK(r.formula == k);
  }
  const auto nine = cross_check(9, Complex(0.3, 0.8), {12, 3, 1, 4});
  CHECK(nine.pass);
  CHECK(nine.lowest_band == 9);
  CHECK_THROWS_AS(cross_check(2, Complex(0, 1), {4, 4, 1, 4}), InvalidArgument);
  CHECK_THROWS_AS(cross_check(9, Complex(0, 1), {6, 6, 1, 4}), InvalidConfig);
}
