// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sublin/measure.hpp"
#include "sublin/geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace sublin;

TEST_CASE("measure: factory validation") {
    CHECK_THROWS_AS(Measure::atomic(0, {{0.0}}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Measure::atomic(2, {{0.0, 0.0}}, {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Measure::atomic(2, {{0.0, 0.0}}, {0.0}), std::invalid_argument); // zero mass
    CHECK_THROWS_AS(Measure::atomic(2, {{0.0}}, {1.0}), std::invalid_argument); // dim mismatch
    CHECK_THROWS_AS(Measure::atomic(1, {{0.0}}, {kInf}), std::invalid_argument);
    CHECK_THROWS_AS(Measure::smeared(3, {{0, 0, 0}}, {1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Measure::smeared(3, {{0, 0, 0}}, {1.0}, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(Measure::grid1d(1.0, 1.0, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Measure::grid1d(0.0, 1.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(Measure::grid1d(0.0, 1.0, {0.0, 0.0}), std::invalid_argument);
    CHECK_NOTHROW(Measure::grid1d(0.0, 1.0, {0.0, 1.0})); // one empty cell is fine
}

TEST_CASE("measure: atomic ball mass and profile agree") {
    auto m = Measure::atomic(3, {{0, 0, 0}, {2, 0, 0}, {0, 3, 0}}, {1.0, 2.0, 4.0});
    CHECK(m.total_mass() == 7.0);
    const std::vector<double> x = {0.0, 0.0, 0.0};
    CHECK(m.ball_mass(x, 1.0) == 1.0);
    CHECK(m.ball_mass(x, 2.0) == 3.0);  // closed ball picks up the atom at distance 2
    CHECK(m.ball_mass(x, 3.5) == 7.0);
    auto prof = m.profile(x);
    CHECK(prof.base_atom == 1.0);
    CHECK(prof.total == 7.0);
    CHECK(prof.head_order == 0);
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> rad(0.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double r = rad(eng);
        CHECK(prof(r) == m.ball_mass(x, r));
    }
}

TEST_CASE("measure: smeared ball mass matches overlap geometry") {
    const double rho = 0.5;
    auto m = Measure::smeared(3, {{0, 0, 0}, {1.5, 0, 0}}, {2.0, 3.0}, rho);
    const std::vector<double> x = {0.0, 0.0, 0.0};
    // B(x, r) fully covers the first ball once r >= rho, none of the second
    // until r >= 1.0
    CHECK(m.ball_mass(x, 0.75) == doctest::Approx(2.0).epsilon(1e-14));
    const double r = 1.2;
    const double expect =
        2.0 + 3.0 * geom::ball_overlap_fraction(3, 1.5, rho, r);
    CHECK(m.ball_mass(x, r) == doctest::Approx(expect).epsilon(1e-13));
    auto prof = m.profile(x);
    CHECK(prof.base_atom == 0.0);
    CHECK(prof.head_order == 3); // probe sits inside the first ball
    for (double q : {0.1, 0.45, 0.8, 1.05, 1.7, 2.4})
        CHECK(prof(q) == doctest::Approx(m.ball_mass(x, q)).epsilon(1e-14));
    CHECK(prof(5.0) == 5.0);
}

TEST_CASE("measure: grid ball mass is exact interval overlap") {
    auto m = Measure::grid1d(0.0, 1.0, {1.0, 3.0, 1.0, 1.0});
    CHECK(m.total_mass() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(m.cell_width() == 0.25);
    const std::vector<double> x = {0.5};
    // B(0.5, 0.1) = [0.4, 0.6]: 0.1 of the density-3 cell, 0.1 of the next
    CHECK(m.ball_mass(x, 0.1) == doctest::Approx(0.1 * 3.0 + 0.1 * 1.0).epsilon(1e-14));
    auto prof = m.profile(x);
    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> rad(0.0, 1.5);
    for (int i = 0; i < 200; ++i) {
        const double r = rad(eng);
        CHECK(prof(r) == doctest::Approx(m.ball_mass(x, r)).epsilon(1e-14));
    }
}

TEST_CASE("measure: nodes carry sigma weights") {
    auto g = Measure::grid1d(0.0, 1.0, {2.0, 4.0});
    auto es = g.nodes();
    REQUIRE(es.size() == 2);
    CHECK(es.dim == 1);
    CHECK(es.point(0)[0] == 0.25);
    CHECK(es.point(1)[0] == 0.75);
    CHECK(es.sigma_weights[0] == 1.0);
    CHECK(es.sigma_weights[1] == 2.0);
    CHECK(es.tags[0] == NodeTag::sigma);

    std::vector<double> probe = {0.4};
    es.add(probe, 0.0, NodeTag::probe);
    CHECK(es.size() == 3);
    std::vector<double> f = {1.0, 2.0, 100.0};
    CHECK(integrate(f, es) == doctest::Approx(5.0).epsilon(1e-15)); // probe weight 0
    CHECK(lp_norm(f, 2.0, es) == doctest::Approx(3.0).epsilon(1e-15));
    std::vector<double> finf = {kInf, 2.0, 0.0};
    CHECK(std::isinf(integrate(finf, es)));
    std::vector<double> fzero = {1.0, 2.0, kInf};
    CHECK(std::isfinite(integrate(fzero, es))); // inf on zero-weight node is dropped
}

TEST_CASE("measure: scaled and reweighted") {
    auto m = Measure::atomic(2, {{0, 0}, {1, 0}}, {1.0, 2.0});
    auto s = m.scaled(3.0);
    CHECK(s.total_mass() == 9.0);
    CHECK(s.kind() == MeasureKind::atomic);
    std::vector<double> f = {2.0, 0.5};
    auto r = m.reweighted(f);
    CHECK(r.weights()[0] == 2.0);
    CHECK(r.weights()[1] == 1.0);
    CHECK(r.point(1)[0] == 1.0);
    CHECK_THROWS_AS(m.scaled(-1.0), std::invalid_argument);
}

TEST_CASE("measure: refinement preserves the measure") {
    auto g = Measure::grid1d(0.0, 2.0, {1.0, 5.0, 2.0});
    auto r = g.refined(4);
    CHECK(r.kind() == MeasureKind::grid1d);
    CHECK(r.densities().size() == 12);
    CHECK(r.cell_width() == doctest::Approx(g.cell_width() / 4.0).epsilon(1e-15));
    CHECK(r.total_mass() == doctest::Approx(g.total_mass()).epsilon(1e-15));
    std::mt19937_64 eng(9);
    std::uniform_real_distribution<double> pos(-0.2, 2.2), rad(0.0, 2.5);
    for (int i = 0; i < 100; ++i) {
        const std::vector<double> x = {pos(eng)};
        const double rr = rad(eng);
        CHECK(r.ball_mass(x, rr) == doctest::Approx(g.ball_mass(x, rr)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(g.refined(0), std::invalid_argument);
    auto a = Measure::atomic(1, {{0.0}}, {1.0});
    CHECK_THROWS_AS(a.refined(2), std::invalid_argument);
}
