// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sublin/criteria.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace sublin;

namespace {

Params params_pq(double p, double q, int n = 3, double alpha = 1.0) {
    Params prm;
    prm.n = n;
    prm.p = p;
    prm.q = q;
    prm.alpha = alpha;
    return prm;
}

} // namespace

TEST_CASE("criteria: exponent formula") {
    CHECK(sigma_norm_exponent(params_pq(2.0, 0.5)) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(sigma_norm_exponent(params_pq(2.0, 1.0 / 3.0)) ==
          doctest::Approx(2.0).epsilon(1e-14));
    // (1+q)(p-1)/(p-1-q)
    CHECK(sigma_norm_exponent(params_pq(3.0, 0.5)) ==
          doctest::Approx(1.5 * 2.0 / 1.5).epsilon(1e-14));
}

TEST_CASE("criteria: scalar kernel pins") {
    // one node, g = 1, sigma = mu = 1/2, q = 1/2:
    //   P sigma = 1/2, s = 3, sigma_norm = (2^-3 * 2^-1)^(1/3) = 2^(-4/3)
    //   mu_energy = 1/2 * 1/2 = 1/4
    //   cross_norm = (2^-1.5 * 2^-1)^(1/1.5) = 2^(-5/3)
    auto k = Kernel::finite_matrix({{1.0}});
    const Params prm = params_pq(2.0, 0.5);
    std::vector<double> half = {0.5};
    CHECK(check_sigma(k, half, prm) ==
          doctest::Approx(std::pow(2.0, -4.0 / 3.0)).epsilon(1e-15));
    CHECK(check_sigma(k, half, prm) == doctest::Approx(0.3968502629920499).epsilon(1e-15));
    CHECK(check_mu_energy(k, half) == 0.25);
    CHECK(check_cross(k, half, half, prm) ==
          doctest::Approx(std::pow(2.0, -5.0 / 3.0)).epsilon(1e-15));
    CHECK(check_cross(k, half, half, prm) ==
          doctest::Approx(0.31498026247371835).epsilon(1e-15));
    auto rep = implication_audit(k, half, half, prm);
    CHECK_FALSE(rep.violation);
    CHECK(rep.mode == PotentialMode::kernel);
}

TEST_CASE("criteria: matrix energy hand value") {
    auto k = Kernel::finite_matrix({{1.0, 0.5}, {0.5, 1.0}});
    std::vector<double> mu = {1.0, 1.0};
    // sum_ij g_ij mu_i mu_j = 1 + 0.5 + 0.5 + 1 = 3
    CHECK(check_mu_energy(k, mu) == 3.0);
}

TEST_CASE("criteria: scaling law for check_sigma") {
    // check_sigma(c sigma) = c^(1/(p-1) + 1/s) check_sigma(sigma): the
    // potential scales by c^(1/(p-1)) and the L^s norm adds c^(1/s).
    std::mt19937_64 eng(13);
    std::uniform_real_distribution<double> u(-1.5, 1.5), uw(0.2, 2.0), uc(0.3, 4.0),
        up(1.4, 2.8);
    for (int trial = 0; trial < 40; ++trial) {
        const double p = up(eng);
        const double q = 0.4 * (p - 1.0);
        const Params prm = params_pq(p, q);
        auto sigma = Measure::smeared(
            3, {{u(eng), u(eng), u(eng)}, {u(eng), u(eng), u(eng)}}, {uw(eng), uw(eng)}, 0.35);
        const double c = uc(eng);
        const double base = check_sigma(sigma, prm, PotentialMode::wolff);
        const double scaled = check_sigma(sigma.scaled(c), prm, PotentialMode::wolff);
        const double s = sigma_norm_exponent(prm);
        const double expo = 1.0 / (p - 1.0) + 1.0 / s;
        CHECK(scaled == doctest::Approx(std::pow(c, expo) * base).epsilon(1e-9));
    }
}

TEST_CASE("criteria: atomic sigma saturates the wolff norm") {
    auto sigma = Measure::atomic(3, {{0, 0, 0}, {1, 0, 0}}, {1.0, 1.0});
    auto mu = Measure::smeared(3, {{0.5, 0, 0}}, {1.0}, 0.25);
    const Params prm = params_pq(2.0, 0.5);
    auto rep = implication_audit(sigma, mu, prm, PotentialMode::wolff);
    CHECK(std::isinf(rep.sigma_norm)); // W sigma = inf on the atoms
    CHECK(std::isinf(rep.mu_energy) == false);
    CHECK(std::isfinite(rep.cross_norm));
    CHECK_FALSE(rep.violation);
}

TEST_CASE("criteria: mode preconditions") {
    auto sigma = Measure::smeared(3, {{0, 0, 0}}, {1.0}, 0.3);
    auto mu = sigma;
    CHECK_THROWS_AS(implication_audit(sigma, mu, params_pq(2.5, 0.5), PotentialMode::riesz),
                    std::invalid_argument); // riesz needs p = 2
    CHECK_THROWS_AS(
        implication_audit(sigma, mu, params_pq(2.0, 0.5, 3, 1.6), PotentialMode::riesz),
        std::invalid_argument); // needs 2 alpha < n
    CHECK_THROWS_AS(implication_audit(sigma, mu, params_pq(2.0, 0.5), PotentialMode::kernel),
                    std::invalid_argument); // kernel mode needs a kernel
    auto km = Kernel::finite_matrix({{1.0}});
    CHECK_THROWS_AS(
        implication_audit(sigma, mu, params_pq(2.0, 0.5), PotentialMode::kernel, &km),
        std::invalid_argument); // matrix kernels use the weight-vector form
    Params bad = params_pq(2.0, 1.5);
    CHECK_THROWS_AS(check_sigma(sigma, bad, PotentialMode::wolff), std::invalid_argument);
}

TEST_CASE("criteria: riesz and wolff agree at p = 2 up to the constant") {
    // s and the node set coincide, and P_riesz = (n - 2 alpha) P_wolff, so
    // sigma_norm picks up the factor (n-2a)^(1/(p-1)+...): check via audit
    auto sigma = Measure::smeared(3, {{0, 0, 0}, {1.2, 0, 0}}, {0.8, 1.3}, 0.3);
    auto mu = Measure::smeared(3, {{0.4, 0.3, 0}}, {2.0}, 0.25);
    const Params prm = params_pq(2.0, 0.5);
    auto rw = implication_audit(sigma, mu, prm, PotentialMode::wolff);
    auto rr = implication_audit(sigma, mu, prm, PotentialMode::riesz);
    const double c = prm.n - 2.0 * prm.alpha; // = 1 here
    CHECK(c == 1.0);
    CHECK(rr.sigma_norm == doctest::Approx(rw.sigma_norm).epsilon(1e-8));
    CHECK(rr.mu_energy == doctest::Approx(rw.mu_energy).epsilon(1e-8));
    CHECK(rr.cross_norm == doctest::Approx(rw.cross_norm).epsilon(1e-8));
    CHECK_FALSE(rr.violation);
}

TEST_CASE("criteria: grid trend refines toward the continuum") {
    auto sigma = Measure::grid1d(0.0, 1.0, std::vector<double>(8, 1.0));
    auto mu = Measure::grid1d(0.0, 1.0, std::vector<double>(8, 2.0));
    const Params prm = params_pq(2.0, 0.5, 1);
    auto k = Kernel::interval_green();
    auto rows = criteria_trend(sigma, mu, prm, PotentialMode::kernel, &k, {1, 2, 4, 8});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].refine_factor == 1);
    CHECK(rows[3].refine_factor == 8);
    for (const auto& r : rows) {
        CHECK(std::isfinite(r.sigma_norm));
        CHECK(std::isfinite(r.mu_energy));
        CHECK(std::isfinite(r.cross_norm));
    }
    // refinement converges: last two rows are close
    CHECK(rows[3].sigma_norm == doctest::Approx(rows[2].sigma_norm).epsilon(5e-2));
    CHECK(rows[3].mu_energy == doctest::Approx(rows[2].mu_energy).epsilon(5e-2));
    // trend without any grid measure is rejected
    auto a = Measure::smeared(3, {{0, 0, 0}}, {1.0}, 0.3);
    CHECK_THROWS_AS(criteria_trend(a, a, params_pq(2.0, 0.5), PotentialMode::wolff),
                    std::invalid_argument);
}
