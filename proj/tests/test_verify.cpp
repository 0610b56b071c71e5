// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sublin/verify.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace sublin;

namespace {

Params params_q(double q) {
    Params prm;
    prm.n = 1;
    prm.p = 2.0;
    prm.q = q;
    prm.alpha = 1.0;
    return prm;
}

// sigma must vanish at the endpoints for the sup residual to be O(h^2): u
// behaves like c*x there, so (sigma u^q)'' ~ sigma(x) x^(q-2) blows up unless
// sigma decays at least quadratically. sin^2(pi x) does.
std::vector<double> sin2_density(std::size_t M, double amp) {
    const double pi = std::acos(-1.0);
    std::vector<double> d(M);
    for (std::size_t j = 0; j < M; ++j) {
        const double s = std::sin(pi * (j + 0.5) / M);
        d[j] = amp * s * s;
    }
    return d;
}

VerifyReport run_verify(std::size_t M, const std::vector<double>& sigma_d, double mu_density,
                        double q = 0.5) {
    auto sigma = Measure::grid1d(0.0, 1.0, sigma_d);
    auto mu = Measure::grid1d(0.0, 1.0, std::vector<double>(M, mu_density));
    auto k = Kernel::interval_green();
    const Params prm = params_q(q);
    auto be = make_backend(PotentialMode::kernel, sigma, mu, prm, &k);
    IterationConfig cfg;
    cfg.tol = 1e-12;
    auto rep = picard_solve(*be, prm, cfg);
    REQUIRE(rep.converged);
    return verify_interval_solution(*be, rep, sigma, mu, prm);
}

} // namespace

TEST_CASE("verify: manufactured quadratic hits the energy identity exactly") {
    // u = x(1-x), mu = 2, sigma -> 0: both sides equal 1/3
    const std::size_t M = 64;
    const double h = 1.0 / M;
    std::vector<double> u_nodes(M + 1), u_mids(M);
    for (std::size_t k = 0; k <= M; ++k) {
        const double x = k * h;
        u_nodes[k] = x * (1.0 - x);
    }
    for (std::size_t k = 0; k < M; ++k) {
        const double x = (k + 0.5) * h;
        u_mids[k] = x * (1.0 - x);
    }
    auto sigma = Measure::grid1d(0.0, 1.0, std::vector<double>(M, 1e-300));
    auto mu = Measure::grid1d(0.0, 1.0, std::vector<double>(M, 2.0));
    double lhs = 0.0, rhs = 0.0;
    const double gap = energy_identity_gap(u_nodes, u_mids, sigma, mu, 0.5, &lhs, &rhs);
    CHECK(std::fabs(lhs - 1.0 / 3.0) <= 1e-10);
    CHECK(std::fabs(rhs - 1.0 / 3.0) <= 1e-10);
    CHECK(gap <= 1e-10);
}

TEST_CASE("verify: solved interval problem has O(h^2) residual and gap") {
    auto r32 = run_verify(32, sin2_density(32, 1.0), 2.0);
    CHECK(r32.cells == 32);
    CHECK(r32.h == doctest::Approx(1.0 / 32.0).epsilon(1e-15));
    CHECK(r32.ode_residual_sup < 0.05);
    CHECK(r32.relative_gap < 0.01);
    CHECK(r32.energy_lhs > 0.0);
    auto r64 = run_verify(64, sin2_density(64, 1.0), 2.0);
    const double ratio = r32.ode_residual_sup / r64.ode_residual_sup;
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
    CHECK(r64.relative_gap < r32.relative_gap);
}

TEST_CASE("verify: boundary-supported sigma degrades the sup residual to h^q") {
    // with sigma bounded away from zero at the endpoints the residual at the
    // first interior node scales like h^q, so doubling shrinks it by ~2^q
    auto r64 = run_verify(64, std::vector<double>(64, 1.0), 2.0);
    auto r128 = run_verify(128, std::vector<double>(128, 1.0), 2.0);
    const double ratio = r64.ode_residual_sup / r128.ode_residual_sup;
    CHECK(ratio >= 1.15);
    CHECK(ratio <= 2.2);
    // the energy identity does not see the boundary layer and stays O(h^2)
    CHECK(r128.relative_gap <= r64.relative_gap / 3.0);
}

TEST_CASE("verify: non-uniform data still contracts the residual") {
    const double pi = std::acos(-1.0);
    auto make = [&](std::size_t M) {
        std::vector<double> sg(M), mg(M);
        for (std::size_t j = 0; j < M; ++j) {
            const double x = (j + 0.5) / M;
            const double s = std::sin(pi * x);
            sg[j] = (1.2 + std::sin(2.0 * pi * x)) * s * s;
            mg[j] = 2.0 + x;
        }
        auto sigma = Measure::grid1d(0.0, 1.0, sg);
        auto mu = Measure::grid1d(0.0, 1.0, mg);
        auto k = Kernel::interval_green();
        const Params prm = params_q(0.4);
        auto be = make_backend(PotentialMode::kernel, sigma, mu, prm, &k);
        IterationConfig cfg;
        cfg.tol = 1e-12;
        auto rep = picard_solve(*be, prm, cfg);
        REQUIRE(rep.converged);
        return verify_interval_solution(*be, rep, sigma, mu, prm);
    };
    auto vr = make(48);
    CHECK(vr.ode_residual_sup < 0.1);
    CHECK(vr.relative_gap < 0.02);
    auto vr2 = make(96);
    const double ratio = vr.ode_residual_sup / vr2.ode_residual_sup;
    CHECK(ratio >= 2.5);
    CHECK(ratio <= 5.5);
}

TEST_CASE("verify: precondition checks") {
    auto sigma = Measure::grid1d(0.0, 1.0, std::vector<double>(8, 1.0));
    auto mu = Measure::grid1d(0.0, 1.0, std::vector<double>(8, 2.0));
    auto bad_mu = Measure::grid1d(0.0, 1.0, std::vector<double>(16, 2.0));
    auto off = Measure::grid1d(0.0, 2.0, std::vector<double>(8, 1.0));
    auto k = Kernel::interval_green();
    const Params prm = params_q(0.5);
    auto be = make_backend(PotentialMode::kernel, sigma, mu, prm, &k);
    IterationConfig cfg;
    cfg.tol = 1e-11;
    auto rep = picard_solve(*be, prm, cfg);
    REQUIRE(rep.converged);
    CHECK_THROWS_AS(verify_interval_solution(*be, rep, sigma, bad_mu, prm),
                    std::invalid_argument);
    CHECK_THROWS_AS(verify_interval_solution(*be, rep, off, mu, prm), std::invalid_argument);
    SolveReport unconverged = rep;
    unconverged.converged = false;
    CHECK_THROWS_AS(verify_interval_solution(*be, unconverged, sigma, mu, prm),
                    std::invalid_argument);
    // energy helper validates the node/midpoint layout
    std::vector<double> nodes(8, 0.0), mids(8, 0.0);
    CHECK_THROWS_AS(energy_identity_gap(nodes, mids, sigma, mu, 0.5), std::invalid_argument);
}
