// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sublin/json_io.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

using namespace sublin;

TEST_CASE("io: numbers round-trip, including the non-finite encodings") {
    CHECK(io::decode_number(io::encode_number(1.5)) == 1.5);
    CHECK(io::decode_number(io::encode_number(-0.1)) == -0.1);
    CHECK(io::encode_number(kInf).is_string());
    CHECK(io::encode_number(kInf).get<std::string>() == "inf");
    CHECK(io::decode_number(io::encode_number(kInf)) == kInf);
    CHECK(io::decode_number(io::encode_number(-kInf)) == -kInf);
    CHECK(std::isnan(io::decode_number(io::encode_number(std::nan("")))));
    CHECK(io::decode_number(nlohmann::json(2)) == 2.0);
    CHECK_THROWS_AS(io::decode_number(nlohmann::json("bogus")), std::invalid_argument);
}

TEST_CASE("io: measures round-trip exactly") {
    auto a = Measure::atomic(3, {{0.125, -2.0, 0.75}, {1.0, 2.0, 3.0}}, {0.25, 1.75});
    auto ja = io::measure_to_json(a);
    auto a2 = io::measure_from_json(ja);
    CHECK(a2.kind() == MeasureKind::atomic);
    CHECK(a2.dim() == 3);
    CHECK(a2.weights() == a.weights());
    CHECK(a2.point(0) == a.point(0));
    CHECK(a2.point(1) == a.point(1));

    auto s = Measure::smeared(2, {{0.5, 0.5}}, {2.0}, 0.0625);
    auto s2 = io::measure_from_json(io::measure_to_json(s));
    CHECK(s2.kind() == MeasureKind::smeared);
    CHECK(s2.smear_radius() == 0.0625);

    auto g = Measure::grid1d(0.0, 1.0, {1.0, 0.5, 2.0});
    auto g2 = io::measure_from_json(io::measure_to_json(g));
    CHECK(g2.kind() == MeasureKind::grid1d);
    CHECK(g2.interval_a() == 0.0);
    CHECK(g2.interval_b() == 1.0);
    CHECK(g2.densities() == g.densities());

    auto bad = io::measure_to_json(a);
    bad["variant"] = "mystery";
    CHECK_THROWS_AS(io::measure_from_json(bad), std::invalid_argument);
}

TEST_CASE("io: kernels round-trip") {
    auto m = Kernel::finite_matrix({{1.0, 0.25}, {0.5, 2.0}}, {{0.0}, {1.0}});
    auto m2 = io::kernel_from_json(io::kernel_to_json(m));
    CHECK(m2.kind() == KernelKind::finite_matrix);
    CHECK(m2.size() == 2);
    CHECK(m2.g_index(0, 1) == 0.25);
    CHECK(m2.g_index(1, 0) == 0.5);
    CHECK(m2.points_dim() == 1);
    CHECK(m2.points() == m.points());

    auto r = Kernel::riesz_kernel(3, 1.25);
    auto r2 = io::kernel_from_json(io::kernel_to_json(r));
    CHECK(r2.kind() == KernelKind::riesz);
    CHECK(r2.dim() == 3);
    CHECK(r2.alpha() == 1.25);

    for (auto kind : {Kernel::interval_green(), Kernel::newtonian(4),
                      Kernel::unit_ball_green()}) {
        auto k2 = io::kernel_from_json(io::kernel_to_json(kind));
        CHECK(k2.kind() == kind.kind());
        CHECK(k2.dim() == kind.dim());
    }
}

TEST_CASE("io: params round-trip with default alpha") {
    Params prm;
    prm.n = 4;
    prm.p = 2.5;
    prm.q = 0.75;
    prm.alpha = 1.5;
    auto p2 = io::params_from_json(io::params_to_json(prm));
    CHECK(p2.n == 4);
    CHECK(p2.p == 2.5);
    CHECK(p2.q == 0.75);
    CHECK(p2.alpha == 1.5);
    nlohmann::json j = {{"n", 3}, {"p", 2.0}, {"q", 0.5}};
    CHECK(io::params_from_json(j).alpha == 1.0);
}

TEST_CASE("io: report serialization carries the infinities") {
    CriteriaReport r;
    r.mode = PotentialMode::wolff;
    r.sigma_norm = kInf;
    r.mu_energy = 0.25;
    r.cross_norm = 0.5;
    r.violation = false;
    auto j = io::criteria_to_json(r);
    CHECK(j["sigma_norm"] == "inf");
    CHECK(j["mu_energy"] == 0.25);
    CHECK(j["mode"] == "wolff");
    CHECK(j["violation"] == false);
    CHECK_FALSE(j.contains("trend"));
    std::vector<CriteriaTrend> tr(2);
    tr[0].refine_factor = 1;
    tr[1].refine_factor = 2;
    auto jt = io::criteria_to_json(r, &tr);
    REQUIRE(jt.contains("trend"));
    CHECK(jt["trend"].size() == 2);
    CHECK(jt["trend"][1]["refine_factor"] == 2);
}

TEST_CASE("io: csv layout") {
    SolveReport r;
    r.norm_history = {0.5, 0.625};
    r.supchange_history = {0.25, 0.0625};
    r.residual_history = {0.125, 0.03125};
    const std::string csv = io::iterations_csv(r);
    CHECK(csv == "iteration,l1q_norm,sup_change,residual\n"
                 "1,0.5,0.25,0.125\n"
                 "2,0.625,0.0625,0.03125\n");
}

TEST_CASE("io: canonical dump is stable and newline terminated") {
    nlohmann::json j;
    j["zeta"] = 1.0;
    j["alpha"] = {{"nested", true}};
    const std::string once = io::dump_json(j);
    CHECK(once.back() == '\n');
    CHECK(once.find("\"alpha\"") < once.find("\"zeta\"")); // sorted keys
    CHECK(once == io::dump_json(j));
    // doubles print shortest round-trip form
    nlohmann::json k = io::encode_number(0.1);
    CHECK(io::dump_json(k) == "0.1\n");
}
