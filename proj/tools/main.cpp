// SPDX-License-Identifier: Apache-2.0
// Config-driven front end: check / solve / kernel-test / verify.
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sublin/criteria.hpp"
#include "sublin/json_io.hpp"
#include "sublin/kernels.hpp"
#include "sublin/measure.hpp"
#include "sublin/params.hpp"
#include "sublin/solver.hpp"
#include "sublin/verify.hpp"

namespace {

using nlohmann::json;
using namespace sublin;

constexpr int kExitOk = 0;
constexpr int kExitInfinite = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitConfig = 64;

struct Experiment {
    json cfg;
    Params prm;
    PotentialMode mode = PotentialMode::wolff;
    std::optional<Kernel> kernel;
    std::optional<Measure> sigma, mu;
    std::vector<double> sigma_w, mu_w; // finite-matrix weight vectors
    bool matrix_mode = false;
    IterationConfig iter;
    std::uint64_t seed = 0;
    int samples = 1000;
};

PotentialMode parse_mode(const std::string& s) {
    if (s == "wolff") return PotentialMode::wolff;
    if (s == "riesz") return PotentialMode::riesz;
    if (s == "kernel") return PotentialMode::kernel;
    throw std::invalid_argument("config: unknown mode " + s);
}

SeedMode parse_seed_mode(const std::string& s) {
    if (s == "pmu") return SeedMode::pmu;
    if (s == "zero") return SeedMode::zero;
    if (s == "custom") return SeedMode::custom;
    throw std::invalid_argument("config: unknown seed_mode " + s);
}

Experiment load_experiment(const std::string& path, const std::optional<std::uint64_t>& seed) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not found: " + path);
    Experiment ex;
    in >> ex.cfg;
    if (ex.cfg.value("schema", "") != "sublin/1")
        throw std::invalid_argument("config: expected schema \"sublin/1\"");
    ex.prm = io::params_from_json(ex.cfg.at("params"));
    ex.mode = parse_mode(ex.cfg.value("mode", "wolff"));
    if (ex.cfg.contains("kernel")) ex.kernel = io::kernel_from_json(ex.cfg.at("kernel"));

    const bool matrix_kernel =
        ex.kernel.has_value() && ex.kernel->kind() == KernelKind::finite_matrix;
    for (const char* who : {"sigma", "mu"}) {
        if (!ex.cfg.contains(who)) continue;
        const json& node = ex.cfg.at(who);
        if (node.is_array()) {
            if (!matrix_kernel)
                throw std::invalid_argument("config: weight-vector measures need a finite matrix");
            auto& w = std::string(who) == "sigma" ? ex.sigma_w : ex.mu_w;
            w = node.get<std::vector<double>>();
            ex.matrix_mode = true;
        } else {
            auto& m = std::string(who) == "sigma" ? ex.sigma : ex.mu;
            m = io::measure_from_json(node);
        }
    }
    if (ex.matrix_mode && (ex.sigma.has_value() || ex.mu.has_value()))
        throw std::invalid_argument("config: mixed weight-vector and measure specs");

    if (ex.cfg.contains("iteration")) {
        const json& it = ex.cfg.at("iteration");
        ex.iter.tol = it.value("tol", 1e-10);
        ex.iter.max_iter = it.value("max_iter", 10000);
        ex.iter.seed_mode = parse_seed_mode(it.value("seed_mode", "pmu"));
        if (it.contains("custom_seed"))
            ex.iter.custom_seed = it.at("custom_seed").get<std::vector<double>>();
    }
    ex.seed = seed.value_or(ex.cfg.value("seed", 0ULL));
    ex.samples = ex.cfg.value("samples", 1000);
    return ex;
}

void write_file(const std::filesystem::path& dir, const std::string& name,
                const std::string& content) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << content;
}

const Measure& need_measure(const std::optional<Measure>& m, const char* who) {
    if (!m.has_value()) throw std::invalid_argument(std::string("config: missing ") + who);
    return *m;
}

std::unique_ptr<PotentialBackend> build_backend(const Experiment& ex) {
    if (ex.matrix_mode)
        return make_matrix_backend(*ex.kernel, ex.sigma_w, ex.mu_w);
    return make_backend(ex.mode, need_measure(ex.sigma, "sigma"), need_measure(ex.mu, "mu"),
                        ex.prm, ex.kernel.has_value() ? &*ex.kernel : nullptr);
}

int cmd_check(const Experiment& ex, const std::filesystem::path& out) {
    CriteriaReport rep;
    std::vector<CriteriaTrend> trend;
    bool have_trend = false;
    if (ex.matrix_mode) {
        rep = implication_audit(*ex.kernel, ex.sigma_w, ex.mu_w, ex.prm);
    } else {
        const Measure& sg = need_measure(ex.sigma, "sigma");
        const Measure& mu = need_measure(ex.mu, "mu");
        const Kernel* k = ex.kernel.has_value() ? &*ex.kernel : nullptr;
        rep = implication_audit(sg, mu, ex.prm, ex.mode, k);
        if (sg.kind() == MeasureKind::grid1d || mu.kind() == MeasureKind::grid1d) {
            trend = criteria_trend(sg, mu, ex.prm, ex.mode, k);
            have_trend = true;
        }
    }
    write_file(out, "criteria.json",
               io::dump_json(io::criteria_to_json(rep, have_trend ? &trend : nullptr)));
    const bool finite =
        !std::isinf(rep.sigma_norm) && !std::isinf(rep.mu_energy) && !std::isinf(rep.cross_norm);
    return finite ? kExitOk : kExitInfinite;
}

int cmd_solve(const Experiment& ex, const std::filesystem::path& out) {
    const auto be = build_backend(ex);
    const SolveReport rep = picard_solve(*be, ex.prm, ex.iter);
    json j = io::solve_to_json(rep);
    if (rep.converged) {
        j["lower_bound_ratio"] = io::encode_number(lower_bound_ratio(*be, rep, ex.prm));
        if (!ex.matrix_mode && ex.cfg.contains("probes")) {
            const auto pts = ex.cfg.at("probes").get<std::vector<std::vector<double>>>();
            json pv = json::array();
            for (double v : evaluate_solution(*be, rep, ex.prm, pts))
                pv.push_back(io::encode_number(v));
            j["probe_values"] = pv;
        }
    }
    write_file(out, "solve.json", io::dump_json(j));
    write_file(out, "iterations.csv", io::iterations_csv(rep));
    return rep.converged ? kExitOk : kExitNotConverged;
}

int cmd_kernel_test(const Experiment& ex, const std::filesystem::path& out) {
    if (!ex.kernel.has_value()) throw std::invalid_argument("config: kernel-test needs a kernel");
    const KernelDiagnostics d = kernel_diagnostics(*ex.kernel, ex.samples, ex.seed);
    json j = io::diagnostics_to_json(d);
    j["kernel"] = io::kernel_to_json(*ex.kernel);
    j["samples"] = ex.samples;
    j["seed"] = ex.seed;
    write_file(out, "kernel.json", io::dump_json(j));
    return kExitOk;
}

int cmd_verify(const Experiment& ex, const std::filesystem::path& out) {
    const auto be = build_backend(ex);
    const SolveReport rep = picard_solve(*be, ex.prm, ex.iter);
    if (!rep.converged) {
        write_file(out, "verify.json",
                   io::dump_json(json{{"status", "not_converged"},
                                      {"iterations", rep.iterations}}));
        return kExitNotConverged;
    }
    const VerifyReport vr = verify_interval_solution(*be, rep, need_measure(ex.sigma, "sigma"),
                                                     need_measure(ex.mu, "mu"), ex.prm);
    json j = io::verify_to_json(vr);
    j["iterations"] = rep.iterations;
    j["residual"] = io::encode_number(rep.residual);
    write_file(out, "verify.json", io::dump_json(j));
    const bool finite = std::isfinite(vr.ode_residual_sup) && std::isfinite(vr.energy_lhs) &&
                        std::isfinite(vr.energy_rhs) && std::isfinite(vr.relative_gap);
    return finite ? kExitOk : kExitNotConverged;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sublinear potential toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed_override;
    app.add_option("--config", config_path, "experiment config (JSON)")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed_override, "override the config rng seed");

    auto* c_check = app.add_subcommand("check", "existence criteria as norms");
    auto* c_solve = app.add_subcommand("solve", "monotone Picard iteration");
    auto* c_kernel = app.add_subcommand("kernel-test", "kernel axiom diagnostics");
    auto* c_verify = app.add_subcommand("verify", "interval ODE and energy checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        const Experiment ex = load_experiment(config_path, seed_override);
        const std::filesystem::path out(out_dir);
        if (c_check->parsed()) return cmd_check(ex, out);
        if (c_solve->parsed()) return cmd_solve(ex, out);
        if (c_kernel->parsed()) return cmd_kernel_test(ex, out);
        if (c_verify->parsed()) return cmd_verify(ex, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
