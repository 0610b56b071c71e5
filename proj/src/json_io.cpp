// SPDX-License-Identifier: Apache-2.0
#include "sublin/json_io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace sublin::io {
namespace {

using nlohmann::json;

const char* mode_name(PotentialMode m) {
    switch (m) {
    case PotentialMode::wolff: return "wolff";
    case PotentialMode::riesz: return "riesz";
    case PotentialMode::kernel: return "kernel";
    }
    return "?";
}

const char* direction_name(Direction d) {
    switch (d) {
    case Direction::none: return "none";
    case Direction::ascending: return "ascending";
    case Direction::descending: return "descending";
    case Direction::mixed: return "mixed";
    }
    return "?";
}

const char* status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::not_converged: return "not_converged";
    case SolveStatus::infinite_seed: return "infinite_seed";
    }
    return "?";
}

const char* kind_name(KernelKind k) {
    switch (k) {
    case KernelKind::finite_matrix: return "finite_matrix";
    case KernelKind::interval_green: return "interval_green";
    case KernelKind::newtonian: return "newtonian";
    case KernelKind::riesz: return "riesz";
    case KernelKind::unit_ball_green: return "unit_ball_green";
    }
    return "?";
}

json number_array(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(encode_number(x));
    return a;
}

std::string csv_number(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("csv_number: conversion failed");
    return std::string(buf, p);
}

} // namespace

json encode_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

double decode_number(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        if (s == "nan") return std::nan("");
    }
    throw std::invalid_argument("decode_number: expected a number or inf string");
}

json measure_to_json(const Measure& m) {
    json j;
    j["dimension"] = m.dim();
    switch (m.kind()) {
    case MeasureKind::atomic:
    case MeasureKind::smeared: {
        j["variant"] = m.kind() == MeasureKind::atomic ? "atomic" : "smeared";
        json pts = json::array();
        for (std::size_t i = 0; i < m.atom_count(); ++i) {
            const auto p = m.point(i);
            pts.push_back(json(std::vector<double>(p.begin(), p.end())));
        }
        j["points"] = pts;
        j["weights"] = m.weights();
        if (m.kind() == MeasureKind::smeared) j["smear_radius"] = m.smear_radius();
        break;
    }
    case MeasureKind::grid1d:
        j["variant"] = "grid1d";
        j["interval"] = {m.interval_a(), m.interval_b()};
        j["densities"] = m.densities();
        break;
    }
    return j;
}

Measure measure_from_json(const json& j) {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "grid1d") {
        const auto iv = j.at("interval").get<std::vector<double>>();
        if (iv.size() != 2) throw std::invalid_argument("measure: interval needs [a, b]");
        return Measure::grid1d(iv[0], iv[1], j.at("densities").get<std::vector<double>>());
    }
    const int dim = j.at("dimension").get<int>();
    const auto pts = j.at("points").get<std::vector<std::vector<double>>>();
    const auto w = j.at("weights").get<std::vector<double>>();
    if (variant == "atomic") return Measure::atomic(dim, pts, w);
    if (variant == "smeared")
        return Measure::smeared(dim, pts, w, j.at("smear_radius").get<double>());
    throw std::invalid_argument("measure: unknown variant " + variant);
}

json kernel_to_json(const Kernel& k) {
    json j;
    j["kind"] = kind_name(k.kind());
    switch (k.kind()) {
    case KernelKind::finite_matrix: {
        json rows = json::array();
        for (std::size_t i = 0; i < k.size(); ++i) {
            json row = json::array();
            for (std::size_t c = 0; c < k.size(); ++c) row.push_back(k.g_index(i, c));
            rows.push_back(row);
        }
        j["matrix"] = rows;
        if (!k.points().empty()) {
            json pts = json::array();
            const auto d = static_cast<std::size_t>(k.points_dim());
            for (std::size_t i = 0; i < k.size(); ++i)
                pts.push_back(json(std::vector<double>(k.points().begin() + i * d,
                                                       k.points().begin() + (i + 1) * d)));
            j["points"] = pts;
        }
        break;
    }
    case KernelKind::newtonian: j["n"] = k.dim(); break;
    case KernelKind::riesz:
        j["n"] = k.dim();
        j["alpha"] = k.alpha();
        break;
    default: break;
    }
    return j;
}

Kernel kernel_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "finite_matrix") {
        const auto mat = j.at("matrix").get<std::vector<std::vector<double>>>();
        if (j.contains("points"))
            return Kernel::finite_matrix(mat,
                                         j.at("points").get<std::vector<std::vector<double>>>());
        return Kernel::finite_matrix(mat);
    }
    if (kind == "interval_green") return Kernel::interval_green();
    if (kind == "newtonian") return Kernel::newtonian(j.at("n").get<int>());
    if (kind == "riesz")
        return Kernel::riesz_kernel(j.at("n").get<int>(), j.at("alpha").get<double>());
    if (kind == "unit_ball_green") return Kernel::unit_ball_green();
    throw std::invalid_argument("kernel: unknown kind " + kind);
}

json params_to_json(const Params& prm) {
    return json{{"n", prm.n}, {"p", prm.p}, {"q", prm.q}, {"alpha", prm.alpha}};
}

Params params_from_json(const json& j) {
    Params prm;
    prm.n = j.at("n").get<int>();
    prm.p = j.at("p").get<double>();
    prm.q = j.at("q").get<double>();
    prm.alpha = j.value("alpha", 1.0);
    prm.validate();
    return prm;
}

json criteria_to_json(const CriteriaReport& r, const std::vector<CriteriaTrend>* trend) {
    json j;
    j["mode"] = mode_name(r.mode);
    j["sigma_norm"] = encode_number(r.sigma_norm);
    j["mu_energy"] = encode_number(r.mu_energy);
    j["cross_norm"] = encode_number(r.cross_norm);
    j["violation"] = r.violation;
    if (trend != nullptr) {
        json rows = json::array();
        for (const auto& t : *trend) {
            json row;
            row["refine_factor"] = t.refine_factor;
            row["sigma_norm"] = encode_number(t.sigma_norm);
            row["mu_energy"] = encode_number(t.mu_energy);
            row["cross_norm"] = encode_number(t.cross_norm);
            rows.push_back(row);
        }
        j["trend"] = rows;
    }
    return j;
}

json solve_to_json(const SolveReport& r) {
    json j;
    j["status"] = status_name(r.status);
    j["converged"] = r.converged;
    j["direction"] = direction_name(r.direction);
    j["iterations"] = r.iterations;
    j["monotonicity_violations"] = r.monotonicity_violations;
    j["residual"] = encode_number(r.residual);
    j["final_norm"] = encode_number(r.final_norm);
    j["pmu_norm"] = encode_number(r.pmu_norm);
    j["c_star"] = encode_number(r.c_star);
    j["apriori_bound"] = encode_number(r.apriori_bound);
    j["apriori_bound_ok"] = r.apriori_bound_ok;
    j["u"] = number_array(r.u);
    return j;
}

json verify_to_json(const VerifyReport& r) {
    json j;
    j["ode_residual_sup"] = encode_number(r.ode_residual_sup);
    j["energy_lhs"] = encode_number(r.energy_lhs);
    j["energy_rhs"] = encode_number(r.energy_rhs);
    j["relative_gap"] = encode_number(r.relative_gap);
    j["h"] = r.h;
    j["cells"] = r.cells;
    return j;
}

json diagnostics_to_json(const KernelDiagnostics& d) {
    json j;
    j["quasi_symmetry_a"] = encode_number(d.quasi_symmetry_a);
    j["wmp_h_estimate"] = encode_number(d.wmp_h_estimate);
    j["quasimetric_kappa_estimate"] = encode_number(d.quasimetric_kappa);
    j["symmetry_pairs"] = d.symmetry_pairs;
    j["wmp_trials"] = d.wmp_trials;
    j["wmp_discarded"] = d.wmp_discarded;
    j["quasimetric_triples"] = d.quasimetric_triples;
    return j;
}

std::string iterations_csv(const SolveReport& r) {
    std::string out = "iteration,l1q_norm,sup_change,residual\n";
    for (std::size_t i = 0; i < r.norm_history.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += csv_number(r.norm_history[i]);
        out += ',';
        out += csv_number(r.supchange_history[i]);
        out += ',';
        out += csv_number(i < r.residual_history.size() ? r.residual_history[i] : 0.0);
        out += '\n';
    }
    return out;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

} // namespace sublin::io
