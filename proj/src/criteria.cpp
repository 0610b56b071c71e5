// SPDX-License-Identifier: Apache-2.0
#include "sublin/criteria.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sublin/potentials.hpp"

namespace sublin {
namespace {

void require_mode(const Params& prm, PotentialMode mode, const Kernel* k) {
    prm.validate();
    switch (mode) {
    case PotentialMode::wolff: return;
    case PotentialMode::riesz:
        if (prm.p != 2.0)
            throw std::invalid_argument("riesz mode: the linear framework needs p = 2");
        if (!(2.0 * prm.alpha < prm.n))
            throw std::invalid_argument("riesz mode: requires 2 alpha < n");
        return;
    case PotentialMode::kernel:
        if (prm.p != 2.0)
            throw std::invalid_argument("kernel mode: the linear framework needs p = 2");
        if (k == nullptr) throw std::invalid_argument("kernel mode: no kernel supplied");
        if (k->kind() == KernelKind::finite_matrix)
            throw std::invalid_argument(
                "kernel mode with a finite matrix takes weight vectors, not measures");
        return;
    }
}

// P nu at x under the selected mode
double mode_potential(const Measure& nu, const Params& prm, PotentialMode mode, const Kernel* k,
                      std::span<const double> x) {
    switch (mode) {
    case PotentialMode::wolff: return wolff(nu, prm, x);
    case PotentialMode::riesz: return riesz(nu, 2.0 * prm.alpha, x);
    case PotentialMode::kernel: return k->potential(nu, x);
    }
    return 0.0;
}

void check_weights(const Kernel& k, std::span<const double> w, const char* who) {
    if (k.kind() != KernelKind::finite_matrix)
        throw std::invalid_argument("index-form criteria need a finite_matrix kernel");
    if (w.size() != k.size()) throw std::invalid_argument(std::string(who) + ": size mismatch");
    for (double v : w)
        if (!(v >= 0.0) || std::isinf(v))
            throw std::invalid_argument(std::string(who) + ": weights must be finite and >= 0");
}

// (sum_i f_i^s w_i)^(1/s) over positive weights
double lp_over(std::span<const double> f, double s, std::span<const double> w) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (w[i] == 0.0) continue;
        acc += std::pow(f[i], s) * w[i];
    }
    return std::pow(acc, 1.0 / s);
}

} // namespace

double sigma_norm_exponent(const Params& prm) {
    return (1.0 + prm.q) * (prm.p - 1.0) / (prm.p - 1.0 - prm.q);
}

double check_sigma(const Measure& sigma, const Params& prm, PotentialMode mode, const Kernel* k) {
    require_mode(prm, mode, k);
    const EvaluationSet es = sigma.nodes();
    std::vector<double> f(es.size());
    for (std::size_t i = 0; i < es.size(); ++i)
        f[i] = mode_potential(sigma, prm, mode, k, es.point(i));
    return lp_norm(f, sigma_norm_exponent(prm), es);
}

double check_mu_energy(const Measure& mu, const Params& prm, PotentialMode mode, const Kernel* k) {
    require_mode(prm, mode, k);
    const EvaluationSet es = mu.nodes();
    std::vector<double> f(es.size());
    for (std::size_t i = 0; i < es.size(); ++i)
        f[i] = mode_potential(mu, prm, mode, k, es.point(i));
    return integrate(f, es);
}

double check_cross(const Measure& sigma, const Measure& mu, const Params& prm, PotentialMode mode,
                   const Kernel* k) {
    require_mode(prm, mode, k);
    const EvaluationSet es = sigma.nodes();
    std::vector<double> f(es.size());
    for (std::size_t i = 0; i < es.size(); ++i)
        f[i] = mode_potential(mu, prm, mode, k, es.point(i));
    return lp_norm(f, 1.0 + prm.q, es);
}

CriteriaReport implication_audit(const Measure& sigma, const Measure& mu, const Params& prm,
                                 PotentialMode mode, const Kernel* k) {
    CriteriaReport r;
    r.mode = mode;
    r.sigma_norm = check_sigma(sigma, prm, mode, k);
    r.mu_energy = check_mu_energy(mu, prm, mode, k);
    r.cross_norm = check_cross(sigma, mu, prm, mode, k);
    r.violation =
        !std::isinf(r.sigma_norm) && !std::isinf(r.mu_energy) && std::isinf(r.cross_norm);
    return r;
}

double check_sigma(const Kernel& k, std::span<const double> sigma_w, const Params& prm) {
    prm.validate();
    if (prm.p != 2.0) throw std::invalid_argument("kernel mode: the linear framework needs p = 2");
    check_weights(k, sigma_w, "check_sigma");
    const std::vector<double> gs = k.potential_all(sigma_w);
    return lp_over(gs, sigma_norm_exponent(prm), sigma_w);
}

double check_mu_energy(const Kernel& k, std::span<const double> mu_w) {
    check_weights(k, mu_w, "check_mu_energy");
    const std::vector<double> gm = k.potential_all(mu_w);
    double acc = 0.0;
    for (std::size_t i = 0; i < gm.size(); ++i) acc += gm[i] * mu_w[i];
    return acc;
}

double check_cross(const Kernel& k, std::span<const double> sigma_w,
                   std::span<const double> mu_w, const Params& prm) {
    prm.validate();
    if (prm.p != 2.0) throw std::invalid_argument("kernel mode: the linear framework needs p = 2");
    check_weights(k, sigma_w, "check_cross");
    check_weights(k, mu_w, "check_cross");
    const std::vector<double> gm = k.potential_all(mu_w);
    return lp_over(gm, 1.0 + prm.q, sigma_w);
}

CriteriaReport implication_audit(const Kernel& k, std::span<const double> sigma_w,
                                 std::span<const double> mu_w, const Params& prm) {
    CriteriaReport r;
    r.mode = PotentialMode::kernel;
    r.sigma_norm = check_sigma(k, sigma_w, prm);
    r.mu_energy = check_mu_energy(k, mu_w);
    r.cross_norm = check_cross(k, sigma_w, mu_w, prm);
    r.violation =
        !std::isinf(r.sigma_norm) && !std::isinf(r.mu_energy) && std::isinf(r.cross_norm);
    return r;
}

std::vector<CriteriaTrend> criteria_trend(const Measure& sigma, const Measure& mu,
                                          const Params& prm, PotentialMode mode, const Kernel* k,
                                          const std::vector<int>& factors) {
    if (sigma.kind() != MeasureKind::grid1d && mu.kind() != MeasureKind::grid1d)
        throw std::invalid_argument("criteria_trend: needs at least one grid1d measure");
    std::vector<CriteriaTrend> out;
    out.reserve(factors.size());
    for (int f : factors) {
        const Measure s = sigma.kind() == MeasureKind::grid1d ? sigma.refined(f) : sigma;
        const Measure m = mu.kind() == MeasureKind::grid1d ? mu.refined(f) : mu;
        CriteriaTrend t;
        t.refine_factor = f;
        t.sigma_norm = check_sigma(s, prm, mode, k);
        t.mu_energy = check_mu_energy(m, prm, mode, k);
        t.cross_norm = check_cross(s, m, prm, mode, k);
        out.push_back(t);
    }
    return out;
}

} // namespace sublin
