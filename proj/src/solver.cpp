// SPDX-License-Identifier: Apache-2.0
#include "sublin/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "sublin/potentials.hpp"
#include "sublin/simd/ops.hpp"

namespace sublin {
namespace {

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

double sup_abs(std::span<const double> v) {
    return v.empty() ? 0.0 : simd::ops().max_abs(v.data(), v.size());
}

// Linear backends: P(f dsigma) at node i = sum_j C_ij f_j with the sigma
// weights folded into C once. Covers kernel, riesz and matrix modes.
class LinearBackend final : public PotentialBackend {
  public:
    LinearBackend(const Kernel& k, const Measure& sigma, const Measure& mu)
        : kernel_(k), sigma_(sigma), mu_(mu), nodes_(sigma.nodes()) {
        const std::size_t n = nodes_.size();
        coeff_.resize(n * n);
        pmu_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = kernel_.potential_coefficients(sigma_, nodes_.point(i));
            std::copy(row.begin(), row.end(), coeff_.begin() + i * n);
            pmu_[i] = kernel_.potential(mu_, nodes_.point(i));
        }
    }

    std::size_t size() const override { return nodes_.size(); }
    const EvaluationSet& sigma_nodes() const override { return nodes_; }

    std::vector<double> apply(std::span<const double> f) const override {
        const std::size_t n = nodes_.size();
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = simd::ops().dot(&coeff_[i * n], f.data(), n);
        return out;
    }

    double apply_at(std::span<const double> f, std::span<const double> x) const override {
        const auto row = kernel_.potential_coefficients(sigma_, x);
        return simd::ops().dot(row.data(), f.data(), row.size());
    }

    const std::vector<double>& mu_potential() const override { return pmu_; }

    double mu_potential_at(std::span<const double> x) const override {
        return kernel_.potential(mu_, x);
    }

  private:
    Kernel kernel_;
    Measure sigma_;
    Measure mu_;
    EvaluationSet nodes_;
    std::vector<double> coeff_;
    std::vector<double> pmu_;
};

class MatrixBackend final : public PotentialBackend {
  public:
    MatrixBackend(const Kernel& k, std::vector<double> sigma_w, std::vector<double> mu_w)
        : kernel_(k) {
        if (k.kind() != KernelKind::finite_matrix)
            throw std::invalid_argument("matrix backend needs a finite_matrix kernel");
        const std::size_t n = k.size();
        if (sigma_w.size() != n || mu_w.size() != n)
            throw std::invalid_argument("matrix backend: weight size mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> x{static_cast<double>(i)};
            if (!k.points().empty())
                x.assign(k.points().begin() + i * k.points_dim(),
                         k.points().begin() + (i + 1) * k.points_dim());
            nodes_.dim = static_cast<int>(x.size());
            nodes_.add(x, sigma_w[i], NodeTag::sigma);
        }
        coeff_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) coeff_[i * n + j] = k.g_index(i, j) * sigma_w[j];
        pmu_ = k.potential_all(mu_w);
    }

    std::size_t size() const override { return nodes_.size(); }
    const EvaluationSet& sigma_nodes() const override { return nodes_; }

    std::vector<double> apply(std::span<const double> f) const override {
        const std::size_t n = nodes_.size();
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i)
            out[i] = simd::ops().dot(&coeff_[i * n], f.data(), n);
        return out;
    }

    double apply_at(std::span<const double>, std::span<const double>) const override {
        throw std::invalid_argument("matrix backend has no off-node evaluation");
    }

    const std::vector<double>& mu_potential() const override { return pmu_; }

    double mu_potential_at(std::span<const double>) const override {
        throw std::invalid_argument("matrix backend has no off-node evaluation");
    }

  private:
    Kernel kernel_;
    EvaluationSet nodes_;
    std::vector<double> coeff_;
    std::vector<double> pmu_;
};

class WolffBackend final : public PotentialBackend {
  public:
    WolffBackend(const Measure& sigma, const Measure& mu, const Params& prm)
        : sigma_(sigma), mu_(mu), prm_(prm), nodes_(sigma.nodes()) {
        pmu_.resize(nodes_.size());
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            pmu_[i] = wolff(mu_, prm_, nodes_.point(i));
    }

    std::size_t size() const override { return nodes_.size(); }
    const EvaluationSet& sigma_nodes() const override { return nodes_; }

    std::vector<double> apply(std::span<const double> f) const override {
        std::vector<double> out(nodes_.size(), 0.0);
        if (std::all_of(f.begin(), f.end(), [](double v) { return v == 0.0; })) return out;
        const Measure m = sigma_.reweighted(f);
        for (std::size_t i = 0; i < nodes_.size(); ++i) out[i] = wolff(m, prm_, nodes_.point(i));
        return out;
    }

    double apply_at(std::span<const double> f, std::span<const double> x) const override {
        if (std::all_of(f.begin(), f.end(), [](double v) { return v == 0.0; })) return 0.0;
        return wolff(sigma_.reweighted(f), prm_, x);
    }

    const std::vector<double>& mu_potential() const override { return pmu_; }

    double mu_potential_at(std::span<const double> x) const override {
        return wolff(mu_, prm_, x);
    }

  private:
    Measure sigma_;
    Measure mu_;
    Params prm_;
    EvaluationSet nodes_;
    std::vector<double> pmu_;
};

std::vector<double> pow_q(std::span<const double> u, double q) {
    std::vector<double> f(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) f[i] = std::pow(u[i], q);
    return f;
}

} // namespace

std::unique_ptr<PotentialBackend> make_backend(PotentialMode mode, const Measure& sigma,
                                               const Measure& mu, const Params& prm,
                                               const Kernel* k) {
    prm.validate();
    switch (mode) {
    case PotentialMode::wolff: return std::make_unique<WolffBackend>(sigma, mu, prm);
    case PotentialMode::riesz: {
        if (prm.p != 2.0)
            throw std::invalid_argument("riesz mode: the linear framework needs p = 2");
        const Kernel kr = Kernel::riesz_kernel(prm.n, 2.0 * prm.alpha);
        return std::make_unique<LinearBackend>(kr, sigma, mu);
    }
    case PotentialMode::kernel:
        if (prm.p != 2.0)
            throw std::invalid_argument("kernel mode: the linear framework needs p = 2");
        if (k == nullptr) throw std::invalid_argument("kernel mode: no kernel supplied");
        if (k->kind() == KernelKind::finite_matrix)
            throw std::invalid_argument("kernel mode with a finite matrix takes weight vectors");
        return std::make_unique<LinearBackend>(*k, sigma, mu);
    }
    throw std::invalid_argument("unknown potential mode");
}

std::unique_ptr<PotentialBackend> make_matrix_backend(const Kernel& k,
                                                      std::vector<double> sigma_w,
                                                      std::vector<double> mu_w) {
    return std::make_unique<MatrixBackend>(k, std::move(sigma_w), std::move(mu_w));
}

SolveReport picard_solve(const PotentialBackend& be, const Params& prm,
                         const IterationConfig& cfg) {
    prm.validate();
    if (!(cfg.tol > 0.0) || cfg.max_iter < 1)
        throw std::invalid_argument("picard_solve: tol must be > 0 and max_iter >= 1");
    const std::size_t n = be.size();
    const EvaluationSet& nodes = be.sigma_nodes();
    const std::vector<double>& b = be.mu_potential();

    SolveReport rep;
    rep.pmu_norm = lp_norm(b, 1.0 + prm.q, nodes);

    std::vector<double> u;
    switch (cfg.seed_mode) {
    case SeedMode::pmu: u = b; break;
    case SeedMode::zero: u.assign(n, 0.0); break;
    case SeedMode::custom:
        if (cfg.custom_seed.size() != n)
            throw std::invalid_argument("picard_solve: custom seed size mismatch");
        for (double v : cfg.custom_seed)
            if (!(v >= 0.0)) throw std::invalid_argument("picard_solve: seeds must be >= 0");
        u = cfg.custom_seed;
        break;
    }
    if (!all_finite(u) || !all_finite(b)) {
        rep.u = u;
        rep.status = SolveStatus::infinite_seed;
        return rep;
    }

    const double gamma = prm.q / (prm.p - 1.0);
    const double young = (prm.p - 1.0) / (prm.p - 1.0 - prm.q); // 1/(1-gamma)
    bool ascending_norms_ok = true;

    std::vector<double> t = be.apply(pow_q(u, prm.q));
    double unorm = lp_norm(u, 1.0 + prm.q, nodes);
    double prev_change = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= cfg.max_iter; ++j) {
        std::vector<double> un(n);
        for (std::size_t i = 0; i < n; ++i) un[i] = t[i] + b[i];
        if (!all_finite(un)) {
            rep.u = std::move(un);
            rep.iterations = j;
            rep.status = SolveStatus::infinite_seed;
            return rep;
        }

        const double sup_change = simd::ops().max_abs_diff(un.data(), u.data(), n);
        if (rep.direction == Direction::none && sup_change > 0.0) {
            bool up = true, down = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (un[i] < u[i]) up = false;
                if (un[i] > u[i]) down = false;
            }
            rep.direction = up ? Direction::ascending
                               : (down ? Direction::descending : Direction::mixed);
        }
        if (rep.direction == Direction::ascending || rep.direction == Direction::descending) {
            const double sgn = rep.direction == Direction::ascending ? 1.0 : -1.0;
            for (std::size_t i = 0; i < n; ++i)
                if (sgn * (un[i] - u[i]) < -cfg.tol * (1.0 + std::fabs(u[i])))
                    ++rep.monotonicity_violations;
        }

        // empirical operator-bound constant: ||T u|| <= c* ||u||^gamma
        const double tnorm = lp_norm(t, 1.0 + prm.q, nodes);
        if (unorm > 0.0) rep.c_star = std::max(rep.c_star, tnorm / std::pow(unorm, gamma));

        u = std::move(un);
        unorm = lp_norm(u, 1.0 + prm.q, nodes);
        rep.norm_history.push_back(unorm);
        rep.supchange_history.push_back(sup_change);
        rep.iterations = j;

        t = be.apply(pow_q(u, prm.q));
        if (!all_finite(t)) {
            rep.u = std::move(u);
            rep.iterations = j;
            rep.status = SolveStatus::infinite_seed;
            return rep;
        }
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            res = std::max(res, std::fabs(u[i] - t[i] - b[i]));
        rep.residual_history.push_back(res);
        rep.residual = res;

        // The last step bounds the distance to the limit only up to the
        // contraction factor rate/(1 - rate), which matters once the map
        // contracts slower than 1/2 (q near 1), so extrapolate with the
        // observed step ratio before declaring the limit reached.
        const double rate = std::min(sup_change / prev_change, 0.99);
        const double mult = std::max(1.0, rate / (1.0 - rate));
        prev_change = sup_change;

        const double usup = sup_abs(u);
        if (sup_change * mult <= cfg.tol * (1.0 + usup) &&
            res <= 10.0 * cfg.tol * std::max(usup, 1e-300)) {
            rep.converged = true;
            rep.status = SolveStatus::converged;
            break;
        }
    }

    rep.u = std::move(u);
    rep.final_norm = unorm;

    rep.apriori_bound = std::pow(rep.c_star, young) + young * rep.pmu_norm;
    const double slack = 1.0 + 1e-12;
    if (rep.direction == Direction::ascending || rep.direction == Direction::none) {
        for (double nm : rep.norm_history)
            if (nm > rep.apriori_bound * slack) ascending_norms_ok = false;
    }
    rep.apriori_bound_ok =
        rep.status != SolveStatus::infinite_seed &&
        rep.final_norm <= rep.apriori_bound * slack && ascending_norms_ok;
    return rep;
}

std::vector<double> evaluate_solution(const PotentialBackend& be, const SolveReport& rep,
                                      const Params& prm,
                                      const std::vector<std::vector<double>>& points) {
    if (rep.u.size() != be.size())
        throw std::invalid_argument("evaluate_solution: report does not match backend");
    const std::vector<double> f = pow_q(rep.u, prm.q);
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& x : points) out.push_back(be.apply_at(f, x) + be.mu_potential_at(x));
    return out;
}

double lower_bound_ratio(const PotentialBackend& be, const SolveReport& rep, const Params& prm) {
    if (!rep.converged) throw std::invalid_argument("lower_bound_ratio: needs a converged run");
    const std::vector<double> ones(be.size(), 1.0);
    const std::vector<double> ps = be.apply(ones); // P(sigma) at the nodes
    const double e = (prm.p - 1.0) / (prm.p - 1.0 - prm.q);
    double ratio = kInf;
    for (std::size_t i = 0; i < be.size(); ++i) {
        if (ps[i] == 0.0) continue;
        ratio = std::min(ratio, rep.u[i] / std::pow(ps[i], e));
    }
    return ratio;
}

ProbeReport minimality_probe(const PotentialBackend& be, const Params& prm,
                             const IterationConfig& cfg, const SolveReport& base,
                             std::span<const double> seed_scales) {
    if (!base.converged) throw std::invalid_argument("minimality_probe: base run not converged");
    ProbeReport pr;
    for (double scale : seed_scales) {
        if (!(scale >= 1.0))
            throw std::invalid_argument("minimality_probe: seed scales must be >= 1");
        IterationConfig alt = cfg;
        alt.seed_mode = SeedMode::custom;
        alt.custom_seed.resize(base.u.size());
        for (std::size_t i = 0; i < base.u.size(); ++i) alt.custom_seed[i] = scale * base.u[i];
        const SolveReport r = picard_solve(be, prm, alt);
        if (!r.converged) {
            ++pr.non_converged;
            continue;
        }
        for (std::size_t i = 0; i < base.u.size(); ++i)
            pr.max_excess = std::max(pr.max_excess, base.u[i] - r.u[i]);
    }
    pr.ok = pr.non_converged == 0 && pr.max_excess <= 10.0 * cfg.tol * (1.0 + sup_abs(base.u));
    return pr;
}

ProbeReport uniqueness_probe(const PotentialBackend& be, const Params& prm,
                             const IterationConfig& cfg, const SolveReport& base, int n_seeds,
                             std::uint64_t seed) {
    if (!base.converged) throw std::invalid_argument("uniqueness_probe: base run not converged");
    std::mt19937_64 eng(seed);
    const std::size_t n = base.u.size();
    std::vector<std::vector<double>> limits{base.u};
    ProbeReport pr;

    for (int s = 0; s < n_seeds; ++s) {
        IterationConfig alt = cfg;
        alt.seed_mode = SeedMode::custom;
        alt.custom_seed.resize(n);
        // first two seeds bracket the solution from below and above, the rest
        // scatter node-wise in [1/4, 4] x solution
        for (std::size_t i = 0; i < n; ++i) {
            double f;
            if (s == 0)
                f = 0.01;
            else if (s == 1)
                f = 100.0;
            else
                f = 0.25 + 3.75 * (static_cast<double>(eng() & 0xffff) / 65536.0);
            alt.custom_seed[i] = f * base.u[i];
        }
        const SolveReport r = picard_solve(be, prm, alt);
        if (!r.converged) {
            ++pr.non_converged;
            continue;
        }
        limits.push_back(r.u);
    }
    for (std::size_t a = 0; a < limits.size(); ++a)
        for (std::size_t b = a + 1; b < limits.size(); ++b)
            pr.max_pairwise_gap = std::max(
                pr.max_pairwise_gap, simd::ops().max_abs_diff(limits[a].data(), limits[b].data(), n));
    pr.ok = pr.non_converged == 0 && pr.max_pairwise_gap <= 10.0 * cfg.tol * (1.0 + sup_abs(base.u));
    return pr;
}

} // namespace sublin
