// SPDX-License-Identifier: Apache-2.0
#include "sublin/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sublin/potentials.hpp"
#include "sublin/simd/ops.hpp"

namespace sublin {
namespace {

double dist2(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) {
        const double d = x[c] - y[c];
        acc += d * d;
    }
    return acc;
}

// |x-y|^e given the squared distance, mirroring the kernel-sum fast paths
double pow_dist(double d2, double e) {
    if (e == -1.0) return 1.0 / std::sqrt(d2);
    if (e == -2.0) return 1.0 / d2;
    return std::pow(d2, 0.5 * e);
}

double norm2(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return acc;
}

// average of |x-y|^(2-n) over the uniform unit-mass ball B(c, rho), as a
// function of d = |x-c|: mean value property outside, shell split inside
double newtonian_ball(double d, double rho, int n) {
    if (d >= rho) return std::pow(d, 2.0 - n);
    return (d * d + n * (rho * rho - d * d) / 2.0) / std::pow(rho, n);
}

// int_lo^hi min(x,y)(1-max(x,y)) dy
double green_cell_integral(double x, double lo, double hi) {
    double acc = 0.0;
    const double m1 = std::min(hi, x);
    if (m1 > lo) acc += (1.0 - x) * 0.5 * (m1 * m1 - lo * lo);
    const double m2 = std::max(lo, x);
    if (hi > m2) acc += x * ((hi - m2) - 0.5 * (hi * hi - m2 * m2));
    return acc;
}

double ball_image_term(std::span<const double> x, std::span<const double> c) {
    // 1/(|y| |x - y/|y|^2|) in its symmetric form, finite at y = 0
    double dot = 0.0;
    for (std::size_t i = 0; i < 3; ++i) dot += x[i] * c[i];
    return 1.0 / std::sqrt(norm2(x) * norm2(c) - 2.0 * dot + 1.0);
}

} // namespace

Kernel Kernel::finite_matrix(const std::vector<std::vector<double>>& g) {
    return finite_matrix(g, {});
}

Kernel Kernel::finite_matrix(const std::vector<std::vector<double>>& g,
                             const std::vector<std::vector<double>>& points) {
    Kernel k;
    k.kind_ = KernelKind::finite_matrix;
    k.msize_ = g.size();
    if (k.msize_ == 0) throw std::invalid_argument("finite_matrix: empty matrix");
    k.mat_.reserve(k.msize_ * k.msize_);
    for (const auto& row : g) {
        if (row.size() != k.msize_) throw std::invalid_argument("finite_matrix: not square");
        for (double v : row) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument("finite_matrix: entries must be finite and positive");
            k.mat_.push_back(v);
        }
    }
    if (!points.empty()) {
        if (points.size() != k.msize_)
            throw std::invalid_argument("finite_matrix: point/matrix size mismatch");
        k.pts_dim_ = static_cast<int>(points[0].size());
        for (const auto& p : points) {
            if (static_cast<int>(p.size()) != k.pts_dim_)
                throw std::invalid_argument("finite_matrix: ragged points");
            k.pts_.insert(k.pts_.end(), p.begin(), p.end());
        }
    }
    k.n_ = 0;
    return k;
}

Kernel Kernel::interval_green() {
    Kernel k;
    k.kind_ = KernelKind::interval_green;
    k.n_ = 1;
    return k;
}

Kernel Kernel::newtonian(int n) {
    if (n < 3) throw std::invalid_argument("newtonian: requires n >= 3");
    Kernel k;
    k.kind_ = KernelKind::newtonian;
    k.n_ = n;
    return k;
}

Kernel Kernel::riesz_kernel(int n, double alpha) {
    if (n < 1 || !(alpha > 0.0) || !(alpha < n))
        throw std::invalid_argument("riesz_kernel: requires 0 < alpha < n");
    Kernel k;
    k.kind_ = KernelKind::riesz;
    k.n_ = n;
    k.alpha_ = alpha;
    return k;
}

Kernel Kernel::unit_ball_green() {
    Kernel k;
    k.kind_ = KernelKind::unit_ball_green;
    k.n_ = 3;
    return k;
}

bool Kernel::in_domain(std::span<const double> x) const {
    switch (kind_) {
    case KernelKind::finite_matrix: return false;
    case KernelKind::interval_green: return x.size() == 1 && x[0] > 0.0 && x[0] < 1.0;
    case KernelKind::newtonian:
    case KernelKind::riesz: return static_cast<int>(x.size()) == n_;
    case KernelKind::unit_ball_green: return x.size() == 3 && norm2(x) < 1.0;
    }
    return false;
}

double Kernel::g(std::span<const double> x, std::span<const double> y) const {
    switch (kind_) {
    case KernelKind::finite_matrix:
        throw std::invalid_argument("finite_matrix kernels are indexed, not evaluated at points");
    case KernelKind::interval_green:
        if (!in_domain(x) || !in_domain(y))
            throw std::domain_error("interval_green: point outside (0,1)");
        return std::min(x[0], y[0]) * (1.0 - std::max(x[0], y[0]));
    case KernelKind::newtonian:
        return pow_dist(dist2(x, y), 2.0 - n_);
    case KernelKind::riesz:
        return pow_dist(dist2(x, y), alpha_ - n_);
    case KernelKind::unit_ball_green:
        if (!in_domain(x) || !in_domain(y))
            throw std::domain_error("unit_ball_green: point outside the unit ball");
        return 1.0 / std::sqrt(dist2(x, y)) - ball_image_term(x, y);
    }
    return 0.0;
}

double Kernel::g_index(std::size_t i, std::size_t j) const {
    if (kind_ != KernelKind::finite_matrix)
        throw std::invalid_argument("g_index: finite_matrix kernels only");
    if (i >= msize_ || j >= msize_) throw std::out_of_range("g_index: index out of range");
    return mat_[i * msize_ + j];
}

std::vector<double> Kernel::potential_coefficients(const Measure& nu,
                                                   std::span<const double> x) const {
    if (kind_ == KernelKind::finite_matrix)
        throw std::invalid_argument("finite_matrix kernels take weight vectors");
    if (nu.dim() != n_)
        throw std::invalid_argument("potential: measure dimension does not match the kernel");
    const std::size_t cnt = nu.atom_count();
    const auto& w = nu.weights();
    std::vector<double> out(cnt, 0.0);

    if (kind_ == KernelKind::interval_green) {
        if (!in_domain(x)) throw std::domain_error("interval_green: point outside (0,1)");
        if (nu.kind() == MeasureKind::grid1d) {
            if (nu.interval_a() < 0.0 || nu.interval_b() > 1.0)
                throw std::domain_error("interval_green: grid outside [0,1]");
            const double h = nu.cell_width();
            for (std::size_t j = 0; j < cnt; ++j) {
                if (w[j] == 0.0) continue;
                const double mid = nu.interval_a() + (j + 0.5) * h;
                out[j] = w[j] * h * std::min(x[0], mid) * (1.0 - std::max(x[0], mid));
            }
            return out;
        }
        const double rho = nu.smear_radius();
        for (std::size_t j = 0; j < cnt; ++j) {
            if (w[j] == 0.0) continue;
            const double y = nu.pts()[j];
            if (nu.kind() == MeasureKind::atomic) {
                if (!(y > 0.0 && y < 1.0))
                    throw std::domain_error("interval_green: atom outside (0,1)");
                out[j] = w[j] * std::min(x[0], y) * (1.0 - std::max(x[0], y));
            } else {
                if (!(y - rho >= 0.0 && y + rho <= 1.0))
                    throw std::domain_error("interval_green: smeared atom outside [0,1]");
                out[j] = w[j] * green_cell_integral(x[0], y - rho, y + rho) / (2.0 * rho);
            }
        }
        return out;
    }

    if (nu.kind() == MeasureKind::grid1d) {
        if (kind_ == KernelKind::riesz) { // n = 1 enforced by the dimension check
            const double h = nu.cell_width();
            auto F = [this](double t) { // antiderivative of |t|^(alpha-1)
                return (t < 0.0 ? -1.0 : 1.0) * std::pow(std::fabs(t), alpha_) / alpha_;
            };
            for (std::size_t j = 0; j < cnt; ++j) {
                if (w[j] == 0.0) continue;
                const double lo = nu.interval_a() + j * h;
                out[j] = w[j] * (F(lo + h - x[0]) - F(lo - x[0]));
            }
            return out;
        }
        throw std::invalid_argument("potential: grid densities unsupported for this kernel");
    }

    for (std::size_t j = 0; j < cnt; ++j) {
        if (w[j] == 0.0) continue;
        const auto y = nu.point(j);
        const double d2 = dist2(x, y);
        switch (kind_) {
        case KernelKind::newtonian:
            out[j] = nu.kind() == MeasureKind::atomic
                         ? w[j] * pow_dist(d2, 2.0 - n_)
                         : w[j] * newtonian_ball(std::sqrt(d2), nu.smear_radius(), n_);
            break;
        case KernelKind::riesz:
            if (nu.kind() == MeasureKind::atomic) {
                out[j] = w[j] * pow_dist(d2, alpha_ - n_);
            } else {
                const Measure unit = Measure::smeared(
                    n_, {std::vector<double>(static_cast<std::size_t>(n_), 0.0)}, {1.0},
                    nu.smear_radius());
                std::vector<double> xd(static_cast<std::size_t>(n_), 0.0);
                xd[0] = std::sqrt(d2);
                out[j] = w[j] * riesz_via_profile(unit, alpha_, xd);
            }
            break;
        case KernelKind::unit_ball_green: {
            if (!in_domain(x)) throw std::domain_error("unit_ball_green: point outside the ball");
            if (nu.kind() == MeasureKind::atomic) {
                if (!(norm2(y) < 1.0))
                    throw std::domain_error("unit_ball_green: atom outside the ball");
                out[j] = w[j] * (1.0 / std::sqrt(d2) - ball_image_term(x, y));
            } else {
                const double rho = nu.smear_radius();
                if (!(std::sqrt(norm2(y)) + rho <= 1.0))
                    throw std::domain_error("unit_ball_green: smeared atom outside the ball");
                out[j] = w[j] * (newtonian_ball(std::sqrt(d2), rho, 3) - ball_image_term(x, y));
            }
            break;
        }
        default: break;
        }
    }
    return out;
}

double Kernel::potential(const Measure& nu, std::span<const double> x) const {
    if ((kind_ == KernelKind::newtonian || kind_ == KernelKind::riesz) &&
        nu.kind() == MeasureKind::atomic && nu.dim() == n_) {
        const std::size_t cnt = nu.atom_count();
        std::vector<double> d2(cnt);
        const auto& o = simd::ops();
        o.dist2(nu.pts().data(), cnt, x.data(), n_, d2.data());
        const double e = kind_ == KernelKind::newtonian ? 2.0 - n_ : alpha_ - n_;
        return o.pow_kernel_sum(d2.data(), nu.weights().data(), cnt, e);
    }
    const std::vector<double> c = potential_coefficients(nu, x);
    double acc = 0.0;
    for (double v : c) {
        if (std::isinf(v)) return kInf;
        acc += v;
    }
    return acc;
}

double Kernel::potential_index(std::span<const double> weights, std::size_t i) const {
    if (kind_ != KernelKind::finite_matrix)
        throw std::invalid_argument("potential_index: finite_matrix kernels only");
    if (weights.size() != msize_ || i >= msize_)
        throw std::invalid_argument("potential_index: size mismatch");
    return simd::ops().dot(&mat_[i * msize_], weights.data(), msize_);
}

std::vector<double> Kernel::potential_all(std::span<const double> weights) const {
    std::vector<double> out(msize_);
    for (std::size_t i = 0; i < msize_; ++i) out[i] = potential_index(weights, i);
    return out;
}

double symmetry_ratio(const Kernel& k, std::span<const double> x, std::span<const double> y) {
    const double a = k.g(x, y), b = k.g(y, x);
    if (std::isinf(a) && std::isinf(b)) return 1.0;
    return std::max(a / b, b / a);
}

double symmetry_ratio_index(const Kernel& k, std::size_t i, std::size_t j) {
    const double a = k.g_index(i, j), b = k.g_index(j, i);
    return std::max(a / b, b / a);
}

double quasimetric_ratio(const Kernel& k, std::span<const double> x, std::span<const double> y,
                         std::span<const double> z) {
    const double dxy = 1.0 / k.g(x, y);
    const double den = 1.0 / k.g(x, z) + 1.0 / k.g(z, y);
    return dxy / den; // NaN for fully degenerate triples, skipped by samplers
}

double quasimetric_ratio_index(const Kernel& k, std::size_t i, std::size_t j, std::size_t l) {
    const double dij = 1.0 / k.g_index(i, j);
    const double den = 1.0 / k.g_index(i, l) + 1.0 / k.g_index(l, j);
    return dij / den;
}

double wmp_ratio_index(const Kernel& k, const std::vector<std::size_t>& support,
                       std::span<const double> weights, const std::vector<std::size_t>& probes) {
    if (support.size() != weights.size())
        throw std::invalid_argument("wmp_ratio_index: support/weight size mismatch");
    std::vector<double> w(k.size(), 0.0);
    for (std::size_t t = 0; t < support.size(); ++t) w[support[t]] += weights[t];
    double sup_supp = 0.0, sup_probe = 0.0;
    for (std::size_t i : support) sup_supp = std::max(sup_supp, k.potential_index(w, i));
    for (std::size_t i : probes) sup_probe = std::max(sup_probe, k.potential_index(w, i));
    return sup_probe / sup_supp;
}

namespace {

class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }
    // dyadic lattice with 2^16 buckets over [lo, hi); exact midpoints
    double lattice(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(eng_() & 0xffff) / 65536.0);
    }
    double positive_weight() { return (static_cast<double>(eng_() % 65536) + 1.0) / 65536.0; }

    std::vector<double> point(const Kernel& k) {
        switch (k.kind()) {
        case KernelKind::interval_green:
            return {(static_cast<double>(eng_() % 65535) + 1.0) / 65536.0};
        case KernelKind::unit_ball_green: {
            std::vector<double> x(3);
            for (;;) {
                double n2 = 0.0;
                for (auto& c : x) {
                    c = lattice(-0.6875, 0.6875);
                    n2 += c * c;
                }
                if (n2 < 0.9025) return x; // |x| < 0.95
            }
        }
        default: {
            std::vector<double> x(static_cast<std::size_t>(k.dim()));
            for (auto& c : x) c = lattice(-1.0, 1.0);
            return x;
        }
        }
    }

  private:
    std::mt19937_64 eng_;
};

std::vector<double> midpoint(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = 0.5 * (a[i] + b[i]);
    return m;
}

} // namespace

KernelDiagnostics check_quasi_symmetry(const Kernel& k, int n_pairs, std::uint64_t seed) {
    KernelDiagnostics d;
    if (k.kind() == KernelKind::finite_matrix) {
        double a = 1.0;
        for (std::size_t i = 0; i < k.size(); ++i)
            for (std::size_t j = i + 1; j < k.size(); ++j) {
                a = std::max(a, symmetry_ratio_index(k, i, j));
                ++d.symmetry_pairs;
            }
        d.quasi_symmetry_a = a;
        return d;
    }
    Sampler s(seed);
    double a = 1.0;
    for (int t = 0; t < n_pairs; ++t) {
        const auto x = s.point(k), y = s.point(k);
        if (x == y) continue;
        a = std::max(a, symmetry_ratio(k, x, y));
        ++d.symmetry_pairs;
    }
    d.quasi_symmetry_a = a;
    return d;
}

KernelDiagnostics check_wmp(const Kernel& k, int n_trials, std::uint64_t seed) {
    KernelDiagnostics d;
    Sampler s(seed);
    double h = 0.0;

    if (k.kind() == KernelKind::finite_matrix) {
        std::vector<std::size_t> probes(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) probes[i] = i;
        for (int t = 0; t < n_trials; ++t) {
            const std::size_t ns = 1 + s.index(std::min<std::size_t>(k.size(), 4));
            std::vector<std::size_t> supp;
            std::vector<double> w;
            while (supp.size() < ns) {
                const std::size_t i = s.index(k.size());
                if (std::find(supp.begin(), supp.end(), i) == supp.end()) {
                    supp.push_back(i);
                    w.push_back(s.positive_weight());
                }
            }
            h = std::max(h, wmp_ratio_index(k, supp, w, probes));
            ++d.wmp_trials;
        }
        d.wmp_h_estimate = h;
        return d;
    }

    std::vector<std::vector<double>> probes(256);
    for (auto& pnt : probes) pnt = s.point(k);

    const bool singular = k.kind() != KernelKind::interval_green;
    for (int t = 0; t < n_trials; ++t) {
        ++d.wmp_trials;
        if (!singular) { // atomic trials, G nu finite and peaked at the atoms
            const std::size_t na = 1 + s.index(4);
            std::vector<std::vector<double>> atoms;
            std::vector<double> w;
            for (std::size_t j = 0; j < na; ++j) {
                atoms.push_back(s.point(k));
                w.push_back(s.positive_weight());
            }
            const Measure nu = Measure::atomic(1, atoms, w);
            double sup_supp = 0.0;
            for (const auto& a : atoms) sup_supp = std::max(sup_supp, k.potential(nu, a));
            double sup_probe = sup_supp; // atoms belong to the probed domain
            for (const auto& pnt : probes) sup_probe = std::max(sup_probe, k.potential(nu, pnt));
            h = std::max(h, sup_probe / sup_supp);
            continue;
        }
        if (t % 4 == 3) { // atomic trial on a singular kernel: unbounded on its support
            std::vector<std::vector<double>> atoms{s.point(k), s.point(k)};
            const Measure nu = Measure::atomic(k.dim(), atoms, {s.positive_weight(), s.positive_weight()});
            double sup_supp = 0.0;
            for (const auto& a : atoms) sup_supp = std::max(sup_supp, k.potential(nu, a));
            if (std::isinf(sup_supp)) {
                ++d.wmp_discarded;
                continue;
            }
        }
        // single smeared ball: the potential is radially decreasing about the
        // center, so the support sup is the center value, exactly
        std::vector<double> c;
        double rho;
        if (k.kind() == KernelKind::unit_ball_green) {
            c.assign(3, 0.0);
            rho = s.lattice(0.03125, 0.5);
        } else {
            c = s.point(k);
            rho = s.lattice(0.03125, 0.5);
        }
        const Measure nu = Measure::smeared(k.dim(), {c}, {s.positive_weight()}, rho);
        const double sup_supp = k.potential(nu, c);
        double sup_probe = sup_supp;
        for (const auto& pnt : probes) sup_probe = std::max(sup_probe, k.potential(nu, pnt));
        h = std::max(h, sup_probe / sup_supp);
    }
    d.wmp_h_estimate = h;
    return d;
}

KernelDiagnostics check_quasimetric(const Kernel& k, int n_triples, std::uint64_t seed) {
    KernelDiagnostics d;
    Sampler s(seed);
    double kappa = 0.0;

    if (k.kind() == KernelKind::finite_matrix) {
        if (k.size() >= 3) {
            for (int t = 0; t < n_triples; ++t) {
                const std::size_t i = s.index(k.size());
                const std::size_t j = s.index(k.size());
                const std::size_t l = s.index(k.size());
                if (i == j || j == l || i == l) continue;
                kappa = std::max(kappa, quasimetric_ratio_index(k, i, j, l));
                ++d.quasimetric_triples;
            }
        }
        d.quasimetric_kappa = kappa;
        return d;
    }

    for (int t = 0; t < n_triples; ++t) {
        const auto x = s.point(k), y = s.point(k);
        const auto z = (t % 3 == 0) ? midpoint(x, y) : s.point(k);
        if (x == y || x == z || z == y) continue;
        const double r = quasimetric_ratio(k, x, y, z);
        if (!std::isfinite(r)) continue;
        kappa = std::max(kappa, r);
        ++d.quasimetric_triples;
    }
    d.quasimetric_kappa = kappa;
    return d;
}

KernelDiagnostics kernel_diagnostics(const Kernel& k, int n_samples, std::uint64_t seed) {
    KernelDiagnostics d = check_quasi_symmetry(k, n_samples, seed);
    const KernelDiagnostics w = check_wmp(k, n_samples, seed + 0x9e3779b97f4a7c15ULL);
    const KernelDiagnostics q = check_quasimetric(k, n_samples, seed + 0x2545f4914f6cdd1dULL);
    d.wmp_h_estimate = w.wmp_h_estimate;
    d.wmp_trials = w.wmp_trials;
    d.wmp_discarded = w.wmp_discarded;
    d.quasimetric_kappa = q.quasimetric_kappa;
    d.quasimetric_triples = q.quasimetric_triples;
    return d;
}

} // namespace sublin
