// SPDX-License-Identifier: Apache-2.0
#include "sublin/potentials.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sublin/quadrature.hpp"
#include "sublin/simd/ops.hpp"

namespace sublin {
namespace {

constexpr double kPieceTol = 1e-10;

// int_lo^hi r^(-beta-1) dr, valid for every sign of beta and lo = 0 or
// hi = +inf (divergent combinations come out as +inf).
double radial_power_integral(double lo, double hi, double beta) {
    if (beta == 0.0) return std::log(hi / lo);
    return (std::pow(lo, -beta) - std::pow(hi, -beta)) / beta;
}

// int_0^R scale * sigma(B(x,r))^m * r^(-beta-1) dr, driven by the profile:
// closed form on constant pieces and the tail, adaptive quadrature on smooth
// pieces, power substitution on a smooth piece touching r = 0.
double profile_radial_integral(const BallMassProfile& pr, double m, double beta,
                               double scale, double R) {
    double acc = 0.0;
    for (std::size_t k = 0; k < pr.piece_count(); ++k) {
        const double lo = pr.breaks[k];
        const double hi = std::min(pr.breaks[k + 1], R);
        if (!(hi > lo)) continue;
        if (pr.piece_constant[k]) {
            const double S = pr.piece_value[k];
            if (S > 0.0) acc += scale * std::pow(S, m) * radial_power_integral(lo, hi, beta);
        } else {
            auto f = [&pr, m, beta, scale](double r) {
                return scale * std::pow(pr.eval(r), m) * std::pow(r, -beta - 1.0);
            };
            if (lo == 0.0) {
                const double eta1 = pr.head_order * m - beta;
                if (!(eta1 > 0.0)) return kInf;
                acc += quad::adaptive_gl_power_head(f, hi, quad::power_substitution_order(eta1),
                                                    kPieceTol);
            } else {
                acc += quad::adaptive_gl(f, lo, hi, kPieceTol);
            }
        }
        if (std::isinf(acc)) return kInf;
    }
    const double rK = pr.breaks.back();
    if (R > rK && pr.total > 0.0)
        acc += scale * std::pow(pr.total, m) * radial_power_integral(rK, R, beta);
    return acc;
}

} // namespace

double wolff_from_profile(const BallMassProfile& pr, const Params& prm) {
    const double m = 1.0 / (prm.p - 1.0);
    return profile_radial_integral(pr, m, prm.beta(), 1.0, kInf);
}

double wolff(const Measure& sigma, const Params& prm, std::span<const double> x) {
    return wolff_from_profile(sigma.profile(x), prm);
}

double truncated_wolff(const Measure& sigma, const Params& prm, double R,
                       std::span<const double> x) {
    if (!(R > 0.0)) throw std::invalid_argument("truncated_wolff: R must be positive");
    const double m = 1.0 / (prm.p - 1.0);
    return profile_radial_integral(sigma.profile(x), m, prm.beta(), 1.0, R);
}

double riesz(const Measure& sigma, double alpha, std::span<const double> x) {
    const int n = sigma.dim();
    if (!(alpha > 0.0) || !(alpha < n))
        throw std::invalid_argument("riesz: requires 0 < alpha < n");
    if (sigma.kind() != MeasureKind::atomic) return riesz_via_profile(sigma, alpha, x);
    const std::size_t cnt = sigma.atom_count();
    std::vector<double> d2(cnt);
    const auto& o = simd::ops();
    o.dist2(sigma.pts().data(), cnt, x.data(), n, d2.data());
    return o.pow_kernel_sum(d2.data(), sigma.weights().data(), cnt, alpha - n);
}

double riesz_via_profile(const Measure& sigma, double alpha, std::span<const double> x) {
    const int n = sigma.dim();
    if (!(alpha > 0.0) || !(alpha < n))
        throw std::invalid_argument("riesz: requires 0 < alpha < n");
    return profile_radial_integral(sigma.profile(x), 1.0, n - alpha, n - alpha, kInf);
}

EnergyReport energy(const Measure& sigma, const Params& prm) {
    EnergyReport rep;
    const EvaluationSet es = sigma.nodes();
    std::vector<double> vals(es.size(), 0.0);
    for (std::size_t i = 0; i < es.size(); ++i)
        if (es.sigma_weights[i] > 0.0) vals[i] = wolff(sigma, prm, es.point(i));
    rep.wolff_energy = integrate(vals, es);
    rep.has_riesz = prm.p == 2.0 && 2.0 * prm.alpha < prm.n;
    if (rep.has_riesz) {
        for (std::size_t i = 0; i < es.size(); ++i)
            vals[i] = es.sigma_weights[i] > 0.0 ? riesz(sigma, 2.0 * prm.alpha, es.point(i)) : 0.0;
        rep.riesz_energy = integrate(vals, es);
    }
    return rep;
}

namespace {

using Vec3 = std::array<double, 3>;

double dist2_3(const Vec3& a, const Vec3& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return dx * dx + dy * dy + dz * dz;
}

// 0 for u <= 0, 1 for u >= 1, smooth and monotone in between
double bump01(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double e0 = std::exp(-1.0 / u);
    const double e1 = std::exp(-1.0 / (1.0 - u));
    return e0 / (e0 + e1);
}

struct AngularRule {
    std::vector<Vec3> dir;
    std::vector<double> wt; // sums to 4 pi
};

const AngularRule& angular_rule() {
    static const AngularRule ar = [] {
        AngularRule r;
        const auto& gl = quad::gauss_rule(48);
        const int nphi = 96;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double mu = gl.nodes[i];
            const double sn = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            for (int j = 0; j < nphi; ++j) {
                const double phi = 2.0 * M_PI * (j + 0.5) / nphi;
                r.dir.push_back({sn * std::cos(phi), sn * std::sin(phi), mu});
                r.wt.push_back(gl.weights[i] * 2.0 * M_PI / nphi);
            }
        }
        return r;
    }();
    return ar;
}

} // namespace

double iterated_riesz_bound(const Measure& mu, const Params& prm, std::span<const double> x) {
    if (mu.kind() != MeasureKind::atomic || mu.dim() != 3 || prm.n != 3)
        throw std::invalid_argument("iterated_riesz_bound: atomic measures in R^3 only");
    const double p = prm.p;
    if (!(p > 5.0 / 3.0) || !(p < 3.0)) return kInf;
    const double m = 1.0 / (p - 1.0);

    // merge coincident atoms, drop zero weights
    std::vector<Vec3> ys;
    std::vector<double> wv;
    {
        const std::size_t cnt = mu.atom_count();
        const auto& pts = mu.pts();
        for (std::size_t i = 0; i < cnt; ++i) {
            if (mu.weights()[i] == 0.0) continue;
            const Vec3 y{pts[i], pts[cnt + i], pts[2 * cnt + i]};
            bool merged = false;
            for (std::size_t k = 0; k < ys.size(); ++k)
                if (ys[k] == y) {
                    wv[k] += mu.weights()[i];
                    merged = true;
                    break;
                }
            if (!merged) {
                ys.push_back(y);
                wv.push_back(mu.weights()[i]);
            }
        }
    }
    const std::size_t N = ys.size();
    const Vec3 xx{x[0], x[1], x[2]};

    std::vector<double> d(N), rho(N);
    for (std::size_t i = 0; i < N; ++i) {
        d[i] = std::sqrt(dist2_3(xx, ys[i]));
        if (d[i] == 0.0) return kInf; // 2 + 2m >= 3 throughout 5/3 < p < 3
    }
    for (std::size_t i = 0; i < N; ++i) {
        double md = d[i];
        for (std::size_t j = 0; j < N; ++j)
            if (j != i) md = std::min(md, std::sqrt(dist2_3(ys[i], ys[j])));
        rho[i] = 0.4 * md;
    }

    auto g = [&](const Vec3& y) {
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i) acc += wv[i] / dist2_3(y, ys[i]);
        return acc;
    };
    // On a shell of radius s around atom `self` the self distance is s by
    // construction; recomputing it from the rounded point y cancels
    // catastrophically once s drops below coordinate rounding and turns the
    // self term into w/0.
    auto g_shell = [&](const Vec3& y, std::size_t self, double s2) {
        double acc = wv[self] / s2;
        for (std::size_t j = 0; j < N; ++j)
            if (j != self) acc += wv[j] / dist2_3(y, ys[j]);
        return acc;
    };
    auto cutoff_rem = [&](const Vec3& y) { // 1 - sum of atom bumps
        for (std::size_t i = 0; i < N; ++i) {
            const double t = std::sqrt(dist2_3(y, ys[i]));
            if (t < rho[i]) return 1.0 - bump01((rho[i] - t) / (0.5 * rho[i]));
        }
        return 1.0; // bump supports are disjoint
    };
    const AngularRule& ar = angular_rule();
    auto angsum = [&](const Vec3& c, double s, auto&& f) {
        double acc = 0.0;
        for (std::size_t k = 0; k < ar.dir.size(); ++k) {
            const Vec3 y{c[0] + s * ar.dir[k][0], c[1] + s * ar.dir[k][1],
                         c[2] + s * ar.dir[k][2]};
            acc += ar.wt[k] * f(y);
        }
        return acc;
    };

    // The angular rule leaves a noise floor around 1e-5 on each radial sample,
    // so the radial tolerance below it can stall the accept test; the panel
    // budget keeps each shell integral bounded at the accuracy the angular
    // rule supports anyway.
    const double tol = 1e-6;
    const int shell_budget = 320;
    double total = 0.0;

    // atom-centered balls: integrand psi_i * |x-y|^-2 * g^m in spherical shells
    for (std::size_t i = 0; i < N; ++i) {
        auto Fi = [&](double s) {
            if (s <= 0.0) return 0.0; // substitution underflow; transformed limit is 0
            const double ps = bump01((rho[i] - s) / (0.5 * rho[i]));
            if (ps == 0.0) return 0.0;
            const double s2 = s * s;
            return s2 * ps *
                   angsum(ys[i], s, [&](const Vec3& y) {
                       return std::pow(g_shell(y, i, s2), m) / dist2_3(y, xx);
                   });
        };
        total += quad::adaptive_gl_power_head(
            Fi, 0.5 * rho[i], quad::power_substitution_order(3.0 - 2.0 * m), tol, 48,
            shell_budget);
        total += quad::adaptive_gl(Fi, 0.5 * rho[i], rho[i], tol, 48, shell_budget);
    }

    // remainder in x-centered shells; the r^2 Jacobian cancels |x-y|^-2
    auto rem = [&](double s) {
        return angsum(xx, s, [&](const Vec3& y) {
            const double c = cutoff_rem(y);
            return c == 0.0 ? 0.0 : c * std::pow(g(y), m);
        });
    };
    double Smax = 0.0;
    for (std::size_t i = 0; i < N; ++i) Smax = std::max(Smax, d[i] + rho[i]);
    Smax *= 2.0;
    std::vector<double> cuts{0.0, Smax};
    for (std::size_t i = 0; i < N; ++i)
        for (double c : {d[i] - rho[i], d[i], d[i] + rho[i]})
            if (c > 0.0 && c < Smax) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        total += quad::adaptive_gl(rem, cuts[k], cuts[k + 1], tol, 48, shell_budget);

    // tail beyond Smax via s = Smax/t, integrand ~ t^(2m-2) near t = 0
    auto tail = [&](double t) { return rem(Smax / t) * Smax / (t * t); };
    total += quad::adaptive_gl_power_head(tail, 1.0,
                                          quad::power_substitution_order(2.0 * m - 1.0), tol,
                                          48, shell_budget);
    return total;
}

} // namespace sublin
