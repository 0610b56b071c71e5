// SPDX-License-Identifier: Apache-2.0
#include "sublin/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sublin/geometry.hpp"

namespace sublin {
namespace {

double dist_to_column(std::span<const double> x, const std::vector<double>& pts,
                      std::size_t count, std::size_t i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < x.size(); ++c) {
        const double d = x[c] - pts[c * count + i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

std::vector<double> unique_sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

void EvaluationSet::add(std::span<const double> x, double w, NodeTag tag) {
    if (static_cast<int>(x.size()) != dim)
        throw std::invalid_argument("EvaluationSet::add: dimension mismatch");
    coords.insert(coords.end(), x.begin(), x.end());
    sigma_weights.push_back(w);
    tags.push_back(tag);
}

void Measure::check() const {
    if (dim_ < 1) throw std::invalid_argument("Measure: dimension must be >= 1");
    if (w_.empty()) throw std::invalid_argument("Measure: empty weight list");
    double total = 0.0;
    for (double v : w_) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("Measure: weights must be finite and >= 0");
        total += v;
    }
    if (!(total > 0.0)) throw std::invalid_argument("Measure: total mass must be positive");
    if (kind_ == MeasureKind::smeared && !(rho_ > 0.0))
        throw std::invalid_argument("Measure: smear radius must be positive");
    if (kind_ == MeasureKind::grid1d && !(b_ > a_))
        throw std::invalid_argument("Measure: interval must satisfy a < b");
    if (kind_ != MeasureKind::grid1d &&
        pts_.size() != w_.size() * static_cast<std::size_t>(dim_))
        throw std::invalid_argument("Measure: point/weight size mismatch");
}

Measure Measure::atomic(int dim, const std::vector<std::vector<double>>& points,
                        const std::vector<double>& weights) {
    if (points.size() != weights.size())
        throw std::invalid_argument("Measure::atomic: point/weight count mismatch");
    Measure m;
    m.kind_ = MeasureKind::atomic;
    m.dim_ = dim;
    m.w_ = weights;
    const std::size_t cnt = points.size();
    m.pts_.resize(cnt * static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < cnt; ++i) {
        if (static_cast<int>(points[i].size()) != dim)
            throw std::invalid_argument("Measure::atomic: point dimension mismatch");
        for (int c = 0; c < dim; ++c) m.pts_[static_cast<std::size_t>(c) * cnt + i] = points[i][c];
    }
    m.check();
    return m;
}

Measure Measure::smeared(int dim, const std::vector<std::vector<double>>& centers,
                         const std::vector<double>& weights, double smear_radius) {
    Measure m = atomic(dim, centers, weights);
    m.kind_ = MeasureKind::smeared;
    m.rho_ = smear_radius;
    m.check();
    return m;
}

Measure Measure::grid1d(double a, double b, const std::vector<double>& densities) {
    Measure m;
    m.kind_ = MeasureKind::grid1d;
    m.dim_ = 1;
    m.a_ = a;
    m.b_ = b;
    m.w_ = densities;
    m.check();
    return m;
}

double Measure::total_mass() const {
    double total = 0.0;
    for (double v : w_) total += v;
    if (kind_ == MeasureKind::grid1d) total *= cell_width();
    return total;
}

double Measure::cell_width() const {
    if (kind_ != MeasureKind::grid1d) return 0.0;
    return (b_ - a_) / static_cast<double>(w_.size());
}

std::size_t Measure::atom_count() const { return w_.size(); }

std::vector<double> Measure::point(std::size_t i) const {
    if (kind_ == MeasureKind::grid1d)
        return {a_ + (static_cast<double>(i) + 0.5) * cell_width()};
    std::vector<double> x(static_cast<std::size_t>(dim_));
    for (int c = 0; c < dim_; ++c) x[static_cast<std::size_t>(c)] = pts_[static_cast<std::size_t>(c) * w_.size() + i];
    return x;
}

double Measure::ball_mass(std::span<const double> x, double r) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("ball_mass: dimension mismatch");
    if (r < 0.0) throw std::invalid_argument("ball_mass: negative radius");
    const std::size_t cnt = w_.size();
    double acc = 0.0;
    switch (kind_) {
    case MeasureKind::atomic:
        for (std::size_t i = 0; i < cnt; ++i)
            if (dist_to_column(x, pts_, cnt, i) <= r) acc += w_[i];
        return acc;
    case MeasureKind::smeared:
        for (std::size_t i = 0; i < cnt; ++i)
            acc += w_[i] *
                   geom::ball_overlap_fraction(dim_, dist_to_column(x, pts_, cnt, i), rho_, r);
        return acc;
    case MeasureKind::grid1d: {
        const double h = cell_width();
        const double lo = x[0] - r, hi = x[0] + r;
        for (std::size_t j = 0; j < cnt; ++j) {
            const double cl = a_ + static_cast<double>(j) * h;
            const double len = std::min(hi, cl + h) - std::max(lo, cl);
            if (len > 0.0) acc += w_[j] * len;
        }
        return acc;
    }
    }
    return acc;
}

BallMassProfile Measure::profile(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("profile: dimension mismatch");
    BallMassProfile pr;
    pr.total = total_mass();
    const std::size_t cnt = w_.size();

    if (kind_ == MeasureKind::atomic) {
        std::vector<std::pair<double, double>> dw;
        dw.reserve(cnt);
        for (std::size_t i = 0; i < cnt; ++i) {
            const double d = dist_to_column(x, pts_, cnt, i);
            if (d == 0.0)
                pr.base_atom += w_[i];
            else
                dw.emplace_back(d, w_[i]);
        }
        std::sort(dw.begin(), dw.end());
        std::vector<double> ds, cum;
        double running = pr.base_atom;
        for (const auto& [d, wv] : dw) {
            if (!ds.empty() && ds.back() == d) {
                running += wv;
                cum.back() = running;
            } else {
                running += wv;
                ds.push_back(d);
                cum.push_back(running);
            }
        }
        pr.breaks.push_back(0.0);
        pr.breaks.insert(pr.breaks.end(), ds.begin(), ds.end());
        for (std::size_t k = 0; k + 1 < pr.breaks.size(); ++k) {
            pr.piece_constant.push_back(true);
            pr.piece_value.push_back(k == 0 ? pr.base_atom : cum[k - 1]);
        }
        const double base = pr.base_atom;
        pr.eval = [ds, cum, base](double r) {
            auto it = std::upper_bound(ds.begin(), ds.end(), r);
            if (it == ds.begin()) return base;
            return cum[static_cast<std::size_t>(it - ds.begin()) - 1];
        };
        pr.head_order = 0;
        return pr;
    }

    if (kind_ == MeasureKind::smeared) {
        std::vector<double> d(cnt);
        for (std::size_t i = 0; i < cnt; ++i) d[i] = dist_to_column(x, pts_, cnt, i);
        std::vector<double> brk{0.0};
        for (double di : d) {
            if (std::fabs(di - rho_) > 0.0) brk.push_back(std::fabs(di - rho_));
            brk.push_back(di + rho_);
        }
        pr.breaks = unique_sorted(brk);
        const int dim = dim_;
        const double rho = rho_;
        const std::vector<double> wt = w_;
        pr.eval = [d, wt, dim, rho](double r) {
            double acc = 0.0;
            for (std::size_t i = 0; i < d.size(); ++i)
                acc += wt[i] * geom::ball_overlap_fraction(dim, d[i], rho, r);
            return acc;
        };
        for (std::size_t k = 0; k + 1 < pr.breaks.size(); ++k) {
            const double lo = pr.breaks[k], hi = pr.breaks[k + 1];
            bool constant = true;
            for (double di : d)
                if (!(hi <= di - rho_ || lo >= di + rho_)) {
                    constant = false;
                    break;
                }
            pr.piece_constant.push_back(constant);
            pr.piece_value.push_back(constant ? pr.eval(0.5 * (lo + hi)) : 0.0);
        }
        pr.head_order = (pr.piece_count() > 0 && !pr.piece_constant[0]) ? dim_ : 0;
        return pr;
    }

    // grid1d
    const double h = cell_width();
    const double x0 = x[0];
    std::vector<double> brk{0.0};
    for (std::size_t j = 0; j <= cnt; ++j) {
        const double v = std::fabs(x0 - (a_ + static_cast<double>(j) * h));
        if (v > 0.0) brk.push_back(v);
    }
    pr.breaks = unique_sorted(brk);
    std::vector<double> prefix(cnt + 1, 0.0); // integral of density over [a, b_j]
    for (std::size_t j = 0; j < cnt; ++j) prefix[j + 1] = prefix[j] + w_[j] * h;
    const double a = a_, b = b_;
    const std::vector<double> dens = w_;
    auto cum = [prefix, dens, a, b, h, cnt](double t) {
        if (t <= a) return 0.0;
        if (t >= b) return prefix[cnt];
        auto j = static_cast<std::size_t>((t - a) / h);
        if (j >= cnt) j = cnt - 1;
        return prefix[j] + dens[j] * (t - a - static_cast<double>(j) * h);
    };
    pr.eval = [cum, x0](double r) { return cum(x0 + r) - cum(x0 - r); };
    auto dens_at = [&](double t) {
        if (t < a_ || t >= b_) return 0.0;
        auto j = static_cast<std::size_t>((t - a_) / h);
        if (j >= cnt) j = cnt - 1;
        return w_[j];
    };
    for (std::size_t k = 0; k + 1 < pr.breaks.size(); ++k) {
        const double rm = 0.5 * (pr.breaks[k] + pr.breaks[k + 1]);
        const double slope = dens_at(x0 - rm) + dens_at(x0 + rm);
        pr.piece_constant.push_back(slope == 0.0);
        pr.piece_value.push_back(slope == 0.0 ? pr.eval(rm) : 0.0);
    }
    pr.head_order = (pr.piece_count() > 0 && !pr.piece_constant[0]) ? 1 : 0;
    return pr;
}

EvaluationSet Measure::nodes() const {
    EvaluationSet es;
    es.dim = dim_;
    const std::size_t cnt = w_.size();
    if (kind_ == MeasureKind::grid1d) {
        const double h = cell_width();
        for (std::size_t j = 0; j < cnt; ++j) {
            const double mid = a_ + (static_cast<double>(j) + 0.5) * h;
            es.add(std::span<const double>(&mid, 1), w_[j] * h, NodeTag::sigma);
        }
        return es;
    }
    std::vector<double> x(static_cast<std::size_t>(dim_));
    for (std::size_t i = 0; i < cnt; ++i) {
        for (int c = 0; c < dim_; ++c) x[static_cast<std::size_t>(c)] = pts_[static_cast<std::size_t>(c) * cnt + i];
        es.add(x, w_[i], NodeTag::sigma);
    }
    return es;
}

Measure Measure::scaled(double c) const {
    if (!(c > 0.0)) throw std::invalid_argument("Measure::scaled: factor must be positive");
    Measure m = *this;
    for (double& v : m.w_) v *= c;
    return m;
}

Measure Measure::reweighted(std::span<const double> factors) const {
    if (factors.size() != w_.size())
        throw std::invalid_argument("Measure::reweighted: factor count mismatch");
    Measure m = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (!(factors[i] >= 0.0))
            throw std::invalid_argument("Measure::reweighted: factors must be >= 0");
        m.w_[i] = w_[i] * factors[i];
    }
    return m;
}

Measure Measure::refined(int factor) const {
    if (kind_ != MeasureKind::grid1d)
        throw std::invalid_argument("Measure::refined: grid1d measures only");
    if (factor < 1) throw std::invalid_argument("Measure::refined: factor must be >= 1");
    std::vector<double> dens;
    dens.reserve(w_.size() * static_cast<std::size_t>(factor));
    for (double c : w_)
        for (int r = 0; r < factor; ++r) dens.push_back(c);
    return grid1d(a_, b_, dens);
}

double integrate(std::span<const double> f, const EvaluationSet& es) {
    if (f.size() != es.size()) throw std::invalid_argument("integrate: value count mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double w = es.sigma_weights[i];
        if (w == 0.0) continue;
        if (std::isinf(f[i])) return f[i];
        acc += w * f[i];
    }
    return acc;
}

double lp_norm(std::span<const double> f, double s, const EvaluationSet& es) {
    if (f.size() != es.size()) throw std::invalid_argument("lp_norm: value count mismatch");
    if (!(s >= 1.0)) throw std::invalid_argument("lp_norm: exponent must be >= 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double w = es.sigma_weights[i];
        if (w == 0.0) continue;
        if (std::isinf(f[i])) return kInf;
        acc += w * std::pow(std::fabs(f[i]), s);
    }
    return std::pow(acc, 1.0 / s);
}

} // namespace sublin
