// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace sublin {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class MeasureKind { atomic, smeared, grid1d };

enum class NodeTag { sigma, mu, probe };

// Evaluation nodes with sigma-quadrature weights. Row-major coordinates.
// Non-sigma nodes carry weight 0 so integration can run over all nodes.
struct EvaluationSet {
    int dim = 1;
    std::vector<double> coords;
    std::vector<double> sigma_weights;
    std::vector<NodeTag> tags;

    std::size_t size() const { return tags.size(); }
    std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(dim),
                static_cast<std::size_t>(dim)};
    }
    void add(std::span<const double> x, double w, NodeTag tag);
};

// sigma(B(x,r)) as a function of r: breakpoints at the exact geometric
// transition radii, each piece either constant or a smooth closed form.
struct BallMassProfile {
    std::vector<double> breaks;        // 0 = r_0 < r_1 < ... < r_K
    std::vector<bool> piece_constant;  // size K, piece k spans [r_k, r_{k+1})
    std::vector<double> piece_value;   // valid where piece_constant
    double total = 0.0;                // value on [r_K, inf)
    double base_atom = 0.0;            // mass of the singleton {x}
    int head_order = 0;                // 0: first piece constant; else growth r^n
    std::function<double(double)> eval;

    double operator()(double r) const { return eval(r); }
    std::size_t piece_count() const { return piece_constant.size(); }
};

class Measure {
  public:
    static Measure atomic(int dim, const std::vector<std::vector<double>>& points,
                          const std::vector<double>& weights);
    static Measure smeared(int dim, const std::vector<std::vector<double>>& centers,
                           const std::vector<double>& weights, double smear_radius);
    static Measure grid1d(double a, double b, const std::vector<double>& densities);

    MeasureKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double total_mass() const;
    double smear_radius() const { return rho_; }
    double interval_a() const { return a_; }
    double interval_b() const { return b_; }
    double cell_width() const;
    const std::vector<double>& weights() const { return w_; }
    const std::vector<double>& densities() const { return w_; }
    std::size_t atom_count() const;
    std::vector<double> point(std::size_t i) const; // atom/center i (or cell midpoint)

    double ball_mass(std::span<const double> x, double r) const;
    BallMassProfile profile(std::span<const double> x) const;

    // Sigma-nodes: atoms/centers with their weights, or grid cell midpoints
    // with cell masses.
    EvaluationSet nodes() const;

    Measure scaled(double c) const;
    // Same geometry, weight (or density) i multiplied by factors[i].
    Measure reweighted(std::span<const double> factors) const;
    // grid1d only: split every cell into `factor` equal cells (same density),
    // preserving the measure exactly. Used for mesh-refinement trends.
    Measure refined(int factor) const;

    // coordinate-major atom storage, pts()[c*N + i]; empty for grid1d
    const std::vector<double>& pts() const { return pts_; }

  private:
    Measure() = default;
    MeasureKind kind_ = MeasureKind::atomic;
    int dim_ = 1;
    std::vector<double> pts_;
    std::vector<double> w_; // weights, or per-cell densities for grid1d
    double rho_ = 0.0;
    double a_ = 0.0, b_ = 0.0;

    void check() const;
};

// Sum of f over all nodes weighted by sigma_weights. +inf values with
// positive weight yield +inf; zero-weight nodes are skipped entirely.
double integrate(std::span<const double> f, const EvaluationSet& es);

// (integral of |f|^s d sigma)^(1/s), with +inf propagation as above.
double lp_norm(std::span<const double> f, double s, const EvaluationSet& es);

} // namespace sublin
