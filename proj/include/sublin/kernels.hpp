// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sublin/measure.hpp"

namespace sublin {

enum class KernelKind { finite_matrix, interval_green, newtonian, riesz, unit_ball_green };

// Positive kernel G(x,y): an explicit finite matrix, or one of the closed-form
// continuum kernels. Entries of a finite matrix must be positive and finite
// but need not be symmetric (asymmetry is what check_quasi_symmetry measures).
class Kernel {
  public:
    static Kernel finite_matrix(const std::vector<std::vector<double>>& g);
    static Kernel finite_matrix(const std::vector<std::vector<double>>& g,
                                const std::vector<std::vector<double>>& points);
    static Kernel interval_green();              // min(x,y)(1-max(x,y)) on (0,1)
    static Kernel newtonian(int n);              // |x-y|^(2-n), n >= 3
    static Kernel riesz_kernel(int n, double alpha); // |x-y|^(alpha-n)
    static Kernel unit_ball_green();             // n = 3 image formula

    KernelKind kind() const { return kind_; }
    int dim() const { return n_; }
    double alpha() const { return alpha_; }
    std::size_t size() const { return msize_; }
    const std::vector<double>& matrix() const { return mat_; } // row-major
    const std::vector<double>& points() const { return pts_; }
    int points_dim() const { return pts_dim_; }

    double g(std::span<const double> x, std::span<const double> y) const;
    double g_index(std::size_t i, std::size_t j) const;
    bool in_domain(std::span<const double> x) const;

    // G nu(x). Exact atom sums; closed-form ball averages for smeared atoms
    // (mean value property for newtonian/unit-ball, exact overlap profile for
    // riesz); cell-midpoint quadrature for grid densities vs interval_green.
    double potential(const Measure& nu, std::span<const double> x) const;
    // Row c with potential(nu.reweighted(f), x) = sum_j c[j] * f[j].
    std::vector<double> potential_coefficients(const Measure& nu,
                                               std::span<const double> x) const;
    // Finite-matrix potentials of a weight vector.
    double potential_index(std::span<const double> weights, std::size_t i) const;
    std::vector<double> potential_all(std::span<const double> weights) const;

  private:
    Kernel() = default;
    KernelKind kind_ = KernelKind::interval_green;
    int n_ = 1;
    double alpha_ = 1.0;
    std::size_t msize_ = 0;
    std::vector<double> mat_;
    std::vector<double> pts_;
    int pts_dim_ = 0;
};

struct KernelDiagnostics {
    double quasi_symmetry_a = 0.0;
    double wmp_h_estimate = 0.0;
    double quasimetric_kappa = 0.0;
    int symmetry_pairs = 0;
    int wmp_trials = 0;
    int wmp_discarded = 0;
    int quasimetric_triples = 0;
};

// Single-instance ratios, used both by the samplers below and directly on
// hand-built examples.
double symmetry_ratio(const Kernel& k, std::span<const double> x, std::span<const double> y);
double symmetry_ratio_index(const Kernel& k, std::size_t i, std::size_t j);
double quasimetric_ratio(const Kernel& k, std::span<const double> x,
                         std::span<const double> y, std::span<const double> z);
double quasimetric_ratio_index(const Kernel& k, std::size_t i, std::size_t j, std::size_t l);
// sup over probes of G nu / sup over the support sample of G nu; +inf inputs
// make the trial unusable and are reported as +inf here.
double wmp_ratio_index(const Kernel& k, const std::vector<std::size_t>& support,
                       std::span<const double> weights,
                       const std::vector<std::size_t>& probes);

// Max of symmetry_ratio over sampled pairs (finite matrices: all pairs).
KernelDiagnostics check_quasi_symmetry(const Kernel& k, int n_pairs, std::uint64_t seed);
// Max of sup_domain/sup_support over randomized trials. Trials are atomic
// index subsets (finite matrices), atomic measures (interval_green), or
// single smeared balls whose potential peaks at the center (radially
// decreasing kernels); atomic trials on singular kernels have infinite
// support potential and are discarded and counted.
KernelDiagnostics check_wmp(const Kernel& k, int n_trials, std::uint64_t seed);
// Max of d(x,y)/(d(x,z)+d(z,y)) with d = 1/G over sampled triples; one third
// of the samples are exact collinear midpoints where the ratio is extremal
// for power-law kernels. Degenerate (coincident) triples are skipped.
KernelDiagnostics check_quasimetric(const Kernel& k, int n_triples, std::uint64_t seed);

KernelDiagnostics kernel_diagnostics(const Kernel& k, int n_samples, std::uint64_t seed);

} // namespace sublin
