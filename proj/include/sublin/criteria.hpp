// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "sublin/kernels.hpp"
#include "sublin/measure.hpp"
#include "sublin/params.hpp"

namespace sublin {

// Which potential plays the role of P in the criteria and the solver:
//   wolff  : nonlinear W_{alpha,p}, any p > 1
//   riesz  : I_{2 alpha} (linear case), requires p = 2 and 2 alpha < n
//   kernel : a continuum Kernel's G-potential, requires p = 2
enum class PotentialMode { wolff, riesz, kernel };

// Criteria as norms, not booleans: "the condition holds" means the value is
// finite. violation is the implication audit flag, see implication_audit.
struct CriteriaReport {
    PotentialMode mode = PotentialMode::wolff;
    double sigma_norm = 0.0;
    double mu_energy = 0.0;
    double cross_norm = 0.0;
    bool violation = false;
};

// Mesh-refinement trend entry: the same three norms with every grid measure
// split into `refine_factor` subcells per cell. Finiteness of one mesh proves
// nothing; a growing trend makes divergence visible.
struct CriteriaTrend {
    int refine_factor = 1;
    double sigma_norm = 0.0;
    double mu_energy = 0.0;
    double cross_norm = 0.0;
};

// (1+q)(p-1)/(p-1-q); collapses to (1+q)/(1-q) at p = 2.
double sigma_norm_exponent(const Params& prm);

// || P sigma ||_{L^s(d sigma)} with s = sigma_norm_exponent, P sigma
// evaluated on the sigma-nodes.
double check_sigma(const Measure& sigma, const Params& prm, PotentialMode mode,
                   const Kernel* k = nullptr);

// integral of (P mu) d mu over the mu-nodes.
double check_mu_energy(const Measure& mu, const Params& prm, PotentialMode mode,
                       const Kernel* k = nullptr);

// || P mu ||_{L^{1+q}(d sigma)} on the sigma-nodes.
double check_cross(const Measure& sigma, const Measure& mu, const Params& prm,
                   PotentialMode mode, const Kernel* k = nullptr);

// Evaluates all three; violation iff sigma_norm and mu_energy are finite but
// cross_norm is not. A violation contradicts the proved implications, so it
// flags a bug somewhere in this library rather than a property of the data.
CriteriaReport implication_audit(const Measure& sigma, const Measure& mu, const Params& prm,
                                 PotentialMode mode, const Kernel* k = nullptr);

// Finite-matrix forms: sigma and mu are nonnegative weight vectors on the
// kernel's index set. Everything here is finite by construction.
double check_sigma(const Kernel& k, std::span<const double> sigma_w, const Params& prm);
double check_mu_energy(const Kernel& k, std::span<const double> mu_w);
double check_cross(const Kernel& k, std::span<const double> sigma_w,
                   std::span<const double> mu_w, const Params& prm);
CriteriaReport implication_audit(const Kernel& k, std::span<const double> sigma_w,
                                 std::span<const double> mu_w, const Params& prm);

// Re-runs the three criteria with grid measures refined by each factor
// (non-grid measures pass through unchanged). Requires at least one grid1d
// measure, otherwise the trend would be three identical rows.
std::vector<CriteriaTrend> criteria_trend(const Measure& sigma, const Measure& mu,
                                          const Params& prm, PotentialMode mode,
                                          const Kernel* k = nullptr,
                                          const std::vector<int>& factors = {1, 2, 4});

} // namespace sublin
