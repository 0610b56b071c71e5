// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "sublin/criteria.hpp"
#include "sublin/kernels.hpp"
#include "sublin/measure.hpp"
#include "sublin/params.hpp"

namespace sublin {

// pmu starts the iteration at u_0 = P(mu), the natural subsolution seed.
enum class SeedMode { pmu, zero, custom };

enum class SolveStatus { converged, not_converged, infinite_seed };

// Sign of the first iteration step; the monotonicity audit is direction
// aware because super-solution seeds descend.
enum class Direction { none, ascending, descending, mixed };

struct IterationConfig {
    double tol = 1e-10;
    int max_iter = 10000;
    SeedMode seed_mode = SeedMode::pmu;
    std::vector<double> custom_seed; // used when seed_mode == custom
};

struct SolveReport {
    std::vector<double> u; // limit values on the sigma-nodes
    int iterations = 0;
    SolveStatus status = SolveStatus::not_converged;
    bool converged = false;
    Direction direction = Direction::none;
    int monotonicity_violations = 0;
    double residual = 0.0;   // sup |u - P(u^q dsigma) - P mu| over sigma-nodes
    double final_norm = 0.0; // L^{1+q}(dsigma) norm of the limit
    double pmu_norm = 0.0;   // L^{1+q}(dsigma) norm of P mu
    double c_star = 0.0;     // empirical operator-bound constant from the iterates
    double apriori_bound = 0.0; // c*^{(p-1)/(p-1-q)} + (p-1)/(p-1-q) * pmu_norm
    bool apriori_bound_ok = false;
    std::vector<double> norm_history;       // L^{1+q}(dsigma) per iterate
    std::vector<double> supchange_history;  // sup |u_{j+1} - u_j|
    std::vector<double> residual_history;   // equation residual of each iterate
};

struct ProbeReport {
    bool ok = false;
    double max_excess = 0.0;       // minimality: max over nodes of base - alternative
    double max_pairwise_gap = 0.0; // uniqueness: max sup-distance between limits
    int non_converged = 0;
};

// P(f dsigma) and P mu evaluated on the sigma-nodes (and at off-node points
// for continuum backends; the matrix backend has no off-node domain).
class PotentialBackend {
  public:
    virtual ~PotentialBackend() = default;
    virtual std::size_t size() const = 0;
    virtual const EvaluationSet& sigma_nodes() const = 0;
    virtual std::vector<double> apply(std::span<const double> f) const = 0;
    virtual double apply_at(std::span<const double> f, std::span<const double> x) const = 0;
    virtual const std::vector<double>& mu_potential() const = 0;
    virtual double mu_potential_at(std::span<const double> x) const = 0;
};

std::unique_ptr<PotentialBackend> make_backend(PotentialMode mode, const Measure& sigma,
                                               const Measure& mu, const Params& prm,
                                               const Kernel* k = nullptr);
std::unique_ptr<PotentialBackend> make_matrix_backend(const Kernel& k,
                                                      std::vector<double> sigma_w,
                                                      std::vector<double> mu_w);

// u_{j+1} = P(u_j^q dsigma) + P mu, stopping when the sup-change falls below
// tol*(1 + sup|u|) and the equation residual meets the 10*tol*sup|u| contract.
SolveReport picard_solve(const PotentialBackend& be, const Params& prm,
                         const IterationConfig& cfg = {});

// Extends a converged solution off the node set through the equation itself:
// u(x) = P(u^q dsigma)(x) + P mu(x).
std::vector<double> evaluate_solution(const PotentialBackend& be, const SolveReport& rep,
                                      const Params& prm,
                                      const std::vector<std::vector<double>>& points);

// min over sigma-nodes of u / (P sigma)^{(p-1)/(p-1-q)}, nodes with
// P sigma = 0 skipped.
double lower_bound_ratio(const PotentialBackend& be, const SolveReport& rep, const Params& prm);

// Re-runs the iteration from super-solution seeds scale*u (scale >= 1, which
// the map turns into descending sequences) and checks that the base limit
// stays node-wise minimal.
ProbeReport minimality_probe(const PotentialBackend& be, const Params& prm,
                             const IterationConfig& cfg, const SolveReport& base,
                             std::span<const double> seed_scales);

// Random positive seeds below and above the solution; reports the maximum
// pairwise sup-distance of the resulting limits.
ProbeReport uniqueness_probe(const PotentialBackend& be, const Params& prm,
                             const IterationConfig& cfg, const SolveReport& base, int n_seeds,
                             std::uint64_t seed);

} // namespace sublin
