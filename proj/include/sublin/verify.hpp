// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "sublin/measure.hpp"
#include "sublin/params.hpp"
#include "sublin/solver.hpp"

namespace sublin {

// Finite-difference and energy checks for interval Green solutions on a
// uniform grid over [0,1]. p = 2 throughout (the Green backend is linear).
struct VerifyReport {
    double ode_residual_sup = 0.0; // max over interior nodes, second central difference
    double energy_lhs = 0.0;       // integral of u'^2
    double energy_rhs = 0.0;       // integral of u^{1+q} dsigma + integral of u dmu
    double relative_gap = 0.0;     // |lhs - rhs| / max(lhs, rhs)
    double h = 0.0;
    int cells = 0;
};

// Energy identity from node and midpoint samples of u (u_nodes has M+1
// entries with zero boundary values, u_mids has M). Both sides use per-cell
// Simpson so that polynomial data up to degree 2 integrates exactly; with
// piecewise-constant cell densities the quadrature error is O(h^2).
double energy_identity_gap(std::span<const double> u_nodes, std::span<const double> u_mids,
                           const Measure& sigma, const Measure& mu, double q,
                           double* lhs_out = nullptr, double* rhs_out = nullptr);

// Residual of -u'' = sigma u^q + mu at the interior grid nodes plus the
// energy identity, for a converged run on the interval Green backend with
// grid densities. sigma and mu must share the grid of the solve ([0,1],
// equal cell counts); node values of u come from the Green representation.
VerifyReport verify_interval_solution(const PotentialBackend& be, const SolveReport& rep,
                                      const Measure& sigma, const Measure& mu,
                                      const Params& prm);

} // namespace sublin
