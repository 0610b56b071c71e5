// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "sublin/measure.hpp"
#include "sublin/params.hpp"

namespace sublin {

// W_{alpha,p} sigma(x) = int_0^inf [sigma(B(x,r))/r^(n-alpha p)]^(1/(p-1)) dr/r.
// Closed forms on constant profile pieces and on the tail; adaptive quadrature
// (rel. 1e-10) on smooth pieces. +inf iff sigma({x}) > 0 or alpha*p >= n.
double wolff(const Measure& sigma, const Params& prm, std::span<const double> x);
double wolff_from_profile(const BallMassProfile& pr, const Params& prm);

// Same integral truncated at R; nondecreasing in R, tends to wolff.
double truncated_wolff(const Measure& sigma, const Params& prm, double R,
                       std::span<const double> x);

// I_alpha sigma(x) = int |x-y|^(alpha-n) d sigma(y), 0 < alpha < n, with n the
// measure's dimension. Direct kernel sum for atomic measures; the radial form
// (n-alpha) * int_0^inf sigma(B(x,r)) r^(alpha-n-1) dr otherwise.
double riesz(const Measure& sigma, double alpha, std::span<const double> x);
// The radial form for any variant (atomic included); agrees with the direct
// sum to quadrature tolerance.
double riesz_via_profile(const Measure& sigma, double alpha, std::span<const double> x);

struct EnergyReport {
    double wolff_energy = 0.0; // int W_{alpha,p} sigma d sigma
    double riesz_energy = 0.0; // int I_{2 alpha} sigma d sigma (p = 2 only)
    bool has_riesz = false;
};
// Both integrals go over the measure's own sigma-nodes; at p = 2 they satisfy
// (n - 2 alpha) * wolff_energy = riesz_energy.
EnergyReport energy(const Measure& sigma, const Params& prm);

// I_1((I_1 mu)^(1/(p-1)))(x) for atomic mu in R^3, by deterministic quadrature:
// smooth bump partition of unity around the atoms, atom- and x-centered
// spherical integrals, and an inverted-radius tail transform. Returns +inf
// where the integral diverges: p <= 5/3, p >= 3, or x on an atom.
double iterated_riesz_bound(const Measure& mu, const Params& prm, std::span<const double> x);

} // namespace sublin
