// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace sublin::quad {

// Composite adaptive Gauss-Legendre (15-point panels, bisection refinement).
// Deterministic: refinement depends only on the integrand values at fixed
// nodes. rel_tol is relative to the running estimate of the whole integral.
// max_panels caps the number of bisections: when the integrand carries a
// noise floor above rel_tol (an inner quadrature, say) no panel ever passes
// the accept test and the recursion would otherwise visit 2^max_depth nodes;
// hitting the cap returns the best composite estimate accumulated so far.
double adaptive_gl(const std::function<double(double)>& f, double a, double b,
                   double rel_tol, int max_depth = 48, int max_panels = 20000);

// Integral over [0, h] of an integrand whose leading behavior at 0 is
// r^eta with eta in (-1, 0]: substitute r = h*t^gamma so the transformed
// integrand behaves like t^(gamma*(eta+1)-1). gamma should be chosen so that
// exponent is >= ~2 (see power_substitution_order).
double adaptive_gl_power_head(const std::function<double(double)>& f, double h,
                              int gamma, double rel_tol, int max_depth = 48,
                              int max_panels = 20000);

// gamma = clamp(ceil(3/(eta+1)), 1, 64) for leading exponent eta at 0.
int power_substitution_order(double eta_plus_1);

// Fixed Gauss-Legendre rule on [-1, 1]; nodes/weights computed once by
// Newton iteration on the Legendre polynomial (no hand-typed tables).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights; // sum to 2
};
const GaussRule& gauss_rule(int npoints);

} // namespace sublin::quad
