// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace sublin {

// Exponent/dimension tuple shared by every potential and criterion formula.
//
// Valid ranges: n >= 1, p > 1, 0 < q < p - 1 (sublinear growth), alpha > 0.
// alpha * p < n is deliberately not enforced here: the Wolff potential of a
// nontrivial measure is identically +inf when alpha >= n/p, and the
// evaluators return that value instead of erroring.
struct Params {
    int n = 3;
    double p = 2.0;
    double q = 0.5;
    double alpha = 1.0;

    void validate() const {
        if (n < 1) throw std::invalid_argument("params: n must be >= 1");
        if (!(p > 1.0)) throw std::invalid_argument("params: p must be > 1");
        if (!(q > 0.0) || !(q < p - 1.0))
            throw std::invalid_argument("params: q must lie in (0, p-1)");
        if (!(alpha > 0.0)) throw std::invalid_argument("params: alpha must be > 0");
    }

    // Tail exponent of the Wolff integrand: beta = (n - alpha*p)/(p - 1).
    double beta() const { return (n - alpha * p) / (p - 1.0); }
};

} // namespace sublin
