// SPDX-License-Identifier: Apache-2.0
#include "sublin/simd/ops.hpp"

#include <cmath>

namespace sublin::simd {
namespace {

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double dot3_scalar(const double* x, const double* y, const double* z, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i] * z[i];
    return acc;
}

double max_abs_scalar(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = std::fabs(x[i]);
        if (a > m) m = a;
    }
    return m;
}

double max_abs_diff_scalar(const double* x, const double* y, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = std::fabs(x[i] - y[i]);
        if (a > m) m = a;
    }
    return m;
}

void dist2_scalar(const double* pts, std::size_t n, const double* x, int dim, double* out) {
    const double x0 = x[0];
    for (std::size_t i = 0; i < n; ++i) {
        double d = pts[i] - x0;
        out[i] = d * d;
    }
    for (int c = 1; c < dim; ++c) {
        const double* col = pts + static_cast<std::size_t>(c) * n;
        const double xc = x[c];
        for (std::size_t i = 0; i < n; ++i) {
            double d = col[i] - xc;
            out[i] += d * d;
        }
    }
}

double pow_kernel_sum_scalar(const double* d2, const double* w, std::size_t n, double e) {
    double acc = 0.0;
    if (e == -2.0) {
        for (std::size_t i = 0; i < n; ++i)
            if (w[i] != 0.0) acc += w[i] / d2[i];
    } else if (e == -1.0) {
        for (std::size_t i = 0; i < n; ++i)
            if (w[i] != 0.0) acc += w[i] / std::sqrt(d2[i]);
    } else {
        const double h = 0.5 * e;
        for (std::size_t i = 0; i < n; ++i)
            if (w[i] != 0.0) acc += w[i] * std::pow(d2[i], h);
    }
    return acc;
}

} // namespace

const Ops& scalar_ops() {
    static const Ops table{
        sum_scalar,     dot_scalar,   dot3_scalar,          max_abs_scalar,
        max_abs_diff_scalar, dist2_scalar, pow_kernel_sum_scalar,
    };
    return table;
}

} // namespace sublin::simd
