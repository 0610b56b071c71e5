// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops shared by the potential evaluators, the Picard
// solver and the kernel diagnostics. Every operation has a scalar reference
// implementation; on x86-64 an AVX2 variant is selected at runtime when the
// CPU supports it (override with SUBLIN_SIMD=scalar|avx2 or force_backend).
//
// Contract checked by the equivalence test suite: vector variants match the
// scalar reference to ~1e-13 relative for reductions (partial sums are
// reassociated) and element-exactly for the sqrt/div fast paths.

namespace sublin::simd {

enum class Backend { scalar, avx2 };

struct Ops {
    // sum_i x[i]
    double (*sum)(const double* x, std::size_t n);
    // sum_i x[i]*y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // sum_i x[i]*y[i]*z[i]
    double (*dot3)(const double* x, const double* y, const double* z, std::size_t n);
    // max_i |x[i]|, 0 for empty input
    double (*max_abs)(const double* x, std::size_t n);
    // max_i |x[i]-y[i]|, 0 for empty input
    double (*max_abs_diff)(const double* x, const double* y, std::size_t n);
    // out[i] = squared distance from x (dim coordinates) to point i of the
    // coordinate-major table pts (pts[c*n + i] is coordinate c of point i)
    void (*dist2)(const double* pts, std::size_t n, const double* x, int dim, double* out);
    // sum_i w[i] * d2[i]^(e/2); entries with w[i] == 0 are skipped so that a
    // zero distance cannot poison the sum with 0*inf. e = -1 and e = -2 are
    // the vectorized fast paths; other exponents go through scalar pow.
    double (*pow_kernel_sum)(const double* d2, const double* w, std::size_t n, double e);
};

const Ops& scalar_ops();
#if !defined(SUBLIN_NO_AVX2)
const Ops& avx2_ops();
#endif

bool avx2_available();
Backend active_backend();
void force_backend(Backend b); // tests/tools; use_auto_backend() restores detection
void use_auto_backend();
std::string_view backend_name(Backend b);

// Active op table (honors forced backend, SUBLIN_SIMD, then CPU detection).
const Ops& ops();

} // namespace sublin::simd
