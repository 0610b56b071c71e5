// SPDX-License-Identifier: Apache-2.0
#include "sublin/simd/ops.hpp"

#if !defined(SUBLIN_NO_AVX2)

#include <cmath>
#include <immintrin.h>

namespace sublin::simd {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

double dot3_avx2(const double* x, const double* y, const double* z, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d t = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(t, _mm256_loadu_pd(z + i)));
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i] * y[i] * z[i];
    return r;
}

double max_abs_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_max_pd(acc, _mm256_and_pd(_mm256_loadu_pd(x + i), kAbsMask));
    double r = hmax(acc);
    for (; i < n; ++i) {
        double a = std::fabs(x[i]);
        if (a > r) r = a;
    }
    return r;
}

double max_abs_diff_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_max_pd(acc, _mm256_and_pd(d, kAbsMask));
    }
    double r = hmax(acc);
    for (; i < n; ++i) {
        double a = std::fabs(x[i] - y[i]);
        if (a > r) r = a;
    }
    return r;
}

void dist2_avx2(const double* pts, std::size_t n, const double* x, int dim, double* out) {
    {
        const __m256d x0 = _mm256_set1_pd(x[0]);
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pts + i), x0);
            _mm256_storeu_pd(out + i, _mm256_mul_pd(d, d));
        }
        for (; i < n; ++i) {
            double d = pts[i] - x[0];
            out[i] = d * d;
        }
    }
    for (int c = 1; c < dim; ++c) {
        const double* col = pts + static_cast<std::size_t>(c) * n;
        const __m256d xc = _mm256_set1_pd(x[c]);
        std::size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            __m256d d = _mm256_sub_pd(_mm256_loadu_pd(col + i), xc);
            __m256d o = _mm256_loadu_pd(out + i);
            _mm256_storeu_pd(out + i, _mm256_add_pd(o, _mm256_mul_pd(d, d)));
        }
        for (; i < n; ++i) {
            double d = col[i] - x[c];
            out[i] += d * d;
        }
    }
}

double pow_kernel_sum_avx2(const double* d2, const double* w, std::size_t n, double e) {
    const __m256d zero = _mm256_setzero_pd();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    if (e == -2.0) {
        for (; i + 4 <= n; i += 4) {
            __m256d wv = _mm256_loadu_pd(w + i);
            __m256d q = _mm256_div_pd(wv, _mm256_loadu_pd(d2 + i));
            // zero out lanes with w == 0 (their quotient may be 0/0 = NaN)
            __m256d mask = _mm256_cmp_pd(wv, zero, _CMP_NEQ_UQ);
            acc = _mm256_add_pd(acc, _mm256_and_pd(q, mask));
        }
        double r = hsum(acc);
        for (; i < n; ++i)
            if (w[i] != 0.0) r += w[i] / d2[i];
        return r;
    }
    if (e == -1.0) {
        for (; i + 4 <= n; i += 4) {
            __m256d wv = _mm256_loadu_pd(w + i);
            __m256d q = _mm256_div_pd(wv, _mm256_sqrt_pd(_mm256_loadu_pd(d2 + i)));
            __m256d mask = _mm256_cmp_pd(wv, zero, _CMP_NEQ_UQ);
            acc = _mm256_add_pd(acc, _mm256_and_pd(q, mask));
        }
        double r = hsum(acc);
        for (; i < n; ++i)
            if (w[i] != 0.0) r += w[i] / std::sqrt(d2[i]);
        return r;
    }
    // general exponent: pow has no AVX2 counterpart, same loop as scalar
    const double h = 0.5 * e;
    double r = 0.0;
    for (i = 0; i < n; ++i)
        if (w[i] != 0.0) r += w[i] * std::pow(d2[i], h);
    return r;
}

} // namespace

const Ops& avx2_ops() {
    static const Ops table{
        sum_avx2,     dot_avx2,   dot3_avx2,          max_abs_avx2,
        max_abs_diff_avx2, dist2_avx2, pow_kernel_sum_avx2,
    };
    return table;
}

} // namespace sublin::simd

#endif // !SUBLIN_NO_AVX2
