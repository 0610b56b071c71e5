// SPDX-License-Identifier: Apache-2.0
#include "sublin/simd/ops.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace sublin::simd {
namespace {

std::atomic<int> g_forced{-1}; // -1 = auto

Backend detect() {
    const char* env = std::getenv("SUBLIN_SIMD");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return Backend::avx2;
    }
    return avx2_available() ? Backend::avx2 : Backend::scalar;
}

} // namespace

bool avx2_available() {
#if !defined(SUBLIN_NO_AVX2) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Backend active_backend() {
    int f = g_forced.load(std::memory_order_relaxed);
    if (f >= 0) return static_cast<Backend>(f);
    static const Backend detected = detect();
    return detected;
}

void force_backend(Backend b) {
    if (b == Backend::avx2 && !avx2_available()) b = Backend::scalar;
    g_forced.store(static_cast<int>(b), std::memory_order_relaxed);
}

void use_auto_backend() { g_forced.store(-1, std::memory_order_relaxed); }

std::string_view backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

const Ops& ops() {
#if !defined(SUBLIN_NO_AVX2)
    if (active_backend() == Backend::avx2) return avx2_ops();
#endif
    return scalar_ops();
}

} // namespace sublin::simd
