// SPDX-License-Identifier: Apache-2.0
#include "sublin/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace sublin::geom {
namespace {

// I_n(t0) = integral of cos^n(t) over [t0, pi/2]
double cos_power_integral(int n, double t0) {
    const double s = std::sin(t0);
    const double c = std::cos(t0);
    double even = M_PI / 2.0 - t0; // I_0
    double odd = 1.0 - s;          // I_1
    if (n == 0) return even;
    if (n == 1) return odd;
    double ck = c; // cos^{k-1}(t0) running power
    double val = 0.0;
    for (int k = 2; k <= n; ++k) {
        double& prev = (k % 2 == 0) ? even : odd;
        val = -ck * s / k + (k - 1.0) / k * prev;
        prev = val;
        ck *= c;
    }
    return val;
}

double cap_lens_volume(int n, double d, double rho, double r) {
    // partial overlap only: |rho - r| < d < rho + r
    const double a = (d * d + rho * rho - r * r) / (2.0 * d);
    const double cn1 = unit_ball_volume(n - 1);
    const double t_rho = std::asin(std::clamp(a / rho, -1.0, 1.0));
    const double t_r = std::asin(std::clamp((d - a) / r, -1.0, 1.0));
    return cn1 * (std::pow(rho, n) * cos_power_integral(n, t_rho) +
                  std::pow(r, n) * cos_power_integral(n, t_r));
}

} // namespace

double unit_ball_volume(int n) {
    if (n <= 0) return 1.0;
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

double ball_overlap_fraction(int n, double d, double rho, double r) {
    if (!(rho > 0.0) || !(r > 0.0)) return 0.0;
    d = std::fabs(d);
    if (d + rho <= r) return 1.0;
    if (d >= r + rho) return 0.0;
    if (d + r <= rho) return std::pow(r / rho, n);
    double frac;
    if (n == 1) {
        const double lo = std::max(-rho, d - r);
        const double hi = std::min(rho, d + r);
        frac = (hi - lo) / (2.0 * rho);
    } else if (n == 3) {
        const double s = rho + r - d;
        const double lens =
            M_PI * s * s * (d * d + 2.0 * d * (rho + r) - 3.0 * (rho - r) * (rho - r)) /
            (12.0 * d);
        frac = lens / (4.0 / 3.0 * M_PI * rho * rho * rho);
    } else {
        frac = cap_lens_volume(n, d, rho, r) / (unit_ball_volume(n) * std::pow(rho, n));
    }
    return std::clamp(frac, 0.0, 1.0);
}

} // namespace sublin::geom
