// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace sublin::geom {

double unit_ball_volume(int n);
double unit_sphere_area(int n); // surface measure of S^{n-1} in R^n

// Fraction (in [0,1]) of the uniform ball B(y, rho) that lies inside the ball
// B(x, r), as a function of the center distance d = |x - y|. Closed forms:
// interval overlap for n = 1, the sphere-sphere lens for n = 3, and a
// spherical-cap reduction (cosine-power recurrence) for every other n.
double ball_overlap_fraction(int n, double d, double rho, double r);

} // namespace sublin::geom
