#pragma once

// Test-side oracles, independent of the library implementation paths they
// check: escape-rate Green's function for z^2+c, Mandelbrot interior
// sampling, Chebyshev closed forms, and escape-time boundary rendering.

#include <complex>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;

// Green's function G_c(z0) of the filled Julia set of z^2+c by the
// escape-rate (Boettcher) algorithm: lim 2^{-n} log|z_n|. Returns 0 for
// orbits that stay bounded within max_iter iterations.
double green_escape_rate(cplx c, cplx z0, int max_iter = 2000, double big = 1e150);

// Whether z^2+c has a bounded critical orbit within max_iter (escape radius
// 2 is exact for the Mandelbrot set).
bool mandelbrot_bounded(cplx c, int max_iter = 2000);

// Point inside the main cardioid: c = u/2 - u^2/4 for |u| < 1.
cplx cardioid_point(cplx u);

// Repelling fixed point beta(c) = (1 + sqrt(1-4c))/2 of z^2+c (principal
// branch; the branch cut only matters across [1/4, inf)).
cplx beta_fixed_point(cplx c);

// Period-dividing-n repelling point count on the Julia set of z -> z^2.
long power_map_count(int n); // 2^n - 1

// Chebyshev parameters: for z^2-2, J = [-2,2], invariant density
// 1/(pi sqrt(4-x^2)); periodic points are 2 cos(2 pi j / (2^n -+ 1)).
std::vector<double> chebyshev_periodic_points(int n);

// arcsine-law CDF on [-2, 2]
double arcsine_cdf(double x);

} // namespace oracles
