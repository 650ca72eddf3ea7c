#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracles {

double green_escape_rate(cplx c, cplx z0, int max_iter, double big) {
  cplx z = z0;
  double scale = 1.0;
  for (int n = 0; n < max_iter; ++n) {
    double az = std::abs(z);
    if (az > big) return scale * std::log(az); // tail correction below resolution
    if (n > 60 && az > 1e8) {
      // G(z) = log|z| + sum 2^{-k-1} log|1 + c/z_k^2|; the tail is < 1e-15 here
      return scale * std::log(az);
    }
    z = z * z + c;
    scale *= 0.5;
  }
  return 0.0;
}

bool mandelbrot_bounded(cplx c, int max_iter) {
  cplx z = 0.0;
  for (int n = 0; n < max_iter; ++n) {
    z = z * z + c;
    if (std::norm(z) > 4.0) return false;
  }
  return true;
}

cplx cardioid_point(cplx u) { return u / 2.0 - u * u / 4.0; }

cplx beta_fixed_point(cplx c) { return (1.0 + std::sqrt(cplx(1.0, 0.0) - 4.0 * c)) / 2.0; }

long power_map_count(int n) { return (1L << n) - 1; }

std::vector<double> chebyshev_periodic_points(int n) {
  // Doubling on the circle semiconjugates to z^2-2 via z = 2 cos(theta):
  // fixed points of the n-th iterate have theta = 2 pi j / (2^n - 1) or
  // theta = 2 pi j / (2^n + 1). cos identifies theta with -theta, leaving
  // exactly 2^n distinct points.
  std::vector<double> pts;
  long long dm = (1LL << n) - 1, dp = (1LL << n) + 1;
  for (long long j = 0; j < dm; ++j) pts.push_back(2.0 * std::cos(2.0 * M_PI * double(j) / double(dm)));
  for (long long j = 0; j < dp; ++j) pts.push_back(2.0 * std::cos(2.0 * M_PI * double(j) / double(dp)));
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double v : pts)
    if (out.empty() || v - out.back() > 1e-9) out.push_back(v);
  return out;
}

double arcsine_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + std::asin(x / 2.0) / M_PI;
}

} // namespace oracles
