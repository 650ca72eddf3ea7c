#include "pkdyn/roots.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pkdyn {

namespace {

constexpr double kCoeffFloor = 1e-13;
constexpr int kCompanionMax = 600;

double max_abs(const std::vector<cplx>& a) {
  double m = 0.0;
  for (const auto& c : a) m = std::max(m, std::abs(c));
  return m;
}

std::vector<cplx> companion_roots(const std::vector<cplx>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  CMat comp = CMat::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -a[i] / a[n];
  Eigen::ComplexEigenSolver<CMat> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("poly_roots: companion eigensolver failed");
  std::vector<cplx> r(n);
  for (int i = 0; i < n; ++i) r[i] = es.eigenvalues()[i];
  return r;
}

// Newton ratio p(z)/p'(z), evaluated through the reversed polynomial at 1/z
// when |z| > 1 so high degrees cannot overflow.
cplx newton_ratio(const std::vector<cplx>& a, const std::vector<cplx>& rev, cplx z) {
  const int n = static_cast<int>(a.size()) - 1;
  if (std::abs(z) <= 1.0) {
    cplx p, dp;
    horner(a, z, p, dp);
    if (std::abs(p) == 0.0) return 0.0;
    if (std::abs(dp) == 0.0) return cplx(1e-8, 0.0);
    return p / dp;
  }
  const cplx u = 1.0 / z;
  cplx q, dq;
  horner(rev, u, q, dq);
  // p(z) = z^n q(1/z); p'(z) = z^{n-1} (n q(u) - u q'(u))
  cplx denom = double(n) * q - u * dq;
  if (std::abs(q) == 0.0) return 0.0;
  if (std::abs(denom) == 0.0) return cplx(1e-8, 0.0);
  return z * q / denom;
}

std::vector<cplx> aberth_roots(const std::vector<cplx>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<cplx> rev(n + 1);
  for (int j = 0; j <= n; ++j) rev[n - j] = a[j];
  // Geometric-mean radius |a0/an|^(1/n) spreads starts over a circle with
  // an irrational-ish phase offset to dodge symmetric stalls.
  double r0 = std::abs(a[0]) > 0.0
                  ? std::pow(std::abs(a[0] / a[n]), 1.0 / n)
                  : 0.5;
  if (!(r0 > 1e-8) || !std::isfinite(r0)) r0 = 0.5;
  std::vector<cplx> z(n);
  for (int i = 0; i < n; ++i)
    z[i] = std::polar(r0 * (1.0 + 0.05 * std::cos(7.0 * i)),
                      2.0 * M_PI * (i + 0.35711) / n);
  std::vector<cplx> w(n);
  for (int it = 0; it < 300; ++it) {
    double max_step = 0.0;
    for (int i = 0; i < n; ++i) {
      cplx newton = newton_ratio(a, rev, z[i]);
      cplx s = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      cplx denom = 1.0 - newton * s;
      cplx step = std::abs(denom) > 1e-300 ? newton / denom : newton;
      double cap = 0.5 * (1.0 + std::abs(z[i]));
      if (!std::isfinite(std::abs(step))) step = cplx(cap, 0.0);
      if (std::abs(step) > cap) step *= cap / std::abs(step);
      w[i] = z[i] - step;
      max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    z.swap(w);
    if (max_step < 1e-14) break;
  }
  return z;
}

} // namespace

void horner(const std::vector<cplx>& a, cplx z, cplx& p, cplx& dp) {
  p = a.back();
  dp = 0.0;
  for (int j = static_cast<int>(a.size()) - 2; j >= 0; --j) {
    dp = dp * z + p;
    p = p * z + a[j];
  }
}

void quadratic_roots(cplx a, cplx b, cplx c, cplx& r0, cplx& r1) {
  if (std::abs(a) == 0.0) {
    if (std::abs(b) == 0.0) throw std::invalid_argument("quadratic_roots: degenerate");
    r0 = r1 = -c / b;
    return;
  }
  cplx sq = std::sqrt(b * b - 4.0 * a * c);
  // pick the sign that avoids cancellation
  cplx q = (std::real(std::conj(b) * sq) >= 0.0) ? -0.5 * (b + sq) : -0.5 * (b - sq);
  if (std::abs(q) == 0.0) {
    r0 = r1 = 0.0;
    if (std::abs(c) == 0.0) { r1 = -b / a; }
    return;
  }
  r0 = q / a;
  r1 = c / q;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& a_in) {
  const double scale = max_abs(a_in);
  if (!(scale > 0.0)) throw std::invalid_argument("poly_roots: zero polynomial");
  std::vector<cplx> a = a_in;
  for (auto& c : a) c /= scale;
  // effective degree
  int deg = static_cast<int>(a.size()) - 1;
  while (deg > 0 && std::abs(a[deg]) <= kCoeffFloor) --deg;
  a.resize(deg + 1);
  std::vector<cplx> roots;
  // roots at the origin
  int low = 0;
  while (low < deg && std::abs(a[low]) == 0.0) ++low;
  if (low > 0) {
    roots.assign(low, cplx(0.0, 0.0));
    a.erase(a.begin(), a.begin() + low);
    deg -= low;
  }
  if (deg == 0) return roots;
  std::vector<cplx> r;
  if (deg == 1) {
    r = {-a[0] / a[1]};
  } else if (deg == 2) {
    cplx r0, r1;
    quadratic_roots(a[2], a[1], a[0], r0, r1);
    r = {r0, r1};
  } else if (deg <= kCompanionMax) {
    r = companion_roots(a);
  } else {
    r = aberth_roots(a);
  }
  // Newton polish
  for (auto& z : r) {
    for (int it = 0; it < 4; ++it) {
      cplx p, dp;
      horner(a, z, p, dp);
      if (std::abs(dp) < 1e-300) break;
      cplx step = p / dp;
      if (!std::isfinite(std::abs(step))) break;
      z -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
  }
  roots.insert(roots.end(), r.begin(), r.end());
  return roots;
}

std::vector<ProjPoint> binary_form_roots(const std::vector<cplx>& a) {
  const int D = static_cast<int>(a.size()) - 1;
  const double scale = max_abs(a);
  if (!(scale > 0.0)) throw std::invalid_argument("binary_form_roots: zero form");
  int top = D;
  while (top >= 0 && std::abs(a[top]) <= kCoeffFloor * scale) --top;
  if (top < 0) throw std::invalid_argument("binary_form_roots: zero form after floor");
  std::vector<ProjPoint> out;
  out.reserve(D);
  for (int j = 0; j < D - top; ++j) {
    CVec c(2);
    c[0] = 1.0;
    c[1] = 0.0;
    out.emplace_back(normalize(ProjPoint(std::move(c)))); // root at infinity
  }
  if (top >= 1) {
    std::vector<cplx> dehom(a.begin(), a.begin() + top + 1);
    for (cplx z : poly_roots(dehom)) {
      CVec c(2);
      c[0] = z;
      c[1] = 1.0;
      out.push_back(polish_binary_root(a, normalize(ProjPoint(std::move(c)))));
    }
  }
  return out;
}

ProjPoint polish_binary_root(const std::vector<cplx>& a, const ProjPoint& root, int iters) {
  const int D = static_cast<int>(a.size()) - 1;
  ProjPoint p = normalize(root);
  const cplx z = p.coords[0], w = p.coords[1];
  if (std::abs(w) >= std::abs(z)) {
    // patch w = 1: p(t) = sum a_j t^j
    cplx t = z / w;
    for (int it = 0; it < iters; ++it) {
      cplx v, dv;
      horner(a, t, v, dv);
      if (std::abs(dv) < 1e-300) break;
      t -= v / dv;
    }
    CVec c(2);
    c[0] = t;
    c[1] = 1.0;
    return normalize(ProjPoint(std::move(c)));
  }
  // patch z = 1: q(u) = sum a_j u^(D-j) (reversed coefficients)
  std::vector<cplx> rev(D + 1);
  for (int j = 0; j <= D; ++j) rev[D - j] = a[j];
  cplx u = w / z;
  for (int it = 0; it < iters; ++it) {
    cplx v, dv;
    horner(rev, u, v, dv);
    if (std::abs(dv) < 1e-300) break;
    u -= v / dv;
  }
  CVec c(2);
  c[0] = 1.0;
  c[1] = u;
  return normalize(ProjPoint(std::move(c)));
}

} // namespace pkdyn
