#include "pkdyn/proj_geom.hpp"

#include <cmath>
#include <stdexcept>

namespace pkdyn {

namespace {
constexpr double kZeroCoord = 1e-12;
constexpr double kSafeZone = 0.05; // |w_0| / |w| cutoff for to_chart
} // namespace

ProjPoint normalize(const ProjPoint& p) {
  const double nrm = p.coords.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw std::invalid_argument("normalize: zero or non-finite homogeneous lift");
  CVec c = p.coords;
  if (std::abs(nrm - 1.0) > 4e-16) c /= nrm;
  Eigen::Index pivot = -1;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (std::abs(c[i]) > kZeroCoord) { pivot = i; break; }
  }
  if (pivot < 0) throw std::invalid_argument("normalize: no coordinate above zero threshold");
  const cplx piv = c[pivot];
  if (!(piv.imag() == 0.0 && piv.real() > 0.0)) {
    const cplx phase = std::conj(piv) / std::abs(piv);
    c *= phase;
    c[pivot] = cplx(std::abs(c[pivot]), 0.0);
  }
  return ProjPoint(std::move(c));
}

double distance(const ProjPoint& p, const ProjPoint& q) {
  CVec a = p.coords, b = q.coords;
  const double na = a.norm(), nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0))
    throw std::invalid_argument("distance: zero homogeneous lift");
  a /= na;
  b /= nb;
  const cplx inner = a.dot(b); // conj(a)^T b
  // Residual of b against the line through a: |b - a<a,b>| = sin(angle),
  // numerically stable for nearly equal points.
  CVec r = b - a * inner;
  double d = r.norm();
  return d > 1.0 ? 1.0 : d;
}

ProjPoint random_point(int k, Rng& rng) {
  CVec c(k + 1);
  for (int i = 0; i <= k; ++i) c[i] = cplx(rng.normal(), rng.normal());
  return normalize(ProjPoint(std::move(c)));
}

Chart::Chart(const ProjPoint& center) {
  center_ = normalize(center);
  k_ = center_.dim();
  const CVec& x = center_.coords;
  int best = 0;
  for (int i = 1; i <= k_; ++i)
    if (std::abs(x[i]) > std::abs(x[best])) best = i;
  patch_ = best;

  // Householder H with H x = alpha e_0; alpha opposite in phase to x_0 so
  // the reflector never degenerates (|v|^2 = 2 + 2|x_0| >= 2).
  alpha_ = (std::abs(x[0]) > 0.0) ? -x[0] / std::abs(x[0]) : cplx(-1.0, 0.0);
  CVec v = x;
  v[0] -= alpha_;
  house_vnorm2_ = v.squaredNorm();
  house_v_ = std::move(v);
}

CVec Chart::apply_house(const CVec& y) const {
  if (house_vnorm2_ == 0.0) return y;
  const cplx s = house_v_.dot(y); // conj(v)^T y
  return y - house_v_ * (2.0 * s / house_vnorm2_);
}

ProjPoint Chart::from_chart(const Eigen::VectorXcd& z) const {
  CVec a(k_ + 1);
  a[0] = 1.0;
  for (int j = 0; j < k_; ++j) a[j + 1] = z[j];
  return normalize(ProjPoint(apply_house(a)));
}

Eigen::VectorXcd Chart::to_chart(const ProjPoint& y) const {
  CVec w = apply_house(y.coords);
  const double wn = w.norm();
  if (!(wn > 0.0)) throw std::invalid_argument("to_chart: zero lift");
  if (std::abs(w[0]) < kSafeZone * wn)
    throw std::domain_error("to_chart: point outside the chart safe zone");
  Eigen::VectorXcd z(k_);
  for (int j = 0; j < k_; ++j) z[j] = w[j + 1] / w[0];
  return z;
}

CMat Chart::lift_jacobian() const {
  CMat cols(k_ + 1, k_);
  CVec e = CVec::Zero(k_ + 1);
  for (int j = 0; j < k_; ++j) {
    e.setZero();
    e[j + 1] = 1.0;
    cols.col(j) = apply_house(e) * alpha_;
  }
  return cols;
}

CMat chart_transition(const Chart& a, const Chart& b) {
  const int k = a.k();
  CVec w = a.apply_house(b.lift_origin());
  if (std::abs(w[0]) < kSafeZone * w.norm())
    throw std::domain_error("chart_transition: centers too far apart");
  CMat W = CMat(k + 1, k);
  CMat bj = b.lift_jacobian();
  for (int j = 0; j < k; ++j) W.col(j) = a.apply_house(bj.col(j));
  CMat t(k, k);
  const cplx w0 = w[0];
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      t(i, j) = (W(i + 1, j) * w0 - w[i + 1] * W(0, j)) / (w0 * w0);
  return t;
}

Chart ChartAtlas::chart_at(const ProjPoint& x) const { return Chart(x); }

ChartAtlas make_atlas(int k, double tau_target, std::uint64_t seed, int sweep_pairs) {
  if (k < 1) throw std::invalid_argument("make_atlas: k must be >= 1");
  ChartAtlas atlas;
  atlas.k = k;
  atlas.patch_count = k + 1;
  // Analytic distortion of the affine chart: |ln ratio| <= ln(1 + R0^2).
  // Pick R0 so that twice the measured value stays within tau_target.
  atlas.chart_radius = std::sqrt(std::exp(tau_target / 4.0) - 1.0);

  Rng rng(seed);
  double max_abs_log = 0.0;
  for (int s = 0; s < sweep_pairs; ++s) {
    ProjPoint c = random_point(k, rng);
    Chart chart(c);
    Eigen::VectorXcd z(k), zp(k);
    for (int j = 0; j < k; ++j) {
      // uniform in the ball of radius R0 (per-coordinate disk then rescale)
      double r = atlas.chart_radius * std::sqrt(rng.uniform());
      double th = rng.uniform(0.0, 2.0 * M_PI);
      z[j] = std::polar(r / std::sqrt(double(k)), th);
      r = atlas.chart_radius * std::sqrt(rng.uniform());
      th = rng.uniform(0.0, 2.0 * M_PI);
      zp[j] = std::polar(r / std::sqrt(double(k)), th);
    }
    const double dz = (z - zp).norm();
    if (dz < 1e-9) continue;
    const double dp = distance(chart.from_chart(z), chart.from_chart(zp));
    max_abs_log = std::max(max_abs_log, std::abs(std::log(dp / dz)));
  }
  atlas.tau = 4.0 * max_abs_log; // 2x safety margin over the measured sup
  if (atlas.tau <= 0.0) atlas.tau = tau_target;
  return atlas;
}

} // namespace pkdyn
