#pragma once

#include <Eigen/Dense>
#include <complex>

#include "pkdyn/rng.hpp"

namespace pkdyn {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Point of complex projective k-space, stored as a homogeneous lift in
// C^{k+1}. The canonical representative has Euclidean norm 1 and its first
// coordinate of modulus > 1e-12 rotated to the positive real axis, which
// makes projective-class comparisons bit-stable.
struct ProjPoint {
  CVec coords;

  ProjPoint() = default;
  explicit ProjPoint(CVec c) : coords(std::move(c)) {}

  int dim() const { return static_cast<int>(coords.size()) - 1; } // k
};

// Canonical representative. Throws std::invalid_argument on the all-zero lift.
ProjPoint normalize(const ProjPoint& p);

// Chordal metric |p ^ q| / (|p||q|), in [0, 1]. Zero iff equal in P^k.
double distance(const ProjPoint& p, const ProjPoint& q);

ProjPoint random_point(int k, Rng& rng);

// Holomorphic chart centered at a point x: psi(z) = [H (1, z)] where H is
// the Householder involution with H x_hat = alpha e_0. Unitary, so the
// chordal distortion on ball(0, R0) is exactly that of the standard affine
// chart at the origin.
class Chart {
public:
  Chart() = default;
  explicit Chart(const ProjPoint& center);

  const ProjPoint& center() const { return center_; }
  int k() const { return k_; }
  // Standard-affine patch this center sits in (argmax coordinate modulus).
  int patch_index() const { return patch_; }

  // H y (involution: also the inverse application).
  CVec apply_house(const CVec& y) const;

  // psi(z): homogeneous lift of the chart point, normalized.
  ProjPoint from_chart(const Eigen::VectorXcd& z) const;

  // psi^{-1}(y). Throws std::domain_error when y is outside the safe zone
  // (first Householder-rotated coordinate too small).
  Eigen::VectorXcd to_chart(const ProjPoint& y) const;

  // Lift of the chart map z -> alpha H (1, z), scaled so the origin lift
  // equals the canonical center representative bit for bit. Consumers of
  // (lift_origin, lift_jacobian) then compose exactly with evaluate().
  CVec lift_origin() const { return center_.coords; }
  // d/dz_j columns of the scaled lift: alpha H e_{j+1}.
  CMat lift_jacobian() const;

private:
  ProjPoint center_;
  CVec house_v_; // Householder vector; empty means H = I
  double house_vnorm2_ = 0.0;
  cplx alpha_{1.0, 0.0}; // H center = alpha e_0
  int k_ = 0;
  int patch_ = 0;
};

// D(to_chart_a o from_chart_b)(0); requires b's center inside a's safe zone.
CMat chart_transition(const Chart& a, const Chart& b);

// Atlas of Householder charts over the k+1 standard affine patches with a
// distortion constant tau measured by a sampling sweep. Published tau is
// twice the measured sup of |2 ln ratio|, so sampled pairs satisfy
//   e^{-tau/2} |z-z'| <= d(psi(z), psi(z')) <= e^{tau/2} |z-z'|
// with a 2x margin.
struct ChartAtlas {
  int k = 1;
  double chart_radius = 0.0; // R0
  double tau = 0.0;          // published distortion constant
  int patch_count = 0;       // k+1

  Chart chart_at(const ProjPoint& x) const;
};

// Builds the atlas for dimension k. R0 is chosen so the analytic distortion
// bound meets tau_target / 4 and the sweep then measures the actual value.
ChartAtlas make_atlas(int k, double tau_target = 0.05, std::uint64_t seed = 17,
                      int sweep_pairs = 10000);

} // namespace pkdyn
