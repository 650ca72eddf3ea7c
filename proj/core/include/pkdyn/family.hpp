#pragma once

#include <array>
#include <string>
#include <vector>

#include "pkdyn/proj_geom.hpp"

namespace pkdyn {

// Polynomial in the parameter lambda in C^m.
struct LambdaPoly {
  struct Term {
    std::vector<int> expo; // size m
    cplx coeff;
  };
  std::vector<Term> terms;

  cplx eval(const CVec& lambda) const;
  bool constant() const;
};

LambdaPoly lp_const(cplx value, int m);
LambdaPoly lp_mul(const LambdaPoly& a, const LambdaPoly& b);
LambdaPoly lp_add(const LambdaPoly& a, const LambdaPoly& b);
LambdaPoly lp_scale(const LambdaPoly& a, cplx s);

// Homogeneous fiber polynomial: sum of monomials in the k+1 fiber
// variables, each with a LambdaPoly coefficient.
struct FiberPoly {
  struct Term {
    std::vector<int> expo; // size k+1
    LambdaPoly coeff;
  };
  std::vector<Term> terms;

  int degree() const; // max total degree of the fiber exponents
};

// Nested polydisks U0 c V0 c W0 around the base parameter plus the mesh
// resolution used to discretize the closed U0-polydisk.
struct DomainSpec {
  CVec center;          // lambda_0 in C^m
  double r_U = 0.1;
  double r_V = 0.2;
  double r_W = 0.4;
  int mesh_per_axis = 9;

  int m() const { return static_cast<int>(center.size()); }
  bool in_U0(const CVec& lambda) const;
  bool in_V0(const CVec& lambda) const;
  bool in_W0(const CVec& lambda) const;
};

// Regular grid covering the closed U0-polydisk (or a sub-polydisk). For
// m parameters the grid has (2m) real axes with `per_axis` nodes each;
// nodes outside the polydisk are kept but flagged.
struct MeshGrid {
  CVec center;
  double radius = 0.0;
  int m = 1;
  int per_axis = 3;
  std::vector<CVec> nodes;
  std::vector<bool> inside; // |lambda_i - center_i| <= radius for all i

  std::size_t size() const { return nodes.size(); }
  // grid neighbors (one step along one real axis)
  std::vector<std::size_t> neighbors(std::size_t idx) const;
  std::size_t nearest(const CVec& lambda) const;

private:
  friend MeshGrid make_mesh(const CVec&, double, int);
  std::vector<int> dims_; // per real-axis extent, size 2m
  std::vector<int> unrank(std::size_t idx) const;
  std::size_t rank(const std::vector<int>& c) const;
};

MeshGrid make_mesh(const CVec& center, double radius, int per_axis);

// Degree-d holomorphic family f(lambda, z) = (lambda, f_lambda(z)) on P^k
// with coefficients polynomial in lambda.
struct FamilySpec {
  int k = 1;
  int d = 2;
  int m = 1;
  std::vector<FiberPoly> components; // k+1 entries, homogeneous of degree d
  DomainSpec domain;
  std::string name;

  void check_shape() const; // throws on malformed data
};

// Family compiled at a fixed parameter: numeric fiber polynomials plus all
// first partials, ready for high-throughput evaluation.
class FiberMap {
public:
  FiberMap() = default;
  FiberMap(const FamilySpec& spec, const CVec& lambda);

  int k() const { return k_; }
  int d() const { return d_; }
  const CVec& lambda() const { return lambda_; }

  CVec eval_raw(const CVec& x) const;  // F~(x), no normalization
  CMat hom_jacobian(const CVec& x) const; // (k+1)x(k+1) partials
  // coefficients of component i as a binary form in (z, w); k == 1 only
  std::vector<cplx> binary_coeffs(int i) const;

private:
  struct NumTerm {
    std::array<int, 3> expo;
    cplx coeff;
  };
  using NumPoly = std::vector<NumTerm>;
  cplx eval_poly(const NumPoly& p, const CVec& x) const;

  int k_ = 1, d_ = 2;
  CVec lambda_;
  std::vector<NumPoly> comps_;
  std::vector<std::vector<NumPoly>> partials_;
};

// Chart Jacobian of one application of f_lambda at p.
struct JacobianSample {
  ProjPoint point;
  ProjPoint image;
  CVec lambda;
  CMat df;      // k x k chart Jacobian D(psi_q^{-1} o f o psi_p)(0)
  cplx det;
  double delta; // smallest singular value = 1 / |df^{-1}|
};

// f_lambda(p) followed by normalize. Throws when the image lift collapses
// (parameter outside the endomorphism locus).
ProjPoint evaluate(const FiberMap& f, const ProjPoint& p);
ProjPoint evaluate(const FamilySpec& spec, const CVec& lambda, const ProjPoint& p);

JacobianSample jacobian_chart(const FiberMap& f, const ProjPoint& p);
JacobianSample jacobian_chart(const FamilySpec& spec, const CVec& lambda, const ProjPoint& p);

// Forward orbit p, f(p), ..., f^n(p) with shared normalized representatives.
std::vector<ProjPoint> forward_orbit(const FiberMap& f, const ProjPoint& p, int n);

// Ordered product of the one-step chart Jacobians along consecutive orbit
// points: D(chart conjugate of f^n)(0). pts must satisfy pts[j+1] = f(pts[j]).
CMat orbit_jacobian(const FiberMap& f, const std::vector<ProjPoint>& pts);

// Same matrix by the alternative route: homogeneous Jacobian chain rule for
// the full iterate with chart corrections only at the two endpoints. Agrees
// with orbit_jacobian to roundoff; the two paths cross-check eq-level
// cocycle identities in the tests.
CMat iterate_jacobian_chart(const FiberMap& f, const ProjPoint& p, int n);

// det of the chart Jacobian at p plus the homogeneous (k+1)x(k+1) Jacobian
// determinant (zero set = lift of the critical set).
struct CriticalDet {
  cplx chart_det;
  cplx hom_det;
};
CriticalDet critical_det(const FiberMap& f, const ProjPoint& p);

// Symbolic determinant of the homogeneous Jacobian as a fiber polynomial
// (degree (k+1)(d-1)); used for sampling the critical set.
FiberPoly hom_jacobian_det(const FamilySpec& spec);

// Critical points of f_lambda for k = 1 (roots of the Jacobian form).
std::vector<ProjPoint> critical_points_k1(const FamilySpec& spec, const CVec& lambda);

// Sampled critical set: exact roots for k = 1, random-line sections of the
// critical curve for k = 2 (about `budget` points).
std::vector<ProjPoint> sample_critical_set(const FamilySpec& spec, const CVec& lambda,
                                           int budget = 1000, std::uint64_t seed = 11);

struct ValidationReport {
  bool shape_ok = true;
  bool homogeneous_ok = true;
  std::vector<std::string> issues;
  struct FailingParam {
    CVec lambda;
    double score; // normalized resultant-style score, small = degenerate
  };
  std::vector<FailingParam> failing;

  bool ok() const { return shape_ok && homogeneous_ok && failing.empty(); }
};

// Homogeneity check per component plus a numeric common-zero probe at the
// mesh parameters (k=1: Sylvester resultant of the two components; k=2:
// pairwise resultants restricted to random lines, which detects
// positive-dimensional degeneracies; the finite-common-zero probe lives in
// preimage.hpp).
ValidationReport validate_family(const FamilySpec& spec, int mesh_override = 0,
                                 std::uint64_t seed = 23);

// Normalized Sylvester resultant of two dense univariate polynomials.
double resultant_score(const std::vector<cplx>& p, const std::vector<cplx>& q);

} // namespace pkdyn
