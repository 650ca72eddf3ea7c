#pragma once

#include "pkdyn/family.hpp"

namespace pkdyn {

// One-step preimage fiber f_lambda^{-1}(q), counted with multiplicity
// (d^k points when every path resolves).
struct PreimageResult {
  std::vector<ProjPoint> points;
  int expected = 0; // d^k
  int failures = 0; // unresolved homotopy paths (k = 2 only)
};

// k = 1: roots of the degree-d binary form F(x) ^ q; exact and fast.
// k = 2: gamma-trick total-degree homotopy from a generic start system,
// tracked projectively in Householder charts, Newton endgame.
PreimageResult preimages(const FiberMap& f, const ProjPoint& q, std::uint64_t seed = 2);

// |F(x) ^ q| relative residual used to verify preimage candidates.
double preimage_residual(const FiberMap& f, const ProjPoint& x, const ProjPoint& q);

// Solves two homogeneous degree-d forms on P^2 (Bezout d^2 paths); the
// common machinery behind k = 2 preimages and the endomorphism probe.
// eval(x) returns the two values, jac(x) the 2 x 3 partial matrix.
struct TwoFormSystem {
  int degree;
  std::function<Eigen::Vector2cd(const CVec&)> eval;
  std::function<Eigen::Matrix<cplx, 2, 3>(const CVec&)> jac;
};
struct TwoFormSolution {
  std::vector<ProjPoint> points;
  int failures = 0;
};
TwoFormSolution solve_two_forms(const TwoFormSystem& target, std::uint64_t seed);

// Thorough k = 2 endomorphism probe: common zeros of (f_0, f_1) evaluated
// against f_2. min_f2 is the smallest normalized |f_2| over those zeros;
// values near zero mean a genuine common zero of all three components.
struct CommonZeroProbe {
  bool ok = true;
  double min_f2 = 1.0;
  std::vector<ProjPoint> suspicious;
  int failures = 0;
};
CommonZeroProbe probe_common_zeros(const FamilySpec& spec, const CVec& lambda,
                                   std::uint64_t seed = 5);

} // namespace pkdyn
