#pragma once

#include <vector>

#include "pkdyn/proj_geom.hpp"

namespace pkdyn {

// Roots of sum_j a[j] z^j. Degree is taken from the highest coefficient
// above a relative floor; lower-degree input returns fewer roots.
// Companion matrix for moderate degree, Aberth-Ehrlich beyond, Newton
// polish on the Horner form in both cases.
std::vector<cplx> poly_roots(const std::vector<cplx>& a);

// All D roots on P^1 of the binary form sum_j a[j] z^j w^{D-j}, counted
// with multiplicity; vanishing top coefficients give roots at [1:0].
std::vector<ProjPoint> binary_form_roots(const std::vector<cplx>& a);

// Stable quadratic a z^2 + b z + c = 0.
void quadratic_roots(cplx a, cplx b, cplx c, cplx& r0, cplx& r1);

// p(z) and p'(z) by Horner.
void horner(const std::vector<cplx>& a, cplx z, cplx& p, cplx& dp);

// One complex point per root of the form, polished by Newton in whichever
// affine patch conditions the root better. Returns the polished point.
ProjPoint polish_binary_root(const std::vector<cplx>& a, const ProjPoint& root,
                             int iters = 4);

} // namespace pkdyn
