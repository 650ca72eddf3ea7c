#pragma once

#include <string>

#include "pkdyn/family.hpp"

namespace pkdyn {

// Text format for family specs. Line oriented, '#' comments, layout:
//
//   pkdyn-family 1
//   name z2+c
//   k 1
//   d 2
//   m 1
//   component 0
//   monomial 2 0
//   coeff 0 1 0
//   monomial 0 2
//   coeff 1 1 0
//   component 1
//   monomial 0 2
//   coeff 0 1 0
//   domain
//   center 0 0
//   radii 0.2 0.35 0.5
//   mesh 9
//   end
//
// `monomial` carries the k+1 fiber exponents; each following `coeff` line
// carries the m lambda exponents and the re/im parts of one coefficient
// monomial. Floats are printed with %.17g so parse/serialize round-trips
// are bit-exact.
FamilySpec parse_family(const std::string& text);
FamilySpec load_family(const std::string& path);
std::string serialize_family(const FamilySpec& spec);
void save_family(const FamilySpec& spec, const std::string& path);

// Built-in families used across tests and docs.
FamilySpec family_power_map(int d);          // [z^d : w^d], constant in lambda
FamilySpec family_quadratic();               // [z^2 + c w^2 : w^2], c = lambda
FamilySpec family_quadratic_at(cplx center, double rU, double rV, double rW, int mesh);
FamilySpec family_product_squares();         // P^2: [z^2 : w^2 : t^2]

} // namespace pkdyn
