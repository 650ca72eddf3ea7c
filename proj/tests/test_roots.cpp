#include "doctest.h"
#include "pkdyn/roots.hpp"

#include <algorithm>
#include <cmath>

using namespace pkdyn;

namespace {
// sorts by argument for matching against known root sets on circles
void sort_by_arg(std::vector<cplx>& v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
}
} // namespace

TEST_CASE("quadratic roots with cancellation") {
  cplx r0, r1;
  quadratic_roots(1.0, 1e8, 1.0, r0, r1);
  double big = std::max(std::abs(r0), std::abs(r1));
  double small = std::min(std::abs(r0), std::abs(r1));
  CHECK(big == doctest::Approx(1e8).epsilon(1e-10));
  CHECK(small == doctest::Approx(1e-8).epsilon(1e-10));
}

TEST_CASE("roots of z^7 - 1 via companion") {
  std::vector<cplx> a(8, cplx(0, 0));
  a[0] = -1.0;
  a[7] = 1.0;
  auto r = poly_roots(a);
  REQUIRE(r.size() == 7);
  sort_by_arg(r);
  std::vector<cplx> expect;
  for (int j = -3; j <= 3; ++j) expect.push_back(std::polar(1.0, 2 * M_PI * j / 7.0));
  sort_by_arg(expect);
  for (int j = 0; j < 7; ++j) CHECK(std::abs(r[j] - expect[j]) < 1e-12);
}

TEST_CASE("high degree roots via Aberth") {
  const int n = 700;
  std::vector<cplx> a(n + 1, cplx(0, 0));
  a[0] = -1.0;
  a[n] = 1.0;
  auto r = poly_roots(a);
  REQUIRE(r.size() == static_cast<std::size_t>(n));
  for (const auto& z : r) {
    CHECK(std::abs(std::abs(z) - 1.0) < 1e-10);
    cplx p, dp;
    horner(a, z, p, dp);
    CHECK(std::abs(p) < 1e-9);
  }
  // all distinct
  std::vector<cplx> s = r;
  sort_by_arg(s);
  for (int j = 1; j < n; ++j) CHECK(std::abs(s[j] - s[j - 1]) > 1e-4);
}

TEST_CASE("binary form roots include infinity and zero") {
  // z w^2 - w z^2 = fixed-point form of z -> z^2: roots 0, 1, infinity
  std::vector<cplx> a = {cplx(0, 0), cplx(1, 0), cplx(-1, 0), cplx(0, 0)};
  auto roots = binary_form_roots(a);
  REQUIRE(roots.size() == 3);
  int n_inf = 0, n_zero = 0, n_one = 0;
  CVec inf(2), zero(2), one(2);
  inf << 1, 0;
  zero << 0, 1;
  one << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  for (const auto& p : roots) {
    if (distance(p, ProjPoint(inf)) < 1e-12) ++n_inf;
    if (distance(p, ProjPoint(zero)) < 1e-12) ++n_zero;
    if (distance(p, ProjPoint(one)) < 1e-12) ++n_one;
  }
  CHECK(n_inf == 1);
  CHECK(n_zero == 1);
  CHECK(n_one == 1);
}

TEST_CASE("poly_roots handles repeated origin roots") {
  // z^3 (z - 2)
  std::vector<cplx> a = {0, 0, 0, -2, 1};
  auto r = poly_roots(a);
  REQUIRE(r.size() == 4);
  int zeros = 0;
  for (auto z : r)
    if (std::abs(z) < 1e-14) ++zeros;
  CHECK(zeros == 3);
}
