#include "doctest.h"
#include "pkdyn/proj_geom.hpp"

#include <cmath>

using namespace pkdyn;

namespace {
ProjPoint pt2(cplx a, cplx b) {
  CVec c(2);
  c[0] = a;
  c[1] = b;
  return ProjPoint(std::move(c));
}
ProjPoint pt3(cplx a, cplx b, cplx c) {
  CVec v(3);
  v[0] = a;
  v[1] = b;
  v[2] = c;
  return ProjPoint(std::move(v));
}
} // namespace

TEST_CASE("normalize canonical representatives") {
  ProjPoint p = normalize(pt2(2.0, 0.0));
  CHECK(std::abs(p.coords[0] - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(p.coords[1]) < 1e-15);

  // phase fixed to positive real part
  p = normalize(pt2(0.0, cplx(0.0, 3.0)));
  CHECK(std::abs(p.coords[0]) < 1e-15);
  CHECK(std::abs(p.coords[1] - cplx(1.0, 0.0)) < 1e-15);

  p = normalize(pt3(1.0, 1.0, 1.0));
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(p.coords[i] - cplx(1.0 / std::sqrt(3.0), 0.0)) < 1e-15);

  CHECK_THROWS_AS(normalize(pt2(0.0, 0.0)), std::invalid_argument);
}

TEST_CASE("normalize is idempotent and projectively invariant") {
  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    int k = 1 + (t % 2);
    ProjPoint p = random_point(k, rng);
    ProjPoint pp = normalize(p);
    CHECK((pp.coords - normalize(pp).coords).norm() == 0.0); // bit-stable
    cplx c(rng.normal(), rng.normal());
    if (std::abs(c) < 1e-3) continue;
    ProjPoint q(p.coords * c);
    CHECK(distance(normalize(q), pp) < 1e-13);
  }
}

TEST_CASE("chordal distance values") {
  CHECK(distance(pt2(1, 0), pt2(0, 1)) == doctest::Approx(1.0).epsilon(1e-14));
  ProjPoint p = normalize(pt2(cplx(0.3, 0.7), cplx(-1.1, 0.2)));
  CHECK(distance(p, p) < 1e-15);
  CHECK(distance(pt2(2, 1), pt2(1, 1)) == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("distance triangle inequality on random triples") {
  Rng rng(7);
  for (int t = 0; t < 2000; ++t) {
    int k = 1 + (t % 2);
    ProjPoint a = random_point(k, rng), b = random_point(k, rng), c = random_point(k, rng);
    double ab = distance(a, b), bc = distance(b, c), ac = distance(a, c);
    CHECK(ac <= ab + bc + 1e-12);
    CHECK(std::abs(ab - distance(b, a)) < 1e-14);
  }
}

TEST_CASE("charts center, round-trip and distortion") {
  for (int k : {1, 2}) {
    ChartAtlas atlas = make_atlas(k);
    CHECK(atlas.patch_count == k + 1);
    CHECK(atlas.tau <= 0.05 + 1e-12);
    CHECK(atlas.chart_radius > 0.05);

    Rng rng(101 + k);
    ProjPoint x = random_point(k, rng);
    Chart chart = atlas.chart_at(x);
    CHECK(chart.to_chart(x).norm() < 1e-14);
    CHECK(chart.patch_index() >= 0);
    CHECK(chart.patch_index() <= k);

    // round-trip y -> to_chart -> from_chart -> y for y near x
    for (int t = 0; t < 200; ++t) {
      ProjPoint c = random_point(k, rng);
      Chart ch(c);
      Eigen::VectorXcd z(k);
      for (int j = 0; j < k; ++j)
        z[j] = std::polar(atlas.chart_radius * 0.45 * std::sqrt(rng.uniform()) / std::sqrt(double(k)),
                          rng.uniform(0.0, 2 * M_PI));
      ProjPoint y = ch.from_chart(z);
      CHECK(distance(y, c) < atlas.chart_radius);
      Eigen::VectorXcd z2 = ch.to_chart(y);
      CHECK((z - z2).norm() < 1e-12);
    }

    // measured Lipschitz ratio within the published bounds over 1e4 pairs
    double lo = std::exp(-atlas.tau / 2.0), hi = std::exp(atlas.tau / 2.0);
    for (int t = 0; t < 10000; ++t) {
      ProjPoint c = random_point(k, rng);
      Chart ch(c);
      Eigen::VectorXcd z(k), zp(k);
      for (int j = 0; j < k; ++j) {
        z[j] = std::polar(atlas.chart_radius * std::sqrt(rng.uniform()) / std::sqrt(double(k)),
                          rng.uniform(0.0, 2 * M_PI));
        zp[j] = std::polar(atlas.chart_radius * std::sqrt(rng.uniform()) / std::sqrt(double(k)),
                           rng.uniform(0.0, 2 * M_PI));
      }
      double dz = (z - zp).norm();
      if (dz < 1e-9) continue;
      double ratio = distance(ch.from_chart(z), ch.from_chart(zp)) / dz;
      CHECK(ratio >= lo - 1e-12);
      CHECK(ratio <= hi + 1e-12);
    }
  }
}

TEST_CASE("chart transition matches finite differences") {
  Rng rng(55);
  for (int k : {1, 2}) {
    for (int t = 0; t < 20; ++t) {
      ProjPoint a = random_point(k, rng);
      Chart ca(a);
      Eigen::VectorXcd z(k);
      for (int j = 0; j < k; ++j) z[j] = 0.02 * cplx(rng.normal(), rng.normal());
      Chart cb(ca.from_chart(z));
      CMat tr = chart_transition(ca, cb);
      const double h = 1e-6;
      for (int j = 0; j < k; ++j) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(k);
        e[j] = h;
        Eigen::VectorXcd fplus = ca.to_chart(cb.from_chart(e));
        Eigen::VectorXcd fminus = ca.to_chart(cb.from_chart(-e));
        Eigen::VectorXcd fd = (fplus - fminus) / (2.0 * h);
        CHECK((fd - tr.col(j)).norm() < 1e-6 * (1.0 + tr.col(j).norm()));
      }
    }
  }
}
