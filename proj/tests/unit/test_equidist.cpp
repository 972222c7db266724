#include "helpers.hpp"

#include "recip/equidist.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace recip;
using namespace th;

TEST_CASE("reduce_fd") {
  const auto r = reduce_fd(P(Q(7), Q(1)));
  CHECK(r.point == I());
  CHECK(r.gamma == power(T(), -7));

  const Point<Q> p = P(Q(1, 2), Q(1, 10));
  const auto s = reduce_fd(p);
  CHECK(s.point.x() * s.point.x() + s.point.y() * s.point.y() >= 1);
  CHECK(abs_value(s.point.x()) <= Q(1, 2));
  CHECK(apply(s.gamma, p) == s.point);

  const Point<Q> inside = P(Q(1, 3), Q(2));
  const auto t = reduce_fd(inside);
  CHECK(t.point == inside);
  CHECK(t.gamma == Moebius<Q>());

  std::mt19937_64 rng(23);
  for (int n = 0; n < 200; ++n) {
    const Point<Q> z = random_point(rng);
    const auto red = reduce_fd(z);
    CHECK(apply(red.gamma, z) == red.point);
    CHECK(abs_value(red.point.x()) <= Q(1, 2));
    CHECK(red.point.x() * red.point.x() + red.point.y() * red.point.y() >= 1);
    const auto fl = reduce_fd(to_floating(z));
    CHECK(std::abs(fl.point.y() - to_double(red.point.y())) < 1e-9);
  }
}

TEST_CASE("grid and reference masses") {
  CHECK(parse_grid("12x12x8").nx == 12);
  CHECK(parse_grid("3x4x5").na == 5);
  CHECK_THROWS_AS(parse_grid("12x12"), ValidationError);
  CHECK_THROWS_AS(parse_grid("0x1x1"), ValidationError);

  for (const GridSpec g : {GridSpec{}, GridSpec{24, 24, 16, 10.0}, GridSpec{5, 3, 2, 4.0}}) {
    const auto h = Histogram3D::empty(g);
    CHECK(h.bins.size() == static_cast<std::size_t>(g.nx * g.ny * g.na + 1));
    CHECK(h.bins.back().cusp);
    double sum = 0.0;
    for (const auto& b : h.bins) sum += b.ref_mass;
    CHECK(std::abs(sum - 1.0) < 1e-9);
    CHECK(h.bins.back().ref_mass == doctest::Approx((1.0 / g.y_max) / (std::numbers::pi / 3)));
  }
  // full domain below height 10
  CHECK(cell_area(-0.5, 0.5, std::sqrt(3.0) / 2, 10.0) == doctest::Approx(std::numbers::pi / 3 - 0.1));
  CHECK(cell_area(0.0, 0.5, 1.0, 2.0) == doctest::Approx(0.25));
  CHECK(cell_area(-0.5, 0.5, 0.5, 0.8) == 0.0);
}

TEST_CASE("discrepancy") {
  auto h = Histogram3D::empty(GridSpec{});
  CHECK_THROWS_AS(discrepancy(h), DomainError);
  for (auto& b : h.bins) b.mass = 3.0 * b.ref_mass;
  h.total_mass = 3.0;
  CHECK(discrepancy(h) == doctest::Approx(0.0).epsilon(1e-12));
  auto one = Histogram3D::empty(GridSpec{});
  one.bins[5].mass = 2.0;
  one.total_mass = 2.0;
  CHECK(discrepancy(one) == doctest::Approx(1.0 - one.bins[5].ref_mass).epsilon(1e-12));
}

TEST_CASE("mu_L on small censuses") {
  const double L1 = std::acosh(1.5) + 0.01;
  const auto h = mu_L_histogram(L1);
  CHECK(h.total_mass == doctest::Approx(2 * std::acosh(1.5)).epsilon(1e-9));
  CHECK(std::abs(h.total_mass - h.mass_sum()) < 1e-9);
  for (const auto& b : h.bins) CHECK(b.mass >= 0.0);

  const auto empty = mu_L_histogram(0.5);
  CHECK(empty.total_mass == 0.0);
  CHECK(empty.mass_sum() == 0.0);

  double prev = 0.0;
  for (double L : {1.0, 2.0, 3.0, 4.0}) {
    const auto cur = mu_L_histogram(L);
    CHECK(cur.total_mass >= prev);
    CHECK(std::abs(cur.total_mass - cur.mass_sum()) < 1e-9);
    prev = cur.total_mass;
  }
}

TEST_CASE("segment histograms") {
  const auto h = segment_histogram(I(), I(), 1.0);
  CHECK(h.total_mass == doctest::Approx(4 * std::acosh(1.5)).epsilon(1e-9));
  CHECK(segment_histogram(I(), I(), 0.5).total_mass == 0.0);

  EquidistOptions fine, coarse;
  fine.step = 0.02;
  coarse.step = 0.04;
  const auto a = segment_histogram(I(), I(), 4.0, fine);
  const auto b = segment_histogram(I(), I(), 4.0, coarse);
  const auto arcs = orbit_ball(modular_group(), I(), I(), 4.0, true).size();
  CHECK(std::abs(a.total_mass - b.total_mass) < 2 * coarse.step * static_cast<double>(arcs));
}

TEST_CASE("deposit conservation") {
  auto h = Histogram3D::empty(GridSpec{});
  const double m = deposit_segment(h, Point<double>(0.1, 1.2), Point<double>(3.0, 0.05), 0.02);
  CHECK(m == doctest::Approx(std::acosh(cosh_dist(Point<double>(0.1, 1.2), Point<double>(3.0, 0.05)))));
  CHECK(std::abs(h.mass_sum() - h.total_mass) < 1e-9);
  CHECK(std::abs(h.total_mass - m) < 1e-12);

  auto other = Histogram3D::empty(GridSpec{});
  deposit_segment(other, Point<double>(-2.0, 0.3), Point<double>(0.0, 7.0), 0.02);
  auto ab = h, ba = other;
  ab.merge(other);
  ba.merge(h);
  CHECK(std::abs(ab.total_mass - ba.total_mass) < 1e-12);
  for (std::size_t i = 0; i < ab.bins.size(); ++i) CHECK(std::abs(ab.bins[i].mass - ba.bins[i].mass) < 1e-9);
}

TEST_CASE("orientations") {
  CHECK(parse_orientation("forward") == Orientation::Forward);
  CHECK(parse_orientation("reverse") == Orientation::Reverse);
  CHECK(parse_orientation("symmetric") == Orientation::Symmetric);
  CHECK_THROWS_AS(parse_orientation("sideways"), ValidationError);

  EquidistOptions fwd, rev;
  rev.orientation = Orientation::Reverse;
  const auto a = mu_L_histogram(8.0, fwd);
  const auto b = mu_L_histogram(8.0, rev);
  CHECK(std::abs(discrepancy(a) - discrepancy(b)) < 0.02);
  CHECK(std::abs(a.total_mass - b.total_mass) < 1e-6 * a.total_mass);
}

TEST_CASE("threads do not change mu_L") {
  EquidistOptions one, three;
  three.orbit.threads = 3;
  const auto a = mu_L_histogram(6.0, one);
  const auto b = mu_L_histogram(6.0, three);
  REQUIRE(a.bins.size() == b.bins.size());
  for (std::size_t i = 0; i < a.bins.size(); ++i) CHECK(a.bins[i].mass == b.bins[i].mass);
}
