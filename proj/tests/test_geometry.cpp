#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nfisac/geometry.hpp"
#include "oracles.hpp"

using namespace nfisac;

TEST_CASE("linear array positions") {
  const auto pair = ArrayGeometry::dense_ula(2, 0.005);
  REQUIRE(pair.size() == 2);
  CHECK(pair.positions()[0].x == doctest::Approx(-0.00125).epsilon(1e-12));
  CHECK(pair.positions()[1].x == doctest::Approx(0.00125).epsilon(1e-12));

  const auto big = ArrayGeometry::dense_ula(512, 0.005);
  CHECK(big.positions()[0].x == doctest::Approx(-0.63875).epsilon(1e-12));
  CHECK(big.positions()[511].x == doctest::Approx(0.63875).epsilon(1e-12));
  CHECK(big.spacing() == doctest::Approx(0.0025));
  for (const auto& p : big.positions()) CHECK(p.y == 0.0);

  const auto sparse = ArrayGeometry::sparse_ula(4, 0.01);
  CHECK(sparse.spacing() == doctest::Approx(0.01));
  CHECK(sparse.aperture() == doctest::Approx(0.03));
  CHECK(element_positions(sparse).size() == 4);
}

TEST_CASE("circular array radius and symmetry") {
  const auto uca = ArrayGeometry::uca(512, 0.005);
  CHECK(uca.radius() == doctest::Approx(0.63875).epsilon(1e-12));
  for (const auto& p : uca.positions()) CHECK(std::hypot(p.x, p.y) == doctest::Approx(0.63875).epsilon(1e-12));
  CHECK(uca.positions()[0].x == doctest::Approx(0.63875));
  CHECK(uca.positions()[0].y == doctest::Approx(0.0));

  // Rotating the target by one element pitch permutes the delay multiset.
  const auto small = ArrayGeometry::uca(16, 0.005);
  const double pitch = 2.0 * kPi / 16.0;
  const TargetState a{3.0, 0.7, 0.0, 0.0, {1.0, 0.0}};
  const TargetState b{3.0, 0.7 + pitch, 0.0, 0.0, {1.0, 0.0}};
  std::vector<double> da, db;
  for (const auto& q : small.positions()) {
    da.push_back(element_delay(a, q));
    db.push_back(element_delay(b, q));
  }
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  for (std::size_t i = 0; i < da.size(); ++i) CHECK(std::abs(da[i] - db[i]) <= 1e-15);
}

TEST_CASE("geometry invariants are enforced") {
  CHECK_THROWS_AS(ArrayGeometry::dense_ula(0, 0.005), InvalidArgument);
  CHECK_THROWS_AS(ArrayGeometry::dense_ula(4, -1.0), InvalidArgument);
  CHECK_THROWS_AS(ArrayGeometry::make(ArrayKind::DenseUla, 4, 0.005, 0.005), InvalidArgument);
  CHECK_THROWS_AS(ArrayGeometry::make(ArrayKind::SparseUla, 4, 0.005, 0.0025), InvalidArgument);
  CHECK_THROWS_AS(ArrayGeometry::make(ArrayKind::Uca, 8, 0.005, 0.1), InvalidArgument);
  CHECK_NOTHROW(ArrayGeometry::make(ArrayKind::Uca, 8, 0.005, 7 * 0.005 / 4));
  CHECK_NOTHROW(ArrayGeometry::make(ArrayKind::DenseUla, 8, 0.005, 0.0025));
  try {
    ArrayGeometry::make(ArrayKind::DenseUla, 4, 0.005, 0.005);
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("lambda/2") != std::string::npos);
  }
}

TEST_CASE("target validation") {
  CHECK_THROWS_AS((TargetState{0.0, 1.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((TargetState{1.0, 0.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((TargetState{1.0, kPi}.validate()), InvalidArgument);
  CHECK_THROWS_AS((TargetState{1.0, 1.0, NAN}.validate()), InvalidArgument);
  CHECK_NOTHROW((TargetState{1.0, 1.0}.validate()));
  CHECK(TargetState{20.0, 1.0}.delay() == doctest::Approx(20.0 / kSpeedOfLight));
}

TEST_CASE("element delay examples") {
  const TargetState t{20.0, kPi / 2};
  CHECK(element_delay(t, {0.0, 0.0}) * 1e9 == doctest::Approx(66.713).epsilon(1e-5));
  CHECK(element_delay(t, {0.63875, 0.0}) * 1e9 == doctest::Approx(66.747).epsilon(1e-5));
  CHECK(element_delay(t, {0.63875, 0.0}) ==
        doctest::Approx(std::sqrt(400.0 + 0.63875 * 0.63875) / kSpeedOfLight).epsilon(1e-14));
}

TEST_CASE("planar expansion error at 200 m") {
  const auto geom = ArrayGeometry::dense_ula(512, kSpeedOfLight / 60e9);
  const double theta = kPi / 3;
  const TargetState t{200.0, theta};
  for (const auto& q : geom.positions()) {
    if (q.x == 0.0) continue;
    const double planar = t.delay() - q.x / kSpeedOfLight * std::cos(theta);
    CHECK(std::abs(element_delay(t, q) - planar) < 2e-3 * std::abs(q.x) / kSpeedOfLight);
  }
}

TEST_CASE("doppler projection examples") {
  const TargetState moving{7.0, 1.1, 3.5, -2.0};
  CHECK(doppler_projection(moving, {0.0, 0.0}) == doctest::Approx(3.5).epsilon(1e-15));
  const TargetState sideways{5.0, kPi / 2, 0.0, 10.0};
  CHECK(std::abs(doppler_projection(sideways, {0.0, 0.0})) < 1e-15);

  // Independent vector geometry: u . (p - q) / |p - q|.
  const auto ref = oracle::path(5.0, kPi / 2, 0.0, 10.0, {0.63875, 0.0});
  const double v = doppler_projection(sideways, {0.63875, 0.0});
  CHECK(v == doctest::Approx(ref.doppler).epsilon(1e-13));
  CHECK(std::abs(v) == doctest::Approx(10.0 * 0.63875 / std::hypot(5.0, 0.63875)).epsilon(1e-13));
  CHECK(std::abs(v) == doctest::Approx(1.2672).epsilon(1e-4));
}

TEST_CASE("delay and doppler match the vector oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const TargetState t{0.5 + 50 * u(rng), 0.05 + 3.0 * u(rng), 20 * u(rng) - 10, 20 * u(rng) - 10};
    const Point2 q{2 * u(rng) - 1, 2 * u(rng) - 1};
    const auto ref = oracle::path(t.range_m, t.theta_rad, t.v_radial, t.v_transverse, {q.x, q.y});
    CHECK(element_delay(t, q) == doctest::Approx(ref.distance / kSpeedOfLight).epsilon(1e-13));
    CHECK(doppler_projection(t, q) == doctest::Approx(ref.doppler).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("far-away targets reduce to the planar model") {
  const auto geom = ArrayGeometry::dense_ula(512, kSpeedOfLight / 60e9);
  const TargetState t{1e6, 1.0, 4.0, 0.0};
  const TargetState sideways{1e6, 1.0, 4.0, 9.0};
  double worst_delay = 0.0, worst_v = 0.0, worst_side = 0.0;
  for (const auto& q : geom.positions()) {
    worst_delay = std::max(worst_delay, std::abs(element_delay(t, q) - (t.delay() - q.x * std::cos(1.0) / kSpeedOfLight)));
    worst_v = std::max(worst_v, std::abs(doppler_projection(t, q) - 4.0));
    worst_side = std::max(worst_side, std::abs(doppler_projection(sideways, q) - 4.0));
  }
  CHECK(worst_delay <= 1e-15);
  CHECK(worst_v <= 1e-6);
  // The transverse part fades only as 1/r: v_t * (aperture / 2) * |sin theta| / r.
  CHECK(worst_side <= 9.0 * 0.5 * geom.aperture() * std::sin(1.0) / 1e6 * (1 + 1e-6));
  CHECK(worst_side >= 9.0 * 0.5 * geom.aperture() * std::sin(1.0) / 1e6 * (1 - 1e-3));
}

TEST_CASE("linear arrays mirror under theta -> pi - theta") {
  const auto geom = ArrayGeometry::dense_ula(33, 0.01);
  const TargetState a{2.0, 0.8}, b{2.0, kPi - 0.8};
  const auto pos = geom.positions();
  for (std::size_t n = 0; n < pos.size(); ++n)
    CHECK(element_delay(a, pos[n]) == doctest::Approx(element_delay(b, pos[pos.size() - 1 - n])).epsilon(1e-14));
}
