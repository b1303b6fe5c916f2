#include <doctest.h>

#include <cmath>

#include "nfisac/simd/kernels.hpp"
#include "nfisac/velocity.hpp"
#include "oracles.hpp"

using namespace nfisac;

namespace {

struct Setup {
  OfdmGrid grid{28e9, 2, 100e3, 40};
  ArrayGeometry geom = ArrayGeometry::dense_ula(64, kSpeedOfLight / 28e9);
  double r = 1.5;
  double theta = 1.3;
};

}  // namespace

TEST_CASE("velocity grid") {
  const auto g = VelocityGrid::uniform(-1.0, 1.0, 0.25);
  REQUIRE(g.radial.size() == 9);
  CHECK(g.radial[4] == 0.0);
  CHECK(g.radial.front() == -1.0);
  CHECK(g.transverse == g.radial);
  CHECK_NOTHROW(g.validate());
  CHECK_THROWS_AS((VelocityGrid{{1.0, 2.0}, {0.0}}.validate()), InvalidArgument);
  CHECK_THROWS_AS((VelocityGrid{{0.0, 0.0}, {0.0}}.validate()), InvalidArgument);
  CHECK_THROWS_AS((VelocityGrid{{}, {0.0}}.validate()), InvalidArgument);
  CHECK_THROWS_AS(VelocityGrid::uniform(-1.0, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("profile matches brute-force template correlation") {
  const Setup s;
  const TargetState t{s.r, s.theta, 3.0, -5.0, {0.7, 0.2}};
  const auto y = add_noise(near_field_channel(s.grid, s.geom, t), 5.0, 17);
  const VelocityGrid grid{{-6.0, -2.0, 0.0, 3.0, 7.5}, {-8.0, -5.0, 0.0, 1.0}};
  const VelocityProfile p = velocity_profile(y, {s.r, s.theta}, grid);
  double best = 0.0;
  std::vector<double> raw;
  for (double vr : grid.radial)
    for (double vt : grid.transverse) {
      raw.push_back(oracle::template_correlation(y, s.r, s.theta, vr, vt));
      best = std::max(best, raw.back());
    }
  CHECK(p.peak_correlation == doctest::Approx(best).epsilon(1e-9));
  for (std::size_t i = 0; i < raw.size(); ++i) CHECK(p.values[i] == doctest::Approx(raw[i] / best).epsilon(1e-8).scale(1e-12));
}

TEST_CASE("scalar and avx2 routes give the same profile") {
  const Setup s;
  const auto y = add_noise(near_field_channel(s.grid, s.geom, {s.r, s.theta, 1.0, 2.0}), 0.0, 3);
  const auto grid = VelocityGrid::uniform(-4.0, 4.0, 0.5);
  const simd::Isa before = simd::active_isa();
  simd::force_isa(simd::Isa::Scalar);
  const auto a = velocity_profile(y, {s.r, s.theta}, grid);
  simd::force_isa(simd::Isa::Avx2);
  const auto b = velocity_profile(y, {s.r, s.theta}, grid);
  simd::force_isa(before);
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(std::abs(a.values[i] - b.values[i]) < 1e-10);
  CHECK(a.peak_radial_index == b.peak_radial_index);
  CHECK(a.peak_transverse_index == b.peak_transverse_index);
}

TEST_CASE("noiseless matched filter peaks at the truth") {
  const Setup s;
  const auto y = near_field_channel(s.grid, s.geom, {s.r, s.theta, 5.0, 10.0});
  const auto grid = VelocityGrid::uniform(-20.0, 20.0, 1.0);
  const auto p = velocity_profile(y, {s.r, s.theta}, grid);
  CHECK(p.peak_radial == 5.0);
  CHECK(p.peak_transverse == 10.0);
  CHECK(p.peak_correlation == doctest::Approx(1.0).epsilon(1e-10));
  std::size_t ones = 0;
  for (double v : p.values) {
    CHECK(v <= 1.0 + 1e-12);
    CHECK(v >= 0.0);
    ones += v > 1.0 - 1e-9;
  }
  CHECK(ones == 1);
  CHECK(p.radial_cut.size() == grid.radial.size());
  CHECK(p.radial_cut[p.peak_radial_index] == 1.0);
  CHECK(p.transverse_cut[p.peak_transverse_index] == 1.0);
}

TEST_CASE("negating the radial speed mirrors the peak") {
  const Setup s;
  const auto grid = VelocityGrid::uniform(-12.0, 12.0, 0.5);
  for (double vr : {3.5, -7.0}) {
    const auto p = velocity_profile(near_field_channel(s.grid, s.geom, {s.r, s.theta, vr, 4.0}), {s.r, s.theta}, grid);
    const auto q = velocity_profile(near_field_channel(s.grid, s.geom, {s.r, s.theta, -vr, 4.0}), {s.r, s.theta}, grid);
    CHECK(p.peak_radial == vr);
    CHECK(q.peak_radial == -vr);
  }
}

TEST_CASE("far-field observations are blind to transverse speed") {
  const Setup s;
  const auto y = add_noise(far_field_channel(s.grid, s.geom, {s.r, s.theta, 2.0, 6.0}), 3.0, 5);
  const auto grid = VelocityGrid::uniform(-8.0, 8.0, 1.0);
  const auto p = velocity_profile(y, {s.r, s.theta}, grid, ChannelModel::FarField);
  for (std::size_t i = 0; i < grid.radial.size(); ++i) {
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (std::size_t j = 0; j < grid.transverse.size(); ++j) {
      lo = std::min(lo, p.at(i, j));
      hi = std::max(hi, p.at(i, j));
    }
    CHECK(hi - lo <= 1e-10);
  }
  CHECK(profile_dynamic_range(p.transverse_cut) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("profile input checks") {
  const Setup s;
  const OfdmGrid one{28e9, 2, 100e3, 1};
  const auto y = near_field_channel(one, s.geom, {s.r, s.theta});
  CHECK_THROWS_AS(velocity_profile(y, {s.r, s.theta}, VelocityGrid::uniform(-1, 1, 1)), InvalidArgument);
  const auto y2 = near_field_channel(s.grid, s.geom, {s.r, s.theta});
  CHECK_THROWS_AS(velocity_profile(y2, {s.r, s.theta}, VelocityGrid{{1.0}, {0.0}}), InvalidArgument);
  ChannelTensor zero(s.grid, s.geom, 1.0);
  CHECK_THROWS_AS(velocity_profile(zero, {s.r, s.theta}, VelocityGrid::uniform(-1, 1, 1)), InvalidArgument);
}

TEST_CASE("dynamic range metric") {
  std::vector<double> delta(21, 1e-3);
  delta[10] = 1.0;
  CHECK(profile_dynamic_range(delta) == doctest::Approx(30.0));
  CHECK(profile_dynamic_range(std::vector<double>(9, 0.4)) == 0.0);
  CHECK(profile_dynamic_range(std::vector<double>{0.2, 1.0, 0.3}) == 0.0);
  // Samples within three steps of the peak are excluded from the median.
  std::vector<double> shoulder{0.1, 0.1, 0.1, 0.9, 0.9, 0.9, 1.0, 0.9, 0.9, 0.9, 0.1, 0.1, 0.1};
  CHECK(profile_dynamic_range(shoulder) == doctest::Approx(10.0));
  CHECK_THROWS_AS(profile_dynamic_range(std::vector<double>{}), InvalidArgument);
}
