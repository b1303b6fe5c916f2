#include <doctest.h>

#include <random>
#include <sstream>

#include "nfisac/transforms.hpp"
#include "oracles.hpp"

using namespace nfisac;

namespace {

CMatrix to_row_major(const Eigen::MatrixXcd& m) { return m; }

double rel_err(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_CASE("transforms equal explicit DFT matrix products") {
  std::mt19937_64 rng(5);
  for (auto [n, m] : {std::pair{8, 8}, std::pair{5, 12}, std::pair{17, 3}, std::pair{1, 6}, std::pair{64, 32}}) {
    const Eigen::MatrixXcd h = oracle::random_matrix(n, m, rng);
    const Eigen::MatrixXcd fn = oracle::dft_matrix(n), fm = oracle::dft_matrix(m);
    const CMatrix hr = to_row_major(h);
    CHECK(rel_err(to_spatial_delay(hr).data, h * fm.adjoint()) < 1e-12);
    CHECK(rel_err(to_angular_frequency(hr).data, fn.adjoint() * h) < 1e-12);
    CHECK(rel_err(to_angular_delay(hr).data, fn.adjoint() * h * fm.adjoint()) < 1e-12);
    CHECK(to_angular_delay(hr).domain == Domain::AngularDelay);
  }
}

TEST_CASE("unitarity, round trip and linearity") {
  std::mt19937_64 rng(9);
  const Eigen::MatrixXcd h1 = oracle::random_matrix(48, 40, rng), h2 = oracle::random_matrix(48, 40, rng);
  const cplx a{0.7, -1.3}, b{-2.0, 0.4};
  for (Domain d : {Domain::SpatialDelay, Domain::AngularFrequency, Domain::AngularDelay}) {
    const DomainMatrix t1 = transform(h1, d);
    CHECK(std::abs(t1.data.norm() - h1.norm()) <= 1e-12 * h1.norm());
    CHECK(rel_err(to_spatial_frequency(t1), h1) < 1e-12);
    const Eigen::MatrixXcd combo = transform(CMatrix(a * h1 + b * h2), d).data;
    const Eigen::MatrixXcd parts = a * t1.data + b * transform(h2, d).data;
    CHECK(rel_err(combo, parts) < 1e-12);
  }
  CHECK(transform(h1, Domain::SpatialFrequency).data == CMatrix(h1));
}

TEST_CASE("tone and constant inputs") {
  const std::size_t N = 4, M = 16, p = 5;
  CMatrix h = CMatrix::Zero(N, M);
  for (std::size_t m = 0; m < M; ++m) h(2, m) = std::polar(1.0, -2 * oracle::pi * double(m * p) / M);
  const auto sd = to_spatial_delay(h).data;
  Eigen::Index r, c;
  sd.cwiseAbs().maxCoeff(&r, &c);
  CHECK(r == 2);
  CHECK(c == Eigen::Index(p));
  CHECK(std::abs(sd(2, p)) == doctest::Approx(std::sqrt(double(M))));
  CHECK(sd.norm() == doctest::Approx(std::abs(sd(2, p))));

  const CMatrix ones = CMatrix::Ones(N, M);
  const auto od = to_spatial_delay(ones).data;
  for (std::size_t n = 0; n < N; ++n) {
    CHECK(std::abs(od(n, 0)) == doctest::Approx(std::sqrt(double(M))));
    CHECK(od.row(n).tail(M - 1).norm() < 1e-12);
  }

  // Rank-one product of spatial and frequency tones lands in one bin.
  const std::size_t q = 3;
  CMatrix outer(8, M);
  for (std::size_t n = 0; n < 8; ++n)
    for (std::size_t m = 0; m < M; ++m)
      outer(n, m) = std::polar(1.0, 2 * oracle::pi * double(n * q) / 8) * std::polar(1.0, -2 * oracle::pi * double(m * p) / M);
  const auto ad = to_angular_delay(outer).data;
  ad.cwiseAbs().maxCoeff(&r, &c);
  CHECK(std::abs(ad(r, c)) == doctest::Approx(ad.norm()).epsilon(1e-12));
  CHECK(c == Eigen::Index(p));
  CHECK(angular_bin_spatial_frequency(std::size_t(r), 8) == doctest::Approx(q / 8.0));
}

TEST_CASE("bin axes") {
  CHECK(angular_bin_spatial_frequency(0, 8) == 0.0);
  CHECK(angular_bin_spatial_frequency(1, 8) == doctest::Approx(-0.125));
  CHECK(angular_bin_spatial_frequency(4, 8) == doctest::Approx(-0.5));
  CHECK(angular_bin_spatial_frequency(7, 8) == doctest::Approx(0.125));
  const OfdmGrid g{60e9, 512, 6e9 / 512, 1};
  CHECK(delay_bin_seconds(3, g) == doctest::Approx(3 / 6e9));

  // A broadside target maps to angular bin 0 and angle pi/2.
  const auto geom = ArrayGeometry::dense_ula(64, kSpeedOfLight / 60e9);
  const auto angle = angular_bin_angle(0, geom, 60e9);
  REQUIRE(angle.has_value());
  CHECK(*angle == doctest::Approx(kPi / 2));
  CHECK_FALSE(angular_bin_angle(0, ArrayGeometry::sparse_ula(64, 0.005), 60e9).has_value());
}

TEST_CASE("far-field angular peak tracks the target angle") {
  const double fc = 60e9;
  const auto geom = ArrayGeometry::dense_ula(256, kSpeedOfLight / fc);
  const OfdmGrid g{fc, 1, 1e6, 1};
  const double theta = 1.0;
  const auto h = far_field_channel(g, geom, {100.0, theta});
  const auto af = to_angular_frequency(symbol_matrix(h, 0)).data;
  Eigen::Index r, c;
  af.cwiseAbs().maxCoeff(&r, &c);
  const auto est = angular_bin_angle(std::size_t(r), geom, fc);
  REQUIRE(est.has_value());
  CHECK(std::abs(std::cos(*est) - std::cos(theta)) <= 2.0 / 256);
}

TEST_CASE("Fig. 1 far-field structure") {
  const OfdmGrid g{60e9, 512, 6e9 / 512, 1};
  const auto geom = ArrayGeometry::dense_ula(512, kSpeedOfLight / 60e9);
  const auto h = symbol_matrix(far_field_channel(g, geom, {200.0, kPi / 3}), 0);

  // Delay peak walks linearly across the aperture.
  const auto sd = to_spatial_delay(h).data;
  std::vector<double> peaks;
  for (Eigen::Index n : {0, 128, 256, 384, 511}) {
    Eigen::Index c;
    sd.row(n).cwiseAbs().maxCoeff(&c);
    peaks.push_back(double(c));
  }
  CHECK(peaks.front() != peaks.back());
  const double slope = (peaks.back() - peaks.front()) / 511.0;
  CHECK(std::abs(peaks[2] - (peaks.front() + slope * 256)) <= 1.5);

  // Angular peak drifts with frequency (beam squint).
  const auto af = to_angular_frequency(h).data;
  Eigen::Index lo, hi;
  af.col(0).cwiseAbs().maxCoeff(&lo);
  af.col(511).cwiseAbs().maxCoeff(&hi);
  CHECK(lo != hi);
}

TEST_CASE("near-field single subcarrier spreads in angle") {
  const OfdmGrid g{60e9, 1, 1e6, 1};
  const auto geom = ArrayGeometry::dense_ula(512, kSpeedOfLight / 60e9);
  const auto near = to_angular_frequency(symbol_matrix(near_field_channel(g, geom, {20.0, kPi / 3}), 0)).data;
  const auto far = to_angular_frequency(symbol_matrix(far_field_channel(g, geom, {20.0, kPi / 3}), 0)).data;
  auto band = [](const Eigen::MatrixXcd& m) {
    const double peak = m.cwiseAbs2().maxCoeff();
    int count = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) count += std::norm(m(i, 0)) >= 0.1 * peak;
    return count;
  };
  CHECK(band(near) > 4 * band(far));
}

TEST_CASE("support measurement") {
  DomainMatrix rect{CMatrix::Zero(16, 16), Domain::AngularDelay};
  for (int i = 4; i < 8; ++i)
    for (int j = 2; j < 10; ++j) rect.data(i, j) = 1.0;
  const auto s = measure_support(rect, -10.0, -6.0);
  CHECK(s.angular_spread_ratio == doctest::Approx(1.0));
  CHECK(s.delay_spread_ratio == doctest::Approx(1.0));
  CHECK(s.angular_per_delay.size() == 8);
  CHECK(s.delay_per_angle.size() == 4);
  for (auto v : s.angular_per_delay) CHECK(v == 4);

  DomainMatrix tri{CMatrix::Zero(16, 16), Domain::AngularDelay};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j <= i; ++j) tri.data(i, j) = 1.0;
  const auto t = measure_support(tri, -10.0, -6.0);
  CHECK(t.delay_spread_ratio == doctest::Approx(8.0));
  CHECK(t.angular_spread_ratio == doctest::Approx(8.0));
}

TEST_CASE("heatmap export") {
  DomainMatrix m{CMatrix::Zero(2, 3), Domain::AngularDelay};
  m.data(0, 0) = 2.0;
  m.data(1, 2) = 0.2;
  const Eigen::MatrixXd db = heatmap_db(m, -60.0, false);
  CHECK(db(0, 0) == doctest::Approx(0.0));
  CHECK(db(1, 2) == doctest::Approx(-20.0));
  CHECK(db(0, 1) == doctest::Approx(-60.0));
  std::ostringstream os;
  write_heatmap_csv(db, false, os);
  CHECK(os.str().rfind("bin,0,1,2\n0,0,-60,-60\n", 0) == 0);

  const Eigen::MatrixXd centered = heatmap_db(m, -60.0, true);
  CHECK(centered(1, 1) == doctest::Approx(0.0));
}
