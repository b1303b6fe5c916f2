#include "nfisac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nfisac {
namespace {

constexpr double kSizeTolerance = 1e-9;  // relative, for the kind invariants

bool matches(double actual, double expected) {
  return std::abs(actual - expected) <= kSizeTolerance * std::abs(expected);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

}  // namespace

const char* to_string(ArrayKind kind) {
  switch (kind) {
    case ArrayKind::DenseUla: return "dense_ula";
    case ArrayKind::SparseUla: return "sparse_ula";
    case ArrayKind::Uca: return "uca";
  }
  return "?";
}

ArrayGeometry::ArrayGeometry(ArrayKind kind, double wavelength, double spacing, double radius,
                             double orientation, std::vector<Point2> positions)
    : kind_(kind),
      wavelength_(wavelength),
      spacing_(spacing),
      radius_(radius),
      orientation_(orientation),
      positions_(std::move(positions)) {}

ArrayGeometry ArrayGeometry::make(ArrayKind kind, std::size_t n, double wavelength, double size_m,
                                  double orientation_rad) {
  require(n >= 1, "array needs at least one element");
  require(std::isfinite(wavelength) && wavelength > 0.0, "wavelength must be positive");
  require(std::isfinite(size_m) && size_m > 0.0,
          kind == ArrayKind::Uca ? "radius must be positive" : "spacing must be positive");
  require(std::isfinite(orientation_rad), "orientation must be finite");

  std::vector<Point2> pos(n);
  switch (kind) {
    case ArrayKind::DenseUla:
    case ArrayKind::SparseUla: {
      const double expected = kind == ArrayKind::DenseUla ? wavelength / 2.0 : wavelength;
      require(matches(size_m, expected), std::string(to_string(kind)) + " spacing must equal " +
                                             (kind == ArrayKind::DenseUla ? "lambda/2" : "lambda"));
      const double center = (static_cast<double>(n) - 1.0) / 2.0;
      for (std::size_t i = 0; i < n; ++i) pos[i] = {(static_cast<double>(i) - center) * size_m, 0.0};
      return ArrayGeometry(kind, wavelength, size_m, 0.0, 0.0, std::move(pos));
    }
    case ArrayKind::Uca: {
      const double expected = (static_cast<double>(n) - 1.0) * wavelength / 4.0;
      require(n >= 2, "uca needs at least two elements");
      require(matches(size_m, expected), "uca radius must equal (N-1)*lambda/4");
      for (std::size_t i = 0; i < n; ++i) {
        const double a = orientation_rad + kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        pos[i] = {size_m * std::cos(a), size_m * std::sin(a)};
      }
      return ArrayGeometry(kind, wavelength, 0.0, size_m, orientation_rad, std::move(pos));
    }
  }
  throw InvalidArgument("unknown array kind");
}

ArrayGeometry ArrayGeometry::dense_ula(std::size_t n, double wavelength) {
  return make(ArrayKind::DenseUla, n, wavelength, wavelength / 2.0);
}

ArrayGeometry ArrayGeometry::sparse_ula(std::size_t n, double wavelength) {
  return make(ArrayKind::SparseUla, n, wavelength, wavelength);
}

ArrayGeometry ArrayGeometry::uca(std::size_t n, double wavelength, double orientation_rad) {
  return make(ArrayKind::Uca, n, wavelength, (static_cast<double>(n) - 1.0) * wavelength / 4.0,
              orientation_rad);
}

double ArrayGeometry::aperture() const {
  if (positions_.size() < 2) return 0.0;
  if (is_linear()) return positions_.back().x - positions_.front().x;
  return 2.0 * radius_;
}

std::vector<Point2> element_positions(const ArrayGeometry& geometry) {
  const auto pos = geometry.positions();
  return {pos.begin(), pos.end()};
}

Point2 TargetState::radial_unit() const { return {std::cos(theta_rad), std::sin(theta_rad)}; }

Point2 TargetState::transverse_unit() const { return {-std::sin(theta_rad), std::cos(theta_rad)}; }

Point2 TargetState::position() const {
  const Point2 u = radial_unit();
  return {range_m * u.x, range_m * u.y};
}

Point2 TargetState::velocity() const {
  const Point2 er = radial_unit();
  const Point2 et = transverse_unit();
  return {v_radial * er.x + v_transverse * et.x, v_radial * er.y + v_transverse * et.y};
}

void TargetState::validate() const {
  require(std::isfinite(range_m) && range_m > 0.0, "target range must be positive");
  require(std::isfinite(theta_rad) && theta_rad > 0.0 && theta_rad < kPi,
          "target angle must lie in (0, pi)");
  require(std::isfinite(v_radial) && std::isfinite(v_transverse), "target velocity must be finite");
  require(std::isfinite(gain.real()) && std::isfinite(gain.imag()), "target gain must be finite");
}

SightLine sight_line(const TargetState& target, Point2 element) {
  // Working in the rotated frame keeps the center element exact: the path is
  // (r, 0) there, so delay = r/c and the projection is v_radial bit-for-bit.
  const double q_along = dot(element, target.radial_unit());
  const double q_across = dot(element, target.transverse_unit());
  const double dr = target.range_m - q_along;
  const double dt = -q_across;
  const double dist = std::hypot(dr, dt);
  return {dr / dist, dt / dist, dist};
}

double element_delay(const TargetState& target, Point2 element) {
  return sight_line(target, element).distance / kSpeedOfLight;
}

double doppler_projection(const TargetState& target, Point2 element) {
  const SightLine s = sight_line(target, element);
  return target.v_radial * s.along + target.v_transverse * s.across;
}

}  // namespace nfisac
