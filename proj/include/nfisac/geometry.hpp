#pragma once

// Antenna array layouts and target kinematics in the 2-D plane that contains
// the array and the target. Coordinates are meters, the array center is the
// origin, and linear arrays lie on the x axis. Target angles are measured
// from the +x (array) axis, so broadside is pi/2.

#include <cstddef>
#include <span>
#include <vector>

#include "nfisac/common.hpp"

namespace nfisac {

enum class ArrayKind { DenseUla, SparseUla, Uca };

const char* to_string(ArrayKind kind);

class ArrayGeometry {
 public:
  /// Half-wavelength ULA centered on the origin.
  static ArrayGeometry dense_ula(std::size_t n, double wavelength);
  /// One-wavelength ULA centered on the origin.
  static ArrayGeometry sparse_ula(std::size_t n, double wavelength);
  /// Circular array whose diameter equals the dense ULA aperture (n-1)*wavelength/2.
  /// Element 0 sits at `orientation_rad` on the circle.
  static ArrayGeometry uca(std::size_t n, double wavelength, double orientation_rad = 0.0);

  /// Generic validated constructor. `size_m` is the element spacing for the
  /// linear kinds and the radius for Uca; it must match the kind's invariant.
  static ArrayGeometry make(ArrayKind kind, std::size_t n, double wavelength, double size_m,
                            double orientation_rad = 0.0);

  ArrayKind kind() const { return kind_; }
  bool is_linear() const { return kind_ != ArrayKind::Uca; }
  std::size_t size() const { return positions_.size(); }
  double wavelength() const { return wavelength_; }
  /// Element spacing (linear kinds) in meters; 0 for Uca.
  double spacing() const { return spacing_; }
  /// Radius (Uca) in meters; 0 for linear kinds.
  double radius() const { return radius_; }
  double orientation() const { return orientation_; }
  /// Largest distance between two elements.
  double aperture() const;
  std::span<const Point2> positions() const { return positions_; }

 private:
  ArrayGeometry(ArrayKind kind, double wavelength, double spacing, double radius,
                double orientation, std::vector<Point2> positions);

  ArrayKind kind_;
  double wavelength_;
  double spacing_;
  double radius_;
  double orientation_;
  std::vector<Point2> positions_;
};

/// Element coordinates; linear arrays at (n - (N-1)/2) * d on the x axis.
std::vector<Point2> element_positions(const ArrayGeometry& geometry);

/// Point target. Velocity is split into the component along the line of sight
/// from the array center (radial, positive = receding) and the in-plane
/// component perpendicular to it (transverse, positive = increasing angle).
struct TargetState {
  double range_m = 0.0;
  double theta_rad = 0.0;
  double v_radial = 0.0;
  double v_transverse = 0.0;
  cplx gain{1.0, 0.0};

  /// Center delay r/c.
  double delay() const { return range_m / kSpeedOfLight; }
  Point2 position() const;
  /// Unit line-of-sight vector from the array center.
  Point2 radial_unit() const;
  /// Unit vector perpendicular to the line of sight, pointing toward +theta.
  Point2 transverse_unit() const;
  Point2 velocity() const;

  /// Throws InvalidArgument unless r > 0 and theta in (0, pi).
  void validate() const;
};

/// Element-to-target path expressed in the target's line-of-sight frame.
/// `along`/`across` are the direction cosines of (target - element) on the
/// radial and transverse unit vectors; `distance` is its length in meters.
struct SightLine {
  double along = 1.0;
  double across = 0.0;
  double distance = 0.0;
};

SightLine sight_line(const TargetState& target, Point2 element);

/// One-way propagation time from the target to an element.
double element_delay(const TargetState& target, Point2 element);

/// Target velocity projected onto the element-to-target direction (m/s).
double doppler_projection(const TargetState& target, Point2 element);

}  // namespace nfisac
