#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nfisac {

using cplx = std::complex<double>;

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Raised when a value violates a domain invariant (bad geometry, grid, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double wavelength_of(double frequency_hz) { return kSpeedOfLight / frequency_hz; }

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

/// exp(-j * 2*pi * cycles), with the integer part of `cycles` removed first.
cplx phasor_from_cycles(double cycles);

inline double db_from_power(double ratio) { return 10.0 * std::log10(ratio); }

}  // namespace nfisac
