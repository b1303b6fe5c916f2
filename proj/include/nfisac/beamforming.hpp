#pragma once

// Matched-filter beams over distance: spatial focusing across the array at a
// single frequency, and temporal beamforming across subcarriers at a single
// antenna.

#include <span>
#include <vector>

#include "nfisac/channel.hpp"
#include "nfisac/geometry.hpp"

namespace nfisac {

enum class BeamKind { SpatialFocusing, TemporalBeamforming };

const char* to_string(BeamKind kind);

struct FocalPoint {
  double range_m = 0.0;
  double theta_rad = 0.0;
};

struct BeamWeights {
  BeamKind kind = BeamKind::SpatialFocusing;
  /// Unit-norm; length N (spatial) or M (temporal).
  std::vector<cplx> coefficients;
  FocalPoint focal;
  /// Single design frequency for spatial focusing.
  double frequency_hz = 0.0;
  /// Subcarrier layout for temporal beamforming.
  OfdmGrid grid;
};

struct BeamPattern {
  BeamKind kind = BeamKind::SpatialFocusing;
  FocalPoint focal;
  std::vector<double> distances_m;
  /// 10 log10(gain / focal gain).
  std::vector<double> gain_db;
  /// |<w, a(focal)>|^2 before normalization (N or M for matched weights).
  double focal_gain = 0.0;
};

BeamWeights focusing_weights(const ArrayGeometry& geometry, FocalPoint focal, double frequency_hz);
BeamWeights temporal_weights(const OfdmGrid& grid, double focal_delay_s);

/// Near-field spatial steering a_n = exp(-j 2 pi f tau_n) toward (r, theta).
std::vector<cplx> spatial_steering(const ArrayGeometry& geometry, FocalPoint point, double frequency_hz);
/// Subcarrier phasors a_m = exp(-j 2 pi f_m delay).
std::vector<cplx> delay_steering(const OfdmGrid& grid, double delay_s);

/// Raw gain |<w, a(point)>|^2.
double beam_gain(const BeamWeights& weights, const ArrayGeometry& geometry, FocalPoint point);
double beam_gain(const BeamWeights& weights, double delay_s);

/// Gain along distance at the focal angle (spatial) or along r = c * delay
/// (temporal).
BeamPattern gain_profile(const BeamWeights& weights, const ArrayGeometry& geometry,
                         std::span<const double> distances_m);
BeamPattern gain_profile(const BeamWeights& weights, std::span<const double> distances_m);

struct HalfPowerInterval {
  double lower_m = 0.0;
  double upper_m = 0.0;
  /// False when the gain never drops 3 dB on one side inside the search span.
  bool bounded = false;
  double width_m() const;
};

/// Distance interval around the focal range where gain stays within 3 dB of
/// the focal gain. The search extends to focal / 1e3 and focal * 1e3.
HalfPowerInterval depth_of_focus(const BeamWeights& weights, const ArrayGeometry& geometry);
HalfPowerInterval depth_of_focus(const BeamWeights& weights);

/// n points log-spaced in [lo, hi].
std::vector<double> log_spaced(double lo, double hi, std::size_t n);

}  // namespace nfisac
