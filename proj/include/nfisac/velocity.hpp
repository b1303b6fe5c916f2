#pragma once

// Matched-filter velocity profiling. With the target position known, each
// (v_radial, v_transverse) candidate defines a unit-gain template tensor; the
// profile is the normalized correlation |<y, t>|^2 / (||y||^2 ||t||^2).

#include <cstddef>
#include <span>
#include <vector>

#include "nfisac/channel.hpp"

namespace nfisac {

struct VelocityGrid {
  std::vector<double> radial;
  std::vector<double> transverse;

  /// Multiples of `step` within [min, max] on both axes (so 0 is hit exactly
  /// whenever min <= 0 <= max).
  static VelocityGrid uniform(double min_mps, double max_mps, double step_mps);

  /// Axes nonempty, finite, strictly increasing, each containing 0.
  void validate() const;
};

struct VelocityProfile {
  VelocityGrid grid;
  /// Normalized surface [radial index][transverse index], peak = 1.
  std::vector<double> values;
  /// Correlation at the peak before renormalization (1 for a noiseless match).
  double peak_correlation = 0.0;
  std::size_t peak_radial_index = 0;
  std::size_t peak_transverse_index = 0;
  double peak_radial = 0.0;
  double peak_transverse = 0.0;
  /// values along v_radial at the peak's v_transverse, and vice versa.
  std::vector<double> radial_cut;
  std::vector<double> transverse_cut;

  double at(std::size_t ir, std::size_t it) const { return values[ir * grid.transverse.size() + it]; }
};

struct AssumedPosition {
  double range_m = 0.0;
  double theta_rad = 0.0;
};

/// `template_model` selects how templates are synthesized; the far-field model
/// ignores v_transverse, so its profile is flat along that axis.
VelocityProfile velocity_profile(const ChannelTensor& observation, AssumedPosition position,
                                 const VelocityGrid& grid,
                                 ChannelModel template_model = ChannelModel::NearField);

/// 10 log10(peak / median of the samples more than 3 steps from the peak).
/// A flat cut (or one with no off-peak samples) yields 0 dB.
double profile_dynamic_range(std::span<const double> cut);

}  // namespace nfisac
