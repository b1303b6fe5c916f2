#pragma once

// Wideband channel synthesis: h[n,m,k] for N antennas, M subcarriers and K
// OFDM symbols, under the planar-wave (far-field) or spherical-wave
// (near-field) model.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "nfisac/common.hpp"
#include "nfisac/geometry.hpp"

namespace nfisac {

struct OfdmGrid {
  double carrier_hz = 0.0;
  std::size_t n_subcarriers = 1;
  double subcarrier_spacing_hz = 0.0;
  std::size_t n_symbols = 1;

  /// Symbol duration 1/spacing (no cyclic prefix).
  double symbol_duration() const { return 1.0 / subcarrier_spacing_hz; }
  double bandwidth() const { return static_cast<double>(n_subcarriers) * subcarrier_spacing_hz; }
  /// Subcarriers are centered on the carrier: f_c + (m - (M-1)/2) * spacing, m zero-based.
  double subcarrier_frequency(std::size_t m) const;
  std::vector<double> subcarrier_frequencies() const;

  void validate() const;
};

enum class ChannelModel { FarField, NearField };

const char* to_string(ChannelModel model);

/// Complex samples stored row-major as [n][m][k].
class ChannelTensor {
 public:
  ChannelTensor(OfdmGrid grid, ArrayGeometry geometry, double signal_power);

  std::size_t antennas() const { return n_; }
  std::size_t subcarriers() const { return m_; }
  std::size_t symbols() const { return k_; }
  std::size_t index(std::size_t n, std::size_t m, std::size_t k) const { return (n * m_ + m) * k_ + k; }

  cplx& at(std::size_t n, std::size_t m, std::size_t k) { return data_[index(n, m, k)]; }
  const cplx& at(std::size_t n, std::size_t m, std::size_t k) const { return data_[index(n, m, k)]; }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  const OfdmGrid& grid() const { return grid_; }
  const ArrayGeometry& geometry() const { return geometry_; }
  /// |beta|^2 of the synthesized path; the per-entry noise reference.
  double signal_power() const { return signal_power_; }

 private:
  OfdmGrid grid_;
  ArrayGeometry geometry_;
  double signal_power_;
  std::size_t n_, m_, k_;
  std::vector<cplx> data_;
};

/// Per-antenna propagation terms of one model: h = beta * exp(-j 2 pi f_m (delay[n] + k Ts v[n]/c)).
struct PathTerms {
  std::vector<double> delay_s;
  std::vector<double> velocity_mps;
};

PathTerms path_terms(ChannelModel model, const ArrayGeometry& geometry, const TargetState& target);

/// Planar-wave model with uniform Doppler. Linear arrays only.
ChannelTensor far_field_channel(const OfdmGrid& grid, const ArrayGeometry& geometry,
                                const TargetState& target);

/// Spherical-wave model with per-element Doppler; any geometry.
ChannelTensor near_field_channel(const OfdmGrid& grid, const ArrayGeometry& geometry,
                                 const TargetState& target);

ChannelTensor synthesize(ChannelModel model, const OfdmGrid& grid, const ArrayGeometry& geometry,
                         const TargetState& target);

/// Largest unwrapped phase difference (radians) between the near- and
/// far-field models over every (n, m, k) entry of the grid.
double max_phase_gap(const OfdmGrid& grid, const ArrayGeometry& geometry, const TargetState& target);

inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

/// Adds circularly-symmetric complex Gaussian noise with per-entry variance
/// signal_power / 10^(snr_db/10). snr_db = +inf returns an exact copy.
ChannelTensor add_noise(const ChannelTensor& tensor, double snr_db, std::uint64_t seed);

/// Deterministic complex Gaussian source (unit variance, i.e. 1/2 per part).
/// Built on mt19937_64's raw output so the stream is identical on every
/// standard library.
class ComplexGaussian {
 public:
  explicit ComplexGaussian(std::uint64_t seed) : engine_(seed) {}
  cplx operator()();

 private:
  std::mt19937_64 engine_;
};

}  // namespace nfisac
