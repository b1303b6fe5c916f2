#pragma once

// Unitary DFT views of a per-symbol N x M channel matrix:
//   spatial-delay      H F_M^H
//   angular-frequency  F_N^H H
//   angular-delay      F_N^H H F_M^H
// with F_L[p, q] = exp(-j 2 pi p q / L) / sqrt(L).

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nfisac/channel.hpp"

namespace nfisac {

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Domain { SpatialFrequency, SpatialDelay, AngularFrequency, AngularDelay };

const char* to_string(Domain domain);

struct DomainMatrix {
  CMatrix data;
  Domain domain = Domain::SpatialFrequency;
};

/// Slice H[k] (antennas x subcarriers) out of a channel tensor.
CMatrix symbol_matrix(const ChannelTensor& tensor, std::size_t k);

DomainMatrix to_spatial_delay(const CMatrix& h);
DomainMatrix to_angular_frequency(const CMatrix& h);
DomainMatrix to_angular_delay(const CMatrix& h);
DomainMatrix transform(const CMatrix& h, Domain target);
/// Undoes whichever transform produced `m`.
CMatrix to_spatial_frequency(const DomainMatrix& m);

/// Normalized spatial frequency (cycles per element, in [-1/2, 1/2)) of a
/// steering vector exp(+j 2 pi psi n) whose F_N^H image peaks at `bin`.
double angular_bin_spatial_frequency(std::size_t bin, std::size_t n_bins);

/// Angle from the array axis for an angular bin. Dense ULA only (sparse
/// layouts alias); nullopt when the bin falls outside the visible region.
std::optional<double> angular_bin_angle(std::size_t bin, const ArrayGeometry& geometry,
                                        double frequency_hz);

/// Delay (s) of delay bin `bin`: bin / (M * spacing).
double delay_bin_seconds(std::size_t bin, const OfdmGrid& grid);

/// 20 log10 |.| relative to the peak, clamped below at floor_db. With
/// `centered`, rows and columns are fftshifted so bin 0 lands mid-axis.
Eigen::MatrixXd heatmap_db(const DomainMatrix& m, double floor_db, bool centered);

/// Header "bin,<c0>,<c1>,...", then one row per matrix row. Labels are the
/// raw bin indices, or signed offsets when `centered`.
void write_heatmap_csv(const Eigen::MatrixXd& db, bool centered, std::ostream& out);

/// Support shape of an angular-delay power map.
struct SupportSpread {
  /// For each delay bin whose peak reaches core_db: angular bins >= level_db.
  std::vector<std::size_t> angular_per_delay;
  /// For each angular bin whose peak reaches core_db: delay bins >= level_db.
  std::vector<std::size_t> delay_per_angle;
  double angular_spread_ratio = 1.0;  // max/min of angular_per_delay
  double delay_spread_ratio = 1.0;    // max/min of delay_per_angle
};

/// Thresholds are dB relative to the global peak power.
SupportSpread measure_support(const DomainMatrix& angular_delay, double level_db, double core_db);

}  // namespace nfisac
