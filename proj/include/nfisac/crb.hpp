#pragma once

// Fisher information and Cramer-Rao bounds for a point target observed as
// y = mu(eta) + w, w ~ CN(0, sigma^2 I), with mu the noiseless channel tensor.
//
//   FIM[i][j] = (2 / sigma^2) Re sum_{n,m,k} conj(d mu / d eta_i) (d mu / d eta_j)
//
// The complex gain (Re beta, Im beta) is always a nuisance unknown.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nfisac/channel.hpp"

namespace nfisac {

enum class Unknown { Range, Delay, Angle, RadialVelocity, TransverseVelocity, GainReal, GainImag };

const char* to_string(Unknown u);

struct EstimationScenario {
  OfdmGrid grid;
  ArrayGeometry geometry;
  TargetState target;
  double snr_db = 0.0;
  ChannelModel model = ChannelModel::NearField;
  std::vector<Unknown> unknowns{Unknown::Range, Unknown::Angle, Unknown::GainReal, Unknown::GainImag};

  /// sigma^2 = |beta|^2 / 10^(snr_db/10), per (n, m, k) entry.
  double noise_variance() const;
  /// Checks grid/target invariants, finite SNR, distinct unknowns containing
  /// both gain parts, and that no element is collocated with the target.
  void validate() const;
};

/// Cond > this (Jacobi-scaled, gain nuisance removed) is reported as unidentifiable.
inline constexpr double kUnidentifiableCondition = 1e12;

struct CrbReport {
  std::vector<Unknown> unknowns;
  Eigen::MatrixXd fim;
  /// Diagonal of FIM^-1 in the order of `unknowns`; +inf when unidentifiable.
  std::vector<double> crb;
  double condition_number = 0.0;
  bool identifiable = false;

  std::optional<double> bound(Unknown u) const;
};

/// d mu / d eta as an N x M x K x p tensor stored [i][n][m][k].
class GradientTensor {
 public:
  GradientTensor(std::size_t n, std::size_t m, std::size_t k, std::size_t p)
      : n_(n), m_(m), k_(k), p_(p), data_(n * m * k * p) {}

  std::size_t parameters() const { return p_; }
  std::size_t entries() const { return n_ * m_ * k_; }
  cplx& at(std::size_t n, std::size_t m, std::size_t k, std::size_t i) {
    return data_[((i * n_ + n) * m_ + m) * k_ + k];
  }
  const cplx& at(std::size_t n, std::size_t m, std::size_t k, std::size_t i) const {
    return data_[((i * n_ + n) * m_ + m) * k_ + k];
  }
  /// All entries of parameter i, contiguous in [n][m][k] order.
  std::span<const cplx> parameter(std::size_t i) const {
    return {data_.data() + i * entries(), entries()};
  }

 private:
  std::size_t n_, m_, k_, p_;
  std::vector<cplx> data_;
};

/// Closed-form derivatives of the noiseless tensor with respect to each unknown.
GradientTensor mean_signal_gradient(const EstimationScenario& scenario);

/// Fisher information via separable sums over (n, k) and m; O(N p^2).
CrbReport fisher_information(const EstimationScenario& scenario);

/// Fisher information straight from the gradient tensor (O(N M K p^2)).
/// Used to cross-check the separable route on small scenarios.
CrbReport fisher_information_dense(const EstimationScenario& scenario);

struct PolarRegion {
  std::vector<double> ranges_m;
  std::vector<double> angles_rad;
};

struct CrbMap {
  std::vector<double> ranges_m;
  std::vector<double> angles_rad;
  /// CRB of the range (m^2), [range index][angle index]; +inf where unidentifiable.
  std::vector<double> crb_range;
  std::size_t unidentifiable_cells = 0;

  double at(std::size_t ri, std::size_t ai) const { return crb_range[ri * angles_rad.size() + ai]; }
};

/// Moves the template's target over the region (keeping its velocity and gain)
/// and evaluates CRB(r) in each cell. The template's unknowns must include Range.
CrbMap crb_map(const EstimationScenario& scenario, const PolarRegion& region);

}  // namespace nfisac
