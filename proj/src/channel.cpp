#include "nfisac/channel.hpp"

#include <cmath>
#include <string>

namespace nfisac {

double OfdmGrid::subcarrier_frequency(std::size_t m) const {
  const double offset = static_cast<double>(m) - (static_cast<double>(n_subcarriers) - 1.0) / 2.0;
  return carrier_hz + offset * subcarrier_spacing_hz;
}

std::vector<double> OfdmGrid::subcarrier_frequencies() const {
  std::vector<double> f(n_subcarriers);
  for (std::size_t m = 0; m < n_subcarriers; ++m) f[m] = subcarrier_frequency(m);
  return f;
}

void OfdmGrid::validate() const {
  if (!(std::isfinite(carrier_hz) && carrier_hz > 0.0)) throw InvalidArgument("carrier must be positive");
  if (n_subcarriers < 1) throw InvalidArgument("need at least one subcarrier");
  if (n_symbols < 1) throw InvalidArgument("need at least one symbol");
  if (!(std::isfinite(subcarrier_spacing_hz) && subcarrier_spacing_hz > 0.0))
    throw InvalidArgument("subcarrier spacing must be positive");
  if (!(subcarrier_frequency(0) > 0.0)) throw InvalidArgument("lowest subcarrier frequency must be positive");
}

const char* to_string(ChannelModel model) {
  return model == ChannelModel::FarField ? "far_field" : "near_field";
}

ChannelTensor::ChannelTensor(OfdmGrid grid, ArrayGeometry geometry, double signal_power)
    : grid_(grid),
      geometry_(std::move(geometry)),
      signal_power_(signal_power),
      n_(geometry_.size()),
      m_(grid.n_subcarriers),
      k_(grid.n_symbols),
      data_(n_ * m_ * k_) {}

PathTerms path_terms(ChannelModel model, const ArrayGeometry& geometry, const TargetState& target) {
  target.validate();
  const auto pos = geometry.positions();
  PathTerms terms{std::vector<double>(pos.size()), std::vector<double>(pos.size())};
  if (model == ChannelModel::FarField) {
    if (!geometry.is_linear()) throw InvalidArgument("far-field model is defined for linear arrays only");
    const double tau = target.delay();
    const double cos_theta = std::cos(target.theta_rad);
    for (std::size_t n = 0; n < pos.size(); ++n) {
      terms.delay_s[n] = tau - (pos[n].x / kSpeedOfLight) * cos_theta;
      terms.velocity_mps[n] = target.v_radial;
    }
  } else {
    for (std::size_t n = 0; n < pos.size(); ++n) {
      const SightLine s = sight_line(target, pos[n]);
      terms.delay_s[n] = s.distance / kSpeedOfLight;
      terms.velocity_mps[n] = target.v_radial * s.along + target.v_transverse * s.across;
    }
  }
  return terms;
}

namespace {

ChannelTensor fill(const OfdmGrid& grid, const ArrayGeometry& geometry, const TargetState& target,
                   const PathTerms& terms) {
  ChannelTensor out(grid, geometry, std::norm(target.gain));
  const std::vector<double> freqs = grid.subcarrier_frequencies();
  const double ts_over_c = grid.symbol_duration() / kSpeedOfLight;
  for (std::size_t n = 0; n < out.antennas(); ++n) {
    for (std::size_t m = 0; m < out.subcarriers(); ++m) {
      const double f = freqs[m];
      const double static_cycles = f * terms.delay_s[n];
      const double doppler_cycles = f * ts_over_c * terms.velocity_mps[n];
      for (std::size_t k = 0; k < out.symbols(); ++k) {
        const double cycles = static_cycles + static_cast<double>(k) * doppler_cycles;
        out.at(n, m, k) = target.gain * phasor_from_cycles(cycles);
      }
    }
  }
  return out;
}

}  // namespace

ChannelTensor far_field_channel(const OfdmGrid& grid, const ArrayGeometry& geometry,
                                const TargetState& target) {
  grid.validate();
  return fill(grid, geometry, target, path_terms(ChannelModel::FarField, geometry, target));
}

ChannelTensor near_field_channel(const OfdmGrid& grid, const ArrayGeometry& geometry,
                                 const TargetState& target) {
  grid.validate();
  return fill(grid, geometry, target, path_terms(ChannelModel::NearField, geometry, target));
}

ChannelTensor synthesize(ChannelModel model, const OfdmGrid& grid, const ArrayGeometry& geometry,
                         const TargetState& target) {
  return model == ChannelModel::FarField ? far_field_channel(grid, geometry, target)
                                         : near_field_channel(grid, geometry, target);
}

double max_phase_gap(const OfdmGrid& grid, const ArrayGeometry& geometry, const TargetState& target) {
  grid.validate();
  const PathTerms near = path_terms(ChannelModel::NearField, geometry, target);
  const PathTerms far = path_terms(ChannelModel::FarField, geometry, target);
  const std::vector<double> freqs = grid.subcarrier_frequencies();
  const double ts_over_c = grid.symbol_duration() / kSpeedOfLight;
  const double last_k = static_cast<double>(grid.n_symbols - 1);
  double worst = 0.0;
  for (std::size_t n = 0; n < near.delay_s.size(); ++n) {
    const double d_delay = near.delay_s[n] - far.delay_s[n];
    const double d_vel = near.velocity_mps[n] - far.velocity_mps[n];
    for (double f : freqs) {
      // Linear in k, so the extremes sit at k = 0 and k = K-1.
      const double g0 = std::abs(kTwoPi * f * d_delay);
      const double g1 = std::abs(kTwoPi * f * (d_delay + last_k * ts_over_c * d_vel));
      worst = std::max({worst, g0, g1});
    }
  }
  return worst;
}

cplx ComplexGaussian::operator()() {
  constexpr double kScale = 0x1.0p-53;
  // u1 in (0, 1] keeps the log finite.
  const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * kScale;
  const double u2 = static_cast<double>(engine_() >> 11) * kScale;
  const double radius = std::sqrt(-std::log(u1));
  const double angle = kTwoPi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

ChannelTensor add_noise(const ChannelTensor& tensor, double snr_db, std::uint64_t seed) {
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
    throw InvalidArgument("snr must be finite or +inf");
  ChannelTensor out = tensor;
  if (snr_db == kNoiseless) return out;
  const double sigma = std::sqrt(tensor.signal_power() / std::pow(10.0, snr_db / 10.0));
  ComplexGaussian noise(seed);
  for (cplx& v : out.data()) v += sigma * noise();
  return out;
}

}  // namespace nfisac
