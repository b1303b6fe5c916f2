#include "nfisac/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nfisac/parallel.hpp"
#include "nfisac/simd/kernels.hpp"

namespace nfisac {
namespace {

// exp(+j 2 pi cycles) split into real/imag parts.
void conj_phasor(double cycles, double& re, double& im) {
  const cplx p = phasor_from_cycles(cycles);
  re = p.real();
  im = -p.imag();
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

}  // namespace

VelocityGrid VelocityGrid::uniform(double min_mps, double max_mps, double step_mps) {
  if (!(std::isfinite(min_mps) && std::isfinite(max_mps) && std::isfinite(step_mps) && step_mps > 0.0 &&
        max_mps >= min_mps))
    throw InvalidArgument("velocity grid needs finite bounds and a positive step");
  const auto first = static_cast<long>(std::ceil(min_mps / step_mps - 1e-9));
  const auto last = static_cast<long>(std::floor(max_mps / step_mps + 1e-9));
  std::vector<double> axis;
  for (long i = first; i <= last; ++i) axis.push_back(static_cast<double>(i) * step_mps);
  return {axis, axis};
}

void VelocityGrid::validate() const {
  for (const auto* axis : {&radial, &transverse}) {
    if (axis->empty()) throw InvalidArgument("velocity grid axis is empty");
    for (double v : *axis)
      if (!std::isfinite(v)) throw InvalidArgument("velocity grid axis has a non-finite sample");
    if (!strictly_increasing(*axis)) throw InvalidArgument("velocity grid axis must be strictly increasing");
    if (std::find(axis->begin(), axis->end(), 0.0) == axis->end())
      throw InvalidArgument("velocity grid axis must contain 0");
  }
}

VelocityProfile velocity_profile(const ChannelTensor& obs, AssumedPosition position, const VelocityGrid& grid,
                                 ChannelModel template_model) {
  grid.validate();
  if (obs.symbols() < 2) throw InvalidArgument("velocity profiling needs at least two symbols");
  const double obs_energy = simd::squared_norm(obs.data());
  if (!(obs_energy > 0.0)) throw InvalidArgument("observation has no energy");

  const ArrayGeometry& geom = obs.geometry();
  const OfdmGrid& og = obs.grid();
  const std::size_t n_ant = obs.antennas(), n_sc = obs.subcarriers(), n_sym = obs.symbols();
  const std::size_t lanes = n_ant * n_sc;
  const std::size_t stride = simd::padded_lanes(lanes);

  // Template path terms; unit radial / transverse speeds give the per-element
  // projection coefficients, since v_n is linear in (v_radial, v_transverse).
  TargetState probe{position.range_m, position.theta_rad, 1.0, 0.0, {1.0, 0.0}};
  const PathTerms radial_terms = path_terms(template_model, geom, probe);
  probe.v_radial = 0.0;
  probe.v_transverse = 1.0;
  const PathTerms transverse_terms = path_terms(template_model, geom, probe);

  const std::vector<double> freqs = og.subcarrier_frequencies();
  const double ts_over_c = og.symbol_duration() / kSpeedOfLight;

  // Observation with the static template phase folded in, SoA by symbol.
  std::vector<double> y_re(stride * n_sym, 0.0), y_im(stride * n_sym, 0.0);
  for (std::size_t n = 0; n < n_ant; ++n)
    for (std::size_t m = 0; m < n_sc; ++m) {
      double wr, wi;
      conj_phasor(freqs[m] * radial_terms.delay_s[n], wr, wi);
      const std::size_t l = n * n_sc + m;
      for (std::size_t k = 0; k < n_sym; ++k) {
        const cplx v = obs.at(n, m, k);
        y_re[k * stride + l] = v.real() * wr - v.imag() * wi;
        y_im[k * stride + l] = v.real() * wi + v.imag() * wr;
      }
    }
  const simd::SoaView view{y_re.data(), y_im.data(), lanes, stride, n_sym};

  // Per-symbol Doppler rotation tables for each axis sample.
  auto table = [&](const std::vector<double>& axis, const PathTerms& terms) {
    std::vector<double> re(axis.size() * stride, 0.0), im(axis.size() * stride, 0.0);
    for (std::size_t i = 0; i < axis.size(); ++i)
      for (std::size_t n = 0; n < n_ant; ++n)
        for (std::size_t m = 0; m < n_sc; ++m) {
          const std::size_t l = n * n_sc + m;
          conj_phasor(freqs[m] * ts_over_c * terms.velocity_mps[n] * axis[i], re[i * stride + l],
                      im[i * stride + l]);
        }
    return std::pair{std::move(re), std::move(im)};
  };
  const auto [ar_re, ar_im] = table(grid.radial, radial_terms);
  const auto [at_re, at_im] = table(grid.transverse, transverse_terms);

  const std::size_t n_r = grid.radial.size(), n_t = grid.transverse.size();
  const double norm = obs_energy * static_cast<double>(lanes * n_sym);
  VelocityProfile prof;
  prof.grid = grid;
  prof.values.assign(n_r * n_t, 0.0);
  parallel_for(n_r, [&](std::size_t i) {
    std::vector<double> zr(stride, 0.0), zi(stride, 0.0);
    const double* rr = ar_re.data() + i * stride;
    const double* ri = ar_im.data() + i * stride;
    for (std::size_t j = 0; j < n_t; ++j) {
      const double* tr = at_re.data() + j * stride;
      const double* ti = at_im.data() + j * stride;
      for (std::size_t l = 0; l < lanes; ++l) {
        zr[l] = rr[l] * tr[l] - ri[l] * ti[l];
        zi[l] = rr[l] * ti[l] + ri[l] * tr[l];
      }
      prof.values[i * n_t + j] = std::norm(simd::polyval_sum(view, zr.data(), zi.data())) / norm;
    }
  });

  const auto peak_it = std::max_element(prof.values.begin(), prof.values.end());
  const auto peak_idx = static_cast<std::size_t>(peak_it - prof.values.begin());
  prof.peak_correlation = *peak_it;
  prof.peak_radial_index = peak_idx / n_t;
  prof.peak_transverse_index = peak_idx % n_t;
  prof.peak_radial = grid.radial[prof.peak_radial_index];
  prof.peak_transverse = grid.transverse[prof.peak_transverse_index];
  if (prof.peak_correlation > 0.0)
    for (double& v : prof.values) v /= prof.peak_correlation;
  prof.radial_cut.resize(n_r);
  prof.transverse_cut.resize(n_t);
  for (std::size_t i = 0; i < n_r; ++i) prof.radial_cut[i] = prof.at(i, prof.peak_transverse_index);
  for (std::size_t j = 0; j < n_t; ++j) prof.transverse_cut[j] = prof.at(prof.peak_radial_index, j);
  return prof;
}

double profile_dynamic_range(std::span<const double> cut) {
  if (cut.empty()) throw InvalidArgument("empty profile cut");
  const auto peak_it = std::max_element(cut.begin(), cut.end());
  const auto peak = static_cast<std::size_t>(peak_it - cut.begin());
  std::vector<double> off;
  for (std::size_t i = 0; i < cut.size(); ++i) {
    const std::size_t gap = i > peak ? i - peak : peak - i;
    if (gap > 3) off.push_back(cut[i]);
  }
  if (off.empty() || !(*peak_it > 0.0)) return 0.0;
  std::sort(off.begin(), off.end());
  const std::size_t h = off.size() / 2;
  const double median = off.size() % 2 ? off[h] : 0.5 * (off[h - 1] + off[h]);
  if (median <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(*peak_it / median);
}

}  // namespace nfisac
