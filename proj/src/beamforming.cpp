#include "nfisac/beamforming.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "nfisac/simd/kernels.hpp"

namespace nfisac {
namespace {

std::vector<cplx> normalized_conj(std::vector<cplx> steering) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(steering.size()));
  for (auto& a : steering) a = std::conj(a) * scale;
  return steering;
}

void require_kind(const BeamWeights& w, BeamKind kind) {
  if (w.kind != kind) throw InvalidArgument(std::string("beam weights are not ") + to_string(kind));
}

void require_probe(std::span<const double> d) {
  if (d.empty()) throw InvalidArgument("probe axis is empty");
  for (double r : d)
    if (!(std::isfinite(r) && r > 0.0)) throw InvalidArgument("probe distances must be positive and finite");
}

// Half-power crossing on one side of the focus: geometric outward scan, then
// bisection on the bracket.
double crossing(const std::function<double(double)>& rel_gain, double focus, double factor, double limit,
                bool& found) {
  constexpr double kHalf = 0.5;
  double inside = focus;
  double r = focus * factor;
  while (factor > 1.0 ? r <= limit : r >= limit) {
    if (rel_gain(r) < kHalf) {
      double a = inside, b = r;
      for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (a + b);
        (rel_gain(mid) < kHalf ? b : a) = mid;
      }
      found = true;
      return 0.5 * (a + b);
    }
    inside = r;
    r *= factor;
  }
  found = false;
  return limit;
}

HalfPowerInterval scan_interval(const std::function<double(double)>& rel_gain, double focus) {
  constexpr double kStep = 1.0005;
  HalfPowerInterval out;
  bool lo_ok = false, hi_ok = false;
  out.lower_m = crossing(rel_gain, focus, 1.0 / kStep, focus * 1e-3, lo_ok);
  out.upper_m = crossing(rel_gain, focus, kStep, focus * 1e3, hi_ok);
  out.bounded = lo_ok && hi_ok;
  return out;
}

}  // namespace

const char* to_string(BeamKind kind) {
  return kind == BeamKind::SpatialFocusing ? "focusing" : "temporal";
}

std::vector<cplx> spatial_steering(const ArrayGeometry& geometry, FocalPoint point, double frequency_hz) {
  const TargetState t{point.range_m, point.theta_rad, 0.0, 0.0, {1.0, 0.0}};
  std::vector<cplx> a;
  a.reserve(geometry.size());
  for (const Point2& q : geometry.positions()) a.push_back(phasor_from_cycles(frequency_hz * element_delay(t, q)));
  return a;
}

std::vector<cplx> delay_steering(const OfdmGrid& grid, double delay_s) {
  std::vector<cplx> a;
  a.reserve(grid.n_subcarriers);
  for (double f : grid.subcarrier_frequencies()) a.push_back(phasor_from_cycles(f * delay_s));
  return a;
}

BeamWeights focusing_weights(const ArrayGeometry& geometry, FocalPoint focal, double frequency_hz) {
  if (!(focal.range_m > 0.0 && std::isfinite(focal.range_m)))
    throw InvalidArgument("focal range must be positive");
  if (!(frequency_hz > 0.0 && std::isfinite(frequency_hz))) throw InvalidArgument("frequency must be positive");
  BeamWeights w;
  w.kind = BeamKind::SpatialFocusing;
  w.coefficients = normalized_conj(spatial_steering(geometry, focal, frequency_hz));
  w.focal = focal;
  w.frequency_hz = frequency_hz;
  return w;
}

BeamWeights temporal_weights(const OfdmGrid& grid, double focal_delay_s) {
  grid.validate();
  if (!(focal_delay_s > 0.0 && std::isfinite(focal_delay_s))) throw InvalidArgument("focal delay must be positive");
  BeamWeights w;
  w.kind = BeamKind::TemporalBeamforming;
  w.coefficients = normalized_conj(delay_steering(grid, focal_delay_s));
  w.focal = {focal_delay_s * kSpeedOfLight, kPi / 2.0};
  w.frequency_hz = grid.carrier_hz;
  w.grid = grid;
  return w;
}

double beam_gain(const BeamWeights& weights, const ArrayGeometry& geometry, FocalPoint point) {
  require_kind(weights, BeamKind::SpatialFocusing);
  const auto a = spatial_steering(geometry, point, weights.frequency_hz);
  if (a.size() != weights.coefficients.size()) throw InvalidArgument("weights do not match the array size");
  return std::norm(simd::dot(weights.coefficients, a));
}

double beam_gain(const BeamWeights& weights, double delay_s) {
  require_kind(weights, BeamKind::TemporalBeamforming);
  return std::norm(simd::dot(weights.coefficients, delay_steering(weights.grid, delay_s)));
}

BeamPattern gain_profile(const BeamWeights& weights, const ArrayGeometry& geometry,
                         std::span<const double> distances_m) {
  require_probe(distances_m);
  BeamPattern p;
  p.kind = weights.kind;
  p.focal = weights.focal;
  p.distances_m.assign(distances_m.begin(), distances_m.end());
  p.focal_gain = beam_gain(weights, geometry, weights.focal);
  for (double r : distances_m)
    p.gain_db.push_back(db_from_power(beam_gain(weights, geometry, {r, weights.focal.theta_rad}) / p.focal_gain));
  return p;
}

BeamPattern gain_profile(const BeamWeights& weights, std::span<const double> distances_m) {
  require_probe(distances_m);
  BeamPattern p;
  p.kind = weights.kind;
  p.focal = weights.focal;
  p.distances_m.assign(distances_m.begin(), distances_m.end());
  p.focal_gain = beam_gain(weights, weights.focal.range_m / kSpeedOfLight);
  for (double r : distances_m)
    p.gain_db.push_back(db_from_power(beam_gain(weights, r / kSpeedOfLight) / p.focal_gain));
  return p;
}

double HalfPowerInterval::width_m() const {
  return bounded ? upper_m - lower_m : std::numeric_limits<double>::infinity();
}

HalfPowerInterval depth_of_focus(const BeamWeights& weights, const ArrayGeometry& geometry) {
  const double g0 = beam_gain(weights, geometry, weights.focal);
  const double theta = weights.focal.theta_rad;
  return scan_interval([&](double r) { return beam_gain(weights, geometry, {r, theta}) / g0; },
                       weights.focal.range_m);
}

HalfPowerInterval depth_of_focus(const BeamWeights& weights) {
  const double g0 = beam_gain(weights, weights.focal.range_m / kSpeedOfLight);
  return scan_interval([&](double r) { return beam_gain(weights, r / kSpeedOfLight) / g0; },
                       weights.focal.range_m);
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi >= lo) || n == 0) throw InvalidArgument("log_spaced needs 0 < lo <= hi and n >= 1");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.back() = hi;
  return out;
}

}  // namespace nfisac
