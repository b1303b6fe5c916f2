#include <array>
#include <utility>

#include "nfisac/runner.hpp"

namespace nfisac {
namespace {

// Angular, delay and joint domain views at 60 GHz over 6 GHz.
constexpr const char* kFig1 = R"(experiment: channel-gallery
seed: 0
grid:
  carrier_hz: 60.0e9
  n_subcarriers: 512
  subcarrier_spacing_hz: 11.71875e6
  n_symbols: 1
array:
  kind: dense_ula
  n_antennas: 512
  spacing_wavelengths: 0.5
target:
  theta_deg: 60
gallery:
  far_range_m: 200
  near_range_m: 20
  snr_db: .inf
  floor_db: -60
)";

constexpr const char* kFig2 = R"(experiment: crb-sweep
seed: 0
sweep:
  carrier_hz: 60.0e9
  subcarrier_spacing_hz: 1.0e6
  sensing_duration_s: 1.0e-3
  snr_db: 0
  unknowns: [range, angle]
  bandwidths_hz: [1.0e6, 10.0e6, 100.0e6, 1000.0e6]
  antenna_counts: [64, 128, 256, 512]
array:
  kind: dense_ula
  spacing_wavelengths: 0.5
target:
  range_m: 20
  theta_deg: 60
)";

constexpr const char* kFig3 = R"(experiment: velocity-profiles
seed: 0
grid:
  carrier_hz: 28.0e9
  n_subcarriers: 1
  subcarrier_spacing_hz: 100.0e3
  n_symbols: 200
array:
  kind: dense_ula
  n_antennas: 512
  spacing_wavelengths: 0.5
target:
  theta_deg: 90
  v_radial_mps: 5
  v_transverse_mps: 10
profiles:
  ranges_m: [5, 50]
  snr_db: 0
  template_model: near_field
  velocity_min_mps: -20
  velocity_max_mps: 20
  velocity_step_mps: 0.25
)";

constexpr const char* kFig4 = R"(experiment: beam-compare
seed: 0
grid:
  carrier_hz: 28.0e9
  n_subcarriers: 512
  subcarrier_spacing_hz: 0.5e6
  n_symbols: 1
array:
  kind: dense_ula
  n_antennas: 512
  spacing_wavelengths: 0.5
beams:
  theta_deg: 90
  focal_ranges_m: [4, 8, 16]
  probe_min_m: 1
  probe_max_m: 200
  probe_points: 400
)";

constexpr const char* kFig5 = R"(experiment: crb-map
seed: 0
grid:
  carrier_hz: 60.0e9
  n_subcarriers: 1
  subcarrier_spacing_hz: 1.0e6
  n_symbols: 1
arrays:
  - kind: dense_ula
    n_antennas: 512
    spacing_wavelengths: 0.5
  - kind: sparse_ula
    n_antennas: 512
    spacing_wavelengths: 1.0
  - kind: uca
    n_antennas: 512
    radius_wavelengths: 127.75
map:
  snr_db: 0
  unknowns: [range, angle]
  range_min_m: 2
  range_max_m: 40
  range_points: 64
  theta_min_deg: 5
  theta_max_deg: 175
  theta_points: 64
)";

constexpr std::array<std::pair<const char*, const char*>, 5> kPresets{{
    {"fig1", kFig1}, {"fig2", kFig2}, {"fig3", kFig3}, {"fig4", kFig4}, {"fig5", kFig5}}};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : kPresets) out.emplace_back(name);
  return out;
}

std::optional<std::string> preset_text(const std::string& name) {
  for (const auto& [n, text] : kPresets)
    if (name == n) return std::string(text);
  return std::nullopt;
}

}  // namespace nfisac
