#pragma once

// Experiment configuration, presets and the run orchestrator.
//
// Config files are YAML with a strict schema: every key is known, every
// physics parameter is explicit. Only `seed` and `output` have defaults.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nfisac/beamforming.hpp"
#include "nfisac/channel.hpp"
#include "nfisac/crb.hpp"
#include "nfisac/geometry.hpp"

namespace nfisac {

enum class Experiment { ChannelGallery, CrbSweep, VelocityProfiles, BeamCompare, CrbMap };

/// CLI spelling, e.g. "crb-sweep".
const char* to_string(Experiment e);
std::optional<Experiment> experiment_from_string(const std::string& name);

struct ArraySpec {
  ArrayKind kind = ArrayKind::DenseUla;
  std::size_t n_antennas = 0;
  /// Spacing (linear kinds) or radius (Uca), in wavelengths.
  double size_wavelengths = 0.0;
  double orientation_deg = 0.0;

  ArrayGeometry build(double wavelength) const;
};

struct GallerySettings {
  OfdmGrid grid;
  ArraySpec array;
  double theta_deg = 0.0;
  double far_range_m = 0.0;
  double near_range_m = 0.0;
  double snr_db = kNoiseless;
  double floor_db = -60.0;
};

struct SweepSettings {
  double carrier_hz = 0.0;
  double subcarrier_spacing_hz = 0.0;
  double sensing_duration_s = 0.0;
  ArraySpec array;  // n_antennas unused; swept
  double range_m = 0.0;
  double theta_deg = 0.0;
  double snr_db = 0.0;
  std::vector<Unknown> unknowns;
  std::vector<double> bandwidths_hz;
  std::vector<std::size_t> antenna_counts;
};

struct VelocitySettings {
  OfdmGrid grid;
  ArraySpec array;
  double theta_deg = 0.0;
  double v_radial_mps = 0.0;
  double v_transverse_mps = 0.0;
  std::vector<double> ranges_m;
  double snr_db = 0.0;
  ChannelModel template_model = ChannelModel::NearField;
  double velocity_min_mps = 0.0;
  double velocity_max_mps = 0.0;
  double velocity_step_mps = 0.0;
};

struct BeamSettings {
  OfdmGrid grid;
  ArraySpec array;
  double theta_deg = 0.0;
  std::vector<double> focal_ranges_m;
  double probe_min_m = 0.0;
  double probe_max_m = 0.0;
  std::size_t probe_points = 0;
};

struct MapSettings {
  OfdmGrid grid;
  std::vector<ArraySpec> arrays;
  double snr_db = 0.0;
  std::vector<Unknown> unknowns;
  double range_min_m = 0.0;
  double range_max_m = 0.0;
  std::size_t range_points = 0;
  double theta_min_deg = 0.0;
  double theta_max_deg = 0.0;
  std::size_t theta_points = 0;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::ChannelGallery;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "nfisac-out";
  std::variant<GallerySettings, SweepSettings, VelocitySettings, BeamSettings, MapSettings> settings;
  /// The YAML text this config was parsed from.
  std::string source;
};

struct Diagnostic {
  /// 1-based; 0 when no location applies.
  int line = 0;
  int column = 0;
  std::string path;
  std::string message;

  std::string str() const;
};

struct ParseResult {
  std::optional<ExperimentConfig> config;
  std::vector<Diagnostic> diagnostics;
};

/// Parses and validates, collecting every violation. `config` is set only
/// when `diagnostics` is empty.
ParseResult parse_config(const std::string& yaml_text);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a config file; throws IoError if unreadable.
std::string read_text_file(const std::filesystem::path& path);
std::vector<Diagnostic> validate_config_file(const std::filesystem::path& path);

/// Names of the built-in presets ("fig1" ... "fig5").
std::vector<std::string> preset_names();
/// YAML text of a preset; nullopt for an unknown name.
std::optional<std::string> preset_text(const std::string& name);

struct OutputFile {
  std::string name;  // relative to the output directory
  std::string sha256;
  std::size_t bytes = 0;
};

struct RunManifest {
  std::string tool_version;
  Experiment experiment = Experiment::ChannelGallery;
  std::uint64_t seed = 0;
  std::string config_echo;
  std::string simd_isa;
  double wall_seconds = 0.0;
  std::vector<OutputFile> files;
};

const char* tool_version();

/// Runs the experiment, writing its CSVs and manifest.json into
/// config.output_dir. Throws IoError when outputs cannot be written and
/// NumericalFailure when the experiment produces no usable result.
RunManifest run(const ExperimentConfig& config);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace nfisac
