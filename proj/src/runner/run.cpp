#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "nfisac/csv.hpp"
#include "nfisac/runner.hpp"
#include "nfisac/simd/kernels.hpp"
#include "nfisac/transforms.hpp"
#include "nfisac/velocity.hpp"

#ifndef NFISAC_VERSION
#define NFISAC_VERSION "0.0.0"
#endif

namespace nfisac {
namespace {

namespace fs = std::filesystem;

class OutputSink {
 public:
  explicit OutputSink(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) throw IoError("cannot create output directory " + dir_.string());
  }

  void write(const std::string& name, const std::string& content, bool listed = true) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("failed writing " + path.string());
    if (listed) files_.push_back({name, sha256_hex(content), content.size()});
  }

  const std::vector<OutputFile>& files() const { return files_; }

 private:
  fs::path dir_;
  std::vector<OutputFile> files_;
};

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n, lo);
  for (std::size_t i = 1; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  if (n > 1) out.back() = hi;
  return out;
}

std::string heatmap_text(const DomainMatrix& m, double floor_db) {
  std::ostringstream os;
  write_heatmap_csv(heatmap_db(m, floor_db, false), false, os);
  return os.str();
}

// Distance tags such as "5m" or "0.5m" for file names.
std::string range_tag(double r) { return format_double(r) + "m"; }

void run_gallery(const GallerySettings& s, std::uint64_t seed, OutputSink& sink) {
  const ArrayGeometry geom = s.array.build(wavelength_of(s.grid.carrier_hz));
  const double theta = deg_to_rad(s.theta_deg);
  struct Case {
    const char* tag;
    ChannelModel model;
    double range;
  };
  const Case cases[] = {{"far", ChannelModel::FarField, s.far_range_m}, {"near", ChannelModel::NearField, s.near_range_m}};

  std::string support = (CsvRow() << "case" << "range_m" << "level_db" << "core_db" << "angular_spread_ratio"
                       << "delay_spread_ratio")
                 .str();
  std::uint64_t case_seed = seed;
  for (const Case& c : cases) {
    const TargetState target{c.range, theta, 0.0, 0.0, {1.0, 0.0}};
    ChannelTensor tensor = synthesize(c.model, s.grid, geom, target);
    if (std::isfinite(s.snr_db)) tensor = add_noise(tensor, s.snr_db, case_seed);
    ++case_seed;
    const CMatrix h = symbol_matrix(tensor, 0);
    for (Domain d : {Domain::SpatialDelay, Domain::AngularFrequency, Domain::AngularDelay})
      sink.write(std::string(c.tag) + "_" + to_string(d) + ".csv", heatmap_text(transform(h, d), s.floor_db));
    const DomainMatrix ad = to_angular_delay(h);
    for (auto [level, core] : {std::pair{-20.0, -20.0}, std::pair{-10.0, -6.0}}) {
      const SupportSpread sp = measure_support(ad, level, core);
      support += (CsvRow() << c.tag << c.range << level << core << sp.angular_spread_ratio << sp.delay_spread_ratio)
                     .str();
    }
  }
  sink.write("support.csv", support);

  std::string gaps = (CsvRow() << "range_m" << "max_phase_gap_rad").str();
  for (double r : {20.0, 200.0, 2000.0, 2e5, 1e6})
    gaps += (CsvRow() << r << max_phase_gap(s.grid, geom, {r, theta, 0.0, 0.0, {1.0, 0.0}})).str();
  sink.write("model_gap.csv", gaps);
}

void run_sweep(const SweepSettings& s, OutputSink& sink) {
  const double lambda = wavelength_of(s.carrier_hz);
  const auto n_symbols = static_cast<std::size_t>(std::floor(s.sensing_duration_s * s.subcarrier_spacing_hz + 1e-9));
  std::string csv = (CsvRow() << "bandwidth_hz" << "n_antennas" << "crb_r_m2" << "sqrt_crb_m").str();
  std::size_t finite = 0;
  for (std::size_t n : s.antenna_counts) {
    ArraySpec spec = s.array;
    spec.n_antennas = n;
    const ArrayGeometry geom = spec.build(lambda);
    for (double bw : s.bandwidths_hz) {
      const auto m = static_cast<std::size_t>(std::llround(bw / s.subcarrier_spacing_hz));
      EstimationScenario sc{{s.carrier_hz, m, s.subcarrier_spacing_hz, n_symbols},
                            geom,
                            {s.range_m, deg_to_rad(s.theta_deg), 0.0, 0.0, {1.0, 0.0}},
                            s.snr_db,
                            ChannelModel::NearField,
                            s.unknowns};
      const double crb = fisher_information(sc).bound(Unknown::Range).value();
      if (std::isfinite(crb)) ++finite;
      csv += (CsvRow() << bw << n << crb << std::sqrt(crb)).str();
    }
  }
  if (finite == 0) throw NumericalFailure("every sweep point is unidentifiable");
  sink.write("crb_sweep.csv", csv);
}

void run_velocity(const VelocitySettings& s, std::uint64_t seed, OutputSink& sink) {
  const ArrayGeometry geom = s.array.build(wavelength_of(s.grid.carrier_hz));
  const double theta = deg_to_rad(s.theta_deg);
  const VelocityGrid vgrid = VelocityGrid::uniform(s.velocity_min_mps, s.velocity_max_mps, s.velocity_step_mps);
  std::string summary = (CsvRow() << "range_m" << "peak_v_radial" << "peak_v_transverse" << "peak_correlation"
                                  << "radial_dynamic_range_db" << "transverse_dynamic_range_db")
                            .str();
  for (std::size_t i = 0; i < s.ranges_m.size(); ++i) {
    const double r = s.ranges_m[i];
    const TargetState target{r, theta, s.v_radial_mps, s.v_transverse_mps, {1.0, 0.0}};
    ChannelTensor obs = near_field_channel(s.grid, geom, target);
    if (std::isfinite(s.snr_db)) obs = add_noise(obs, s.snr_db, seed + i);
    const VelocityProfile p = velocity_profile(obs, {r, theta}, vgrid, s.template_model);
    if (!(p.peak_correlation > 0.0)) throw NumericalFailure("velocity profile has no correlation peak");

    const std::string tag = "velocity_" + range_tag(r);
    std::string surface = (CsvRow() << "v_r" << "v_t" << "value").str();
    for (std::size_t a = 0; a < vgrid.radial.size(); ++a)
      for (std::size_t b = 0; b < vgrid.transverse.size(); ++b)
        surface += (CsvRow() << vgrid.radial[a] << vgrid.transverse[b] << p.at(a, b)).str();
    sink.write(tag + ".csv", surface);
    std::string rc = (CsvRow() << "v_r" << "value").str();
    for (std::size_t a = 0; a < vgrid.radial.size(); ++a) rc += (CsvRow() << vgrid.radial[a] << p.radial_cut[a]).str();
    sink.write(tag + "_radial_cut.csv", rc);
    std::string tc = (CsvRow() << "v_t" << "value").str();
    for (std::size_t b = 0; b < vgrid.transverse.size(); ++b)
      tc += (CsvRow() << vgrid.transverse[b] << p.transverse_cut[b]).str();
    sink.write(tag + "_transverse_cut.csv", tc);

    summary += (CsvRow() << r << p.peak_radial << p.peak_transverse << p.peak_correlation
                         << profile_dynamic_range(p.radial_cut) << profile_dynamic_range(p.transverse_cut))
                   .str();
  }
  sink.write("velocity_summary.csv", summary);
}

void run_beams(const BeamSettings& s, OutputSink& sink) {
  const ArrayGeometry geom = s.array.build(wavelength_of(s.grid.carrier_hz));
  const double theta = deg_to_rad(s.theta_deg);
  const std::vector<double> probe = log_spaced(s.probe_min_m, s.probe_max_m, s.probe_points);
  std::string profiles = (CsvRow() << "distance_m" << "gain_db" << "kind" << "focal_distance_m").str();
  std::string widths = (CsvRow() << "kind" << "focal_distance_m" << "lower_m" << "upper_m" << "width_m").str();
  for (double r0 : s.focal_ranges_m) {
    const BeamWeights fw = focusing_weights(geom, {r0, theta}, s.grid.carrier_hz);
    const BeamWeights tw = temporal_weights(s.grid, r0 / kSpeedOfLight);
    const BeamPattern patterns[] = {gain_profile(fw, geom, probe), gain_profile(tw, probe)};
    for (const BeamPattern& p : patterns)
      for (std::size_t i = 0; i < p.distances_m.size(); ++i)
        profiles += (CsvRow() << p.distances_m[i] << p.gain_db[i] << to_string(p.kind) << r0).str();
    const std::pair<const BeamWeights*, HalfPowerInterval> dof[] = {{&fw, depth_of_focus(fw, geom)},
                                                                    {&tw, depth_of_focus(tw)}};
    for (const auto& [w, iv] : dof)
      widths += (CsvRow() << to_string(w->kind) << r0 << iv.lower_m << iv.upper_m << iv.width_m()).str();
  }
  sink.write("beam_profiles.csv", profiles);
  sink.write("beam_widths.csv", widths);
}

void run_map(const MapSettings& s, OutputSink& sink) {
  const double lambda = wavelength_of(s.grid.carrier_hz);
  PolarRegion region{linspace(s.range_min_m, s.range_max_m, s.range_points), {}};
  for (double deg : linspace(s.theta_min_deg, s.theta_max_deg, s.theta_points)) region.angles_rad.push_back(deg_to_rad(deg));

  std::vector<std::pair<std::string, std::string>> outputs;
  for (const ArraySpec& spec : s.arrays) {
    EstimationScenario sc{s.grid,
                          spec.build(lambda),
                          {region.ranges_m.front(), region.angles_rad.front(), 0.0, 0.0, {1.0, 0.0}},
                          s.snr_db,
                          ChannelModel::NearField,
                          s.unknowns};
    const CrbMap map = crb_map(sc, region);
    if (map.unidentifiable_cells == map.crb_range.size())
      throw NumericalFailure(std::string("every cell is unidentifiable for ") + to_string(spec.kind));
    std::string csv = (CsvRow() << "r_m" << "theta_rad" << "crb_r_m2").str();
    for (std::size_t ri = 0; ri < map.ranges_m.size(); ++ri)
      for (std::size_t ai = 0; ai < map.angles_rad.size(); ++ai)
        csv += (CsvRow() << map.ranges_m[ri] << map.angles_rad[ai] << map.at(ri, ai)).str();
    outputs.emplace_back(std::string("crb_map_") + to_string(spec.kind) + ".csv", std::move(csv));
  }
  for (const auto& [name, text] : outputs) sink.write(name, text);
}

std::string manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = "nfisac";
  j["version"] = m.tool_version;
  j["experiment"] = to_string(m.experiment);
  j["seed"] = m.seed;
  j["simd"] = m.simd_isa;
  j["wall_seconds"] = m.wall_seconds;
  j["config"] = m.config_echo;
  j["files"] = nlohmann::ordered_json::array();
  for (const auto& f : m.files) j["files"].push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  return j.dump(2) + "\n";
}

}  // namespace

const char* tool_version() { return NFISAC_VERSION; }

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

RunManifest run(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  OutputSink sink(config.output_dir);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GallerySettings>) run_gallery(s, config.seed, sink);
        else if constexpr (std::is_same_v<T, SweepSettings>) run_sweep(s, sink);
        else if constexpr (std::is_same_v<T, VelocitySettings>) run_velocity(s, config.seed, sink);
        else if constexpr (std::is_same_v<T, BeamSettings>) run_beams(s, sink);
        else run_map(s, sink);
      },
      config.settings);

  RunManifest m;
  m.tool_version = tool_version();
  m.experiment = config.experiment;
  m.seed = config.seed;
  m.config_echo = config.source;
  m.simd_isa = std::string(simd::isa_name(simd::active_isa()));
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  m.files = sink.files();
  sink.write("manifest.json", manifest_json(m), false);
  return m;
}

}  // namespace nfisac
