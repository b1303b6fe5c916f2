#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "nfisac/runner.hpp"

using namespace nfisac;
namespace fs = std::filesystem;

namespace {

const char* kTinyVelocity = R"(experiment: velocity-profiles
seed: 5
grid:
  carrier_hz: 28.0e9
  n_subcarriers: 2
  subcarrier_spacing_hz: 100.0e3
  n_symbols: 16
array:
  kind: dense_ula
  n_antennas: 32
  spacing_wavelengths: 0.5
target:
  theta_deg: 80
  v_radial_mps: 2
  v_transverse_mps: -3
profiles:
  ranges_m: [1.5, 6]
  snr_db: 0
  velocity_min_mps: -4
  velocity_max_mps: 4
  velocity_step_mps: 1
)";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nfisac_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool mentions(const std::vector<Diagnostic>& diags, const std::string& path, const std::string& text) {
  for (const auto& d : diags)
    if (d.path == path && d.message.find(text) != std::string::npos) return true;
  return false;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("presets exist and validate") {
  const auto names = preset_names();
  CHECK(names == std::vector<std::string>{"fig1", "fig2", "fig3", "fig4", "fig5"});
  const Experiment expected[] = {Experiment::ChannelGallery, Experiment::CrbSweep, Experiment::VelocityProfiles,
                                 Experiment::BeamCompare, Experiment::CrbMap};
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto r = parse_config(preset_text(names[i]).value());
    CAPTURE(names[i]);
    CHECK(r.diagnostics.empty());
    REQUIRE(r.config.has_value());
    CHECK(r.config->experiment == expected[i]);
    CHECK(r.config->seed == 0);
  }
  CHECK_FALSE(preset_text("fig6").has_value());
}

TEST_CASE("preset parameters") {
  const auto fig2 = std::get<SweepSettings>(parse_config(*preset_text("fig2")).config->settings);
  CHECK(fig2.carrier_hz == 60e9);
  CHECK(fig2.sensing_duration_s == 1e-3);
  CHECK(fig2.unknowns.size() == 4);
  const auto fig3 = std::get<VelocitySettings>(parse_config(*preset_text("fig3")).config->settings);
  CHECK(fig3.grid.n_symbols * (1.0 / fig3.grid.subcarrier_spacing_hz) == doctest::Approx(2e-3));
  CHECK(fig3.array.n_antennas == 512);
  const auto fig5 = std::get<MapSettings>(parse_config(*preset_text("fig5")).config->settings);
  REQUIRE(fig5.arrays.size() == 3);
  CHECK(fig5.arrays[2].kind == ArrayKind::Uca);
}

TEST_CASE("validation reports every violation with locations") {
  std::string bad = replace(*preset_text("fig3"), "subcarrier_spacing_hz: 100.0e3", "subcarrier_spacing_hz: 0");
  bad = replace(bad, "spacing_wavelengths: 0.5", "spacing_wavelengths: 0.7");
  bad = replace(bad, "snr_db: 0", "snr_db: 0\n  colour: blue");
  const auto r = parse_config(bad);
  CHECK_FALSE(r.config.has_value());
  CHECK(mentions(r.diagnostics, "grid.subcarrier_spacing_hz", "must be > 0"));
  CHECK(mentions(r.diagnostics, "profiles.colour", "unknown key"));
  for (const auto& d : r.diagnostics) CHECK(d.line > 0);
  for (const auto& d : r.diagnostics) MESSAGE(d.str());

  // The geometry check needs a valid carrier, so test it on its own.
  const auto geo = parse_config(replace(*preset_text("fig3"), "spacing_wavelengths: 0.5", "spacing_wavelengths: 0.7"));
  REQUIRE(geo.diagnostics.size() == 1);
  CHECK(geo.diagnostics[0].path == "array.spacing_wavelengths");
  CHECK(geo.diagnostics[0].message.find("lambda/2") != std::string::npos);
  CHECK(geo.diagnostics[0].line == 11);

  const auto missing = parse_config(replace(*preset_text("fig4"), "  probe_points: 400\n", ""));
  CHECK(mentions(missing.diagnostics, "beams.probe_points", "required"));

  CHECK(mentions(parse_config("experiment: fig9\n").diagnostics, "experiment", "must be one of"));
  CHECK_FALSE(parse_config("experiment: [unclosed\n").diagnostics.empty());
  CHECK(mentions(parse_config("- a\n- b\n").diagnostics, "config", "mapping"));

  const auto uca = parse_config(replace(*preset_text("fig5"), "radius_wavelengths: 127.75", "radius_wavelengths: 100"));
  CHECK(mentions(uca.diagnostics, "arrays[2].radius_wavelengths", "radius"));
}

TEST_CASE("validate_config_file") {
  const fs::path dir = scratch("validate");
  fs::create_directories(dir);
  std::ofstream(dir / "ok.yaml") << *preset_text("fig3");
  CHECK(validate_config_file(dir / "ok.yaml").empty());
  CHECK_THROWS_AS(validate_config_file(dir / "missing.yaml"), IoError);
  fs::remove_all(dir);
}

TEST_CASE("runs are deterministic and manifests are complete") {
  auto cfg = parse_config(kTinyVelocity).config.value();
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  cfg.output_dir = a;
  const RunManifest ma = run(cfg);
  cfg.output_dir = b;
  const RunManifest mb = run(cfg);
  REQUIRE(ma.files.size() == 7);
  REQUIRE(ma.files.size() == mb.files.size());
  for (std::size_t i = 0; i < ma.files.size(); ++i) {
    CHECK(ma.files[i].name == mb.files[i].name);
    CHECK(slurp(a / ma.files[i].name) == slurp(b / mb.files[i].name));
    CHECK(sha256_hex(slurp(a / ma.files[i].name)) == ma.files[i].sha256);
  }
  const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
  CHECK(manifest["experiment"] == "velocity-profiles");
  CHECK(manifest["seed"] == 5);
  CHECK(manifest["files"].size() == ma.files.size());
  for (const auto& f : manifest["files"]) CHECK(sha256_hex(slurp(a / f["name"].get<std::string>())) == f["sha256"]);
  CHECK(slurp(a / "velocity_summary.csv").rfind("range_m,peak_v_radial,", 0) == 0);
  CHECK(slurp(a / "velocity_1.5m_radial_cut.csv").rfind("v_r,value\n-4,", 0) == 0);

  cfg.seed = 6;
  cfg.output_dir = scratch("det_c");
  const RunManifest mc = run(cfg);
  CHECK(mc.files[0].sha256 != ma.files[0].sha256);
  for (const auto& p : {a, b, cfg.output_dir}) fs::remove_all(p);
}

TEST_CASE("known digests") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("unwritable output directory") {
  auto cfg = parse_config(kTinyVelocity).config.value();
  const fs::path blocker = scratch("blocker");
  std::ofstream(blocker) << "x";
  cfg.output_dir = blocker / "sub";
  CHECK_THROWS_AS(run(cfg), IoError);
  fs::remove(blocker);
}

TEST_CASE("small sweeps and maps run") {
  const std::string sweep = R"(experiment: crb-sweep
sweep:
  carrier_hz: 60.0e9
  subcarrier_spacing_hz: 1.0e6
  sensing_duration_s: 4.0e-6
  snr_db: 0
  unknowns: [range, angle]
  bandwidths_hz: [1.0e6, 4.0e6]
  antenna_counts: [8, 16]
array:
  kind: sparse_ula
  spacing_wavelengths: 1
target:
  range_m: 2
  theta_deg: 70
)";
  auto cfg = parse_config(sweep).config.value();
  cfg.output_dir = scratch("sweep");
  run(cfg);
  const std::string csv = slurp(cfg.output_dir / "crb_sweep.csv");
  CHECK(csv.rfind("bandwidth_hz,n_antennas,crb_r_m2,sqrt_crb_m\n1e+06,8,", 0) == 0);
  fs::remove_all(cfg.output_dir);

  const std::string map = R"(experiment: crb-map
grid: {carrier_hz: 60.0e9, n_subcarriers: 1, subcarrier_spacing_hz: 1.0e6, n_symbols: 1}
arrays:
  - {kind: dense_ula, n_antennas: 16, spacing_wavelengths: 0.5}
  - {kind: uca, n_antennas: 16, radius_wavelengths: 3.75, orientation_deg: 10}
map:
  snr_db: 0
  unknowns: [range, angle]
  range_min_m: 0.5
  range_max_m: 1
  range_points: 2
  theta_min_deg: 30
  theta_max_deg: 90
  theta_points: 3
)";
  cfg = parse_config(map).config.value();
  cfg.output_dir = scratch("map");
  const auto m = run(cfg);
  REQUIRE(m.files.size() == 2);
  CHECK(m.files[0].name == "crb_map_dense_ula.csv");
  CHECK(m.files[1].name == "crb_map_uca.csv");
  fs::remove_all(cfg.output_dir);

  // A far-field-style single-subcarrier map where range is invisible is a numerical failure.
  const std::string blind = replace(replace(map, "range_min_m: 0.5", "range_min_m: 5000"), "range_max_m: 1", "range_max_m: 6000");
  cfg = parse_config(blind).config.value();
  cfg.output_dir = scratch("blind");
  CHECK_THROWS_AS(run(cfg), NumericalFailure);
  fs::remove_all(cfg.output_dir);
}
