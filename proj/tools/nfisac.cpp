// nfisac: command-line front end for the experiment runner.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nfisac/runner.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kIoError = 3;
constexpr int kNumericalFailure = 4;

struct RunOptions {
  std::string config_path;
  std::string preset;
  std::string out;
  std::optional<std::uint64_t> seed;
};

void print_diagnostics(const std::string& origin, const std::vector<nfisac::Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << origin << ": " << d.str() << "\n";
}

// Loads the YAML text named by --config or --preset.
std::optional<std::string> load_source(const RunOptions& o, std::string& origin) {
  if (!o.preset.empty()) {
    origin = "preset " + o.preset;
    auto text = nfisac::preset_text(o.preset);
    if (!text) std::cerr << "unknown preset '" << o.preset << "'\n";
    return text;
  }
  origin = o.config_path;
  return nfisac::read_text_file(o.config_path);
}

int run_experiment(nfisac::Experiment expected, const RunOptions& o) {
  std::string origin;
  const auto text = load_source(o, origin);
  if (!text) return kConfigError;
  nfisac::ParseResult parsed = nfisac::parse_config(*text);
  if (!parsed.config) {
    print_diagnostics(origin, parsed.diagnostics);
    return kConfigError;
  }
  nfisac::ExperimentConfig cfg = std::move(*parsed.config);
  if (cfg.experiment != expected) {
    std::cerr << origin << ": configures '" << nfisac::to_string(cfg.experiment) << "', not '"
              << nfisac::to_string(expected) << "'\n";
    return kConfigError;
  }
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (o.seed) cfg.seed = *o.seed;

  const nfisac::RunManifest m = nfisac::run(cfg);
  for (const auto& f : m.files) std::cout << f.sha256 << "  " << (cfg.output_dir / f.name).string() << "\n";
  std::cout << nfisac::to_string(m.experiment) << ": " << m.files.size() << " files in " << m.wall_seconds
            << " s (" << m.simd_isa << ")\n";
  return kOk;
}

int validate(const RunOptions& o) {
  std::string origin;
  const auto text = load_source(o, origin);
  if (!text) return kConfigError;
  const auto diags = nfisac::parse_config(*text).diagnostics;
  if (diags.empty()) {
    std::cout << origin << ": ok\n";
    return kOk;
  }
  print_diagnostics(origin, diags);
  return kConfigError;
}

void add_source_flags(CLI::App* cmd, RunOptions& o) {
  auto* cfg = cmd->add_option("--config", o.config_path, "YAML config file")->check(CLI::ExistingFile);
  auto* pre = cmd->add_option("--preset", o.preset, "built-in preset (fig1 ... fig5)");
  cfg->excludes(pre);
  cmd->parse_complete_callback([cmd, cfg, pre] {
    if (cfg->count() + pre->count() != 1) throw CLI::ValidationError(cmd->get_name(), "give --config or --preset");
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Near-field / wideband ISAC simulator"};
  app.set_version_flag("--version", nfisac::tool_version());
  app.require_subcommand(1);

  RunOptions opts;
  std::optional<nfisac::Experiment> chosen;
  bool validate_only = false;
  std::string dump_name;
  bool list_presets = false;

  for (nfisac::Experiment e : {nfisac::Experiment::ChannelGallery, nfisac::Experiment::CrbSweep,
                               nfisac::Experiment::VelocityProfiles, nfisac::Experiment::BeamCompare,
                               nfisac::Experiment::CrbMap}) {
    auto* cmd = app.add_subcommand(nfisac::to_string(e), std::string("run the ") + nfisac::to_string(e) + " experiment");
    add_source_flags(cmd, opts);
    cmd->add_option("--out", opts.out, "output directory (overrides the config)");
    cmd->add_option("--seed", opts.seed, "RNG seed (overrides the config)");
    cmd->final_callback([&chosen, e] { chosen = e; });
  }
  auto* val = app.add_subcommand("validate", "check a config and list every violation");
  add_source_flags(val, opts);
  val->final_callback([&] { validate_only = true; });
  auto* dump = app.add_subcommand("preset", "print a built-in preset as YAML");
  dump->add_option("name", dump_name, "preset name")->required();
  app.add_subcommand("presets", "list built-in presets")->final_callback([&] { list_presets = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (list_presets) {
      for (const auto& n : nfisac::preset_names()) std::cout << n << "\n";
      return kOk;
    }
    if (!dump_name.empty()) {
      auto text = nfisac::preset_text(dump_name);
      if (!text) {
        std::cerr << "unknown preset '" << dump_name << "'\n";
        return kConfigError;
      }
      std::cout << *text;
      return kOk;
    }
    if (validate_only) return validate(opts);
    return run_experiment(*chosen, opts);
  } catch (const nfisac::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const nfisac::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const nfisac::InvalidArgument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kConfigError;
  }
}
