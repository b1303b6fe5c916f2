#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "nfisac/runner.hpp"

namespace nfisac {
namespace {

using Diags = std::vector<Diagnostic>;

Diagnostic at_mark(const YAML::Mark& mark, std::string path, std::string message) {
  Diagnostic d;
  if (!mark.is_null()) {
    d.line = mark.line + 1;
    d.column = mark.column + 1;
  }
  d.path = std::move(path);
  d.message = std::move(message);
  return d;
}

std::optional<double> scalar_double(const YAML::Node& n) {
  if (!n.IsScalar()) return std::nullopt;
  const std::string s = n.Scalar();
  if (s == "inf" || s == "+inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  try {
    const double v = n.as<double>();
    if (std::isnan(v)) return std::nullopt;
    return v;
  } catch (const YAML::Exception&) {
    return std::nullopt;
  }
}

// One YAML mapping with strict key accounting.
class Section {
 public:
  Section(YAML::Node node, std::string path, Diags& diags, YAML::Mark fallback)
      : node_(std::move(node)), path_(std::move(path)), diags_(&diags), fallback_(fallback) {
    if (!node_.IsMap()) {
      error(path_.empty() ? "config" : path_, "must be a mapping");
      valid_ = false;
    }
  }

  bool valid() const { return valid_; }
  YAML::Mark mark() const { return node_.Mark().is_null() ? fallback_ : node_.Mark(); }
  std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void error(const std::string& path, const std::string& message) {
    diags_->push_back(at_mark(mark(), path, message));
  }
  void error_at(const std::string& key, const std::string& message) {
    const YAML::Node n = valid_ ? node_[key] : YAML::Node();
    diags_->push_back(at_mark(n && !n.Mark().is_null() ? n.Mark() : mark(), key_path(key), message));
  }

  bool has(const std::string& key) const { return valid_ && node_[key].IsDefined(); }

  std::optional<YAML::Node> child(const std::string& key, bool required) {
    if (!valid_) return std::nullopt;
    used_.insert(key);
    YAML::Node n = node_[key];
    if (!n.IsDefined() || n.IsNull()) {
      if (required) error(key_path(key), "required key is missing");
      return std::nullopt;
    }
    return n;
  }

  std::optional<double> number(const std::string& key, bool required = true) {
    auto n = child(key, required);
    if (!n) return std::nullopt;
    auto v = scalar_double(*n);
    if (!v) error_at(key, "expected a number");
    return v;
  }

  std::optional<std::size_t> count(const std::string& key, bool required = true) {
    auto n = child(key, required);
    if (!n) return std::nullopt;
    return as_count(*n, key_path(key));
  }

  std::optional<std::string> text(const std::string& key, bool required = true) {
    auto n = child(key, required);
    if (!n) return std::nullopt;
    if (!n->IsScalar()) {
      error_at(key, "expected a string");
      return std::nullopt;
    }
    return n->Scalar();
  }

  std::optional<std::vector<double>> numbers(const std::string& key) {
    auto n = child(key, true);
    if (!n) return std::nullopt;
    if (!n->IsSequence() || n->size() == 0) {
      error_at(key, "expected a nonempty list of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (const auto& item : *n) {
      auto v = scalar_double(item);
      if (!v) {
        diags_->push_back(at_mark(item.Mark(), key_path(key), "expected a number"));
        return std::nullopt;
      }
      out.push_back(*v);
    }
    return out;
  }

  std::optional<std::vector<std::size_t>> counts(const std::string& key) {
    auto n = child(key, true);
    if (!n) return std::nullopt;
    if (!n->IsSequence() || n->size() == 0) {
      error_at(key, "expected a nonempty list of integers");
      return std::nullopt;
    }
    std::vector<std::size_t> out;
    for (const auto& item : *n) {
      auto v = as_count(item, key_path(key));
      if (!v) return std::nullopt;
      out.push_back(*v);
    }
    return out;
  }

  std::optional<std::vector<std::string>> strings(const std::string& key) {
    auto n = child(key, true);
    if (!n) return std::nullopt;
    if (!n->IsSequence() || n->size() == 0) {
      error_at(key, "expected a nonempty list of strings");
      return std::nullopt;
    }
    std::vector<std::string> out;
    for (const auto& item : *n) {
      if (!item.IsScalar()) {
        diags_->push_back(at_mark(item.Mark(), key_path(key), "expected a string"));
        return std::nullopt;
      }
      out.push_back(item.Scalar());
    }
    return out;
  }

  std::optional<Section> section(const std::string& key) {
    auto n = child(key, true);
    if (!n) return std::nullopt;
    Section s(*n, key_path(key), *diags_, mark());
    if (!s.valid()) return std::nullopt;
    return s;
  }

  std::vector<Section> section_list(const std::string& key) {
    std::vector<Section> out;
    auto n = child(key, true);
    if (!n) return out;
    if (!n->IsSequence() || n->size() == 0) {
      error_at(key, "expected a nonempty list of mappings");
      return out;
    }
    for (std::size_t i = 0; i < n->size(); ++i) {
      Section s((*n)[i], key_path(key) + "[" + std::to_string(i) + "]", *diags_, mark());
      if (s.valid()) out.push_back(std::move(s));
    }
    return out;
  }

  /// Reports keys that no reader asked for.
  void finish() {
    if (!valid_) return;
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!used_.count(key)) diags_->push_back(at_mark(kv.first.Mark(), key_path(key), "unknown key"));
    }
  }

 private:
  std::optional<std::size_t> as_count(const YAML::Node& n, const std::string& path) {
    try {
      if (n.IsScalar()) {
        const long long v = n.as<long long>();
        if (v >= 0) return static_cast<std::size_t>(v);
      }
    } catch (const YAML::Exception&) {
    }
    diags_->push_back(at_mark(n.Mark(), path, "expected a non-negative integer"));
    return std::nullopt;
  }

  YAML::Node node_;
  std::string path_;
  Diags* diags_;
  YAML::Mark fallback_;
  std::set<std::string> used_;
  bool valid_ = true;
};

// Field-level checks; each reports through the owning section.
void positive(Section& s, const std::string& key, const std::optional<double>& v, const char* what) {
  if (v && !(std::isfinite(*v) && *v > 0.0)) s.error_at(key, std::string("must be > 0 (") + what + ")");
}

void at_least(Section& s, const std::string& key, const std::optional<std::size_t>& v, std::size_t lo,
              const char* what) {
  if (v && *v < lo) s.error_at(key, "must be >= " + std::to_string(lo) + " (" + what + ")");
}

void open_angle(Section& s, const std::string& key, const std::optional<double>& v) {
  if (v && !(*v > 0.0 && *v < 180.0)) s.error_at(key, "must lie strictly between 0 and 180 degrees");
}

std::optional<OfdmGrid> read_grid(Section& parent) {
  auto s = parent.section("grid");
  if (!s) return std::nullopt;
  const auto fc = s->number("carrier_hz");
  const auto m = s->count("n_subcarriers");
  const auto df = s->number("subcarrier_spacing_hz");
  const auto k = s->count("n_symbols");
  positive(*s, "carrier_hz", fc, "carrier frequency is positive");
  at_least(*s, "n_subcarriers", m, 1, "at least one subcarrier");
  positive(*s, "subcarrier_spacing_hz", df, "subcarrier spacing is positive");
  at_least(*s, "n_symbols", k, 1, "at least one OFDM symbol");
  s->finish();
  if (!(fc && m && df && k)) return std::nullopt;
  return OfdmGrid{*fc, *m, *df, *k};
}

std::optional<ArrayKind> array_kind(Section& s) {
  const auto kind = s.text("kind");
  if (!kind) return std::nullopt;
  if (*kind == "dense_ula") return ArrayKind::DenseUla;
  if (*kind == "sparse_ula") return ArrayKind::SparseUla;
  if (*kind == "uca") return ArrayKind::Uca;
  s.error_at("kind", "must be one of dense_ula, sparse_ula, uca");
  return std::nullopt;
}

// `antenna_counts` non-empty means the count is swept rather than given.
std::optional<ArraySpec> read_array(Section& s, std::optional<double> carrier_hz,
                                    const std::vector<std::size_t>& antenna_counts = {}) {
  ArraySpec spec;
  const auto kind = array_kind(s);
  std::optional<std::size_t> n;
  if (antenna_counts.empty()) {
    n = s.count("n_antennas");
    at_least(s, "n_antennas", n, 1, "at least one element");
  }
  std::optional<double> size;
  const char* size_key = "spacing_wavelengths";
  if (kind == ArrayKind::Uca) {
    size_key = "radius_wavelengths";
    size = s.number(size_key);
    if (auto o = s.number("orientation_deg", false)) spec.orientation_deg = *o;
  } else if (kind) {
    size = s.number(size_key);
  }
  positive(s, size_key, size, "element spacing / radius is positive");
  s.finish();
  if (!(kind && size && (n || !antenna_counts.empty()))) return std::nullopt;
  spec.kind = *kind;
  spec.n_antennas = n.value_or(0);
  spec.size_wavelengths = *size;
  if (carrier_hz && *carrier_hz > 0.0 && std::isfinite(*carrier_hz) && *size > 0.0) {
    const double lambda = wavelength_of(*carrier_hz);
    std::vector<std::size_t> sizes = antenna_counts;
    if (sizes.empty()) sizes.push_back(spec.n_antennas);
    for (std::size_t count : sizes) {
      if (count < 1) continue;
      try {
        ArraySpec probe = spec;
        probe.n_antennas = count;
        (void)probe.build(lambda);
      } catch (const InvalidArgument& e) {
        s.error_at(size_key, e.what());
        return std::nullopt;
      }
    }
  }
  return spec;
}

std::optional<std::vector<Unknown>> read_unknowns(Section& s) {
  const auto names = s.strings("unknowns");
  if (!names) return std::nullopt;
  std::vector<Unknown> out;
  for (const auto& name : *names) {
    std::optional<Unknown> u;
    for (Unknown c : {Unknown::Range, Unknown::Delay, Unknown::Angle, Unknown::RadialVelocity,
                      Unknown::TransverseVelocity, Unknown::GainReal, Unknown::GainImag})
      if (name == to_string(c)) u = c;
    if (!u) {
      s.error_at("unknowns", "unknown parameter '" + name +
                                 "' (expected range, delay, angle, v_radial, v_transverse, gain_re, gain_im)");
      return std::nullopt;
    }
    if (std::find(out.begin(), out.end(), *u) != out.end()) {
      s.error_at("unknowns", "parameter '" + name + "' listed twice");
      return std::nullopt;
    }
    out.push_back(*u);
  }
  for (Unknown g : {Unknown::GainReal, Unknown::GainImag})
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return out;
}

void require_range_unknown(Section& s, const std::optional<std::vector<Unknown>>& u) {
  if (u && std::find(u->begin(), u->end(), Unknown::Range) == u->end())
    s.error_at("unknowns", "must include range (the bound reported is CRB(r))");
}

std::optional<GallerySettings> read_gallery(Section& root) {
  GallerySettings g;
  const auto grid = read_grid(root);
  std::optional<ArraySpec> array;
  if (auto s = root.section("array")) array = read_array(*s, grid ? std::optional(grid->carrier_hz) : std::nullopt);
  std::optional<double> theta;
  if (auto s = root.section("target")) {
    theta = s->number("theta_deg");
    open_angle(*s, "theta_deg", theta);
    s->finish();
  }
  std::optional<double> far, near, snr;
  if (auto s = root.section("gallery")) {
    far = s->number("far_range_m");
    near = s->number("near_range_m");
    snr = s->number("snr_db");
    if (auto f = s->number("floor_db", false)) {
      if (!(*f < 0.0)) s->error_at("floor_db", "must be < 0");
      g.floor_db = *f;
    }
    positive(*s, "far_range_m", far, "target range is positive");
    positive(*s, "near_range_m", near, "target range is positive");
    if (snr && *snr == -HUGE_VAL) s->error_at("snr_db", "must be finite or +inf");
    s->finish();
  }
  if (!(grid && array && theta && far && near && snr)) return std::nullopt;
  g.grid = *grid;
  g.array = *array;
  g.theta_deg = *theta;
  g.far_range_m = *far;
  g.near_range_m = *near;
  g.snr_db = *snr;
  return g;
}

std::optional<SweepSettings> read_sweep(Section& root) {
  SweepSettings w;
  std::optional<double> fc, df, dur, snr;
  std::optional<std::vector<Unknown>> unknowns;
  std::optional<std::vector<double>> bws;
  std::optional<std::vector<std::size_t>> counts;
  if (auto s = root.section("sweep")) {
    fc = s->number("carrier_hz");
    df = s->number("subcarrier_spacing_hz");
    dur = s->number("sensing_duration_s");
    snr = s->number("snr_db");
    unknowns = read_unknowns(*s);
    require_range_unknown(*s, unknowns);
    bws = s->numbers("bandwidths_hz");
    counts = s->counts("antenna_counts");
    positive(*s, "carrier_hz", fc, "carrier frequency is positive");
    positive(*s, "subcarrier_spacing_hz", df, "subcarrier spacing is positive");
    positive(*s, "sensing_duration_s", dur, "sensing duration is positive");
    if (snr && !std::isfinite(*snr)) s->error_at("snr_db", "must be finite");
    if (bws && df && *df > 0.0)
      for (double b : *bws)
        if (!(b >= *df && std::isfinite(b))) {
          s->error_at("bandwidths_hz", "each bandwidth must be >= subcarrier_spacing_hz");
          bws.reset();
          break;
        }
    if (dur && df && *dur > 0.0 && *df > 0.0 && std::floor(*dur * *df + 1e-9) < 1.0)
      s->error_at("sensing_duration_s", "must cover at least one symbol (1 / subcarrier_spacing_hz)");
    if (counts)
      for (std::size_t n : *counts)
        if (n < 1) {
          s->error_at("antenna_counts", "each count must be >= 1");
          counts.reset();
          break;
        }
    s->finish();
  }
  std::optional<ArraySpec> array;
  if (auto s = root.section("array")) {
    if (s->has("n_antennas")) s->error_at("n_antennas", "not allowed here; antenna counts are swept");
    if (s->has("kind") && s->has("radius_wavelengths"))
      s->error_at("kind", "sweeps support linear arrays only");
    else if (counts)
      array = read_array(*s, fc, *counts);
    else
      s->finish();
  }
  std::optional<double> r, theta;
  if (auto s = root.section("target")) {
    r = s->number("range_m");
    theta = s->number("theta_deg");
    positive(*s, "range_m", r, "target range is positive");
    open_angle(*s, "theta_deg", theta);
    s->finish();
  }
  if (!(fc && df && dur && snr && unknowns && bws && counts && array && r && theta)) return std::nullopt;
  w.carrier_hz = *fc;
  w.subcarrier_spacing_hz = *df;
  w.sensing_duration_s = *dur;
  w.snr_db = *snr;
  w.unknowns = *unknowns;
  w.bandwidths_hz = *bws;
  w.antenna_counts = *counts;
  w.array = *array;
  w.range_m = *r;
  w.theta_deg = *theta;
  return w;
}

std::optional<VelocitySettings> read_velocity(Section& root) {
  VelocitySettings v;
  const auto grid = read_grid(root);
  if (grid && grid->n_symbols < 2)
    root.error_at("grid", "n_symbols must be >= 2 for velocity profiling");
  std::optional<ArraySpec> array;
  if (auto s = root.section("array")) array = read_array(*s, grid ? std::optional(grid->carrier_hz) : std::nullopt);
  std::optional<double> theta, vr, vt;
  if (auto s = root.section("target")) {
    theta = s->number("theta_deg");
    vr = s->number("v_radial_mps");
    vt = s->number("v_transverse_mps");
    open_angle(*s, "theta_deg", theta);
    if (vr && !std::isfinite(*vr)) s->error_at("v_radial_mps", "must be finite");
    if (vt && !std::isfinite(*vt)) s->error_at("v_transverse_mps", "must be finite");
    s->finish();
  }
  std::optional<std::vector<double>> ranges;
  std::optional<double> snr, lo, hi, step;
  bool model_ok = true;
  if (auto s = root.section("profiles")) {
    ranges = s->numbers("ranges_m");
    snr = s->number("snr_db");
    if (auto t = s->text("template_model", false)) {
      if (*t == "near_field") v.template_model = ChannelModel::NearField;
      else if (*t == "far_field") v.template_model = ChannelModel::FarField;
      else {
        s->error_at("template_model", "must be near_field or far_field");
        model_ok = false;
      }
    }
    lo = s->number("velocity_min_mps");
    hi = s->number("velocity_max_mps");
    step = s->number("velocity_step_mps");
    if (ranges)
      for (double r : *ranges)
        if (!(r > 0.0 && std::isfinite(r))) {
          s->error_at("ranges_m", "each range must be > 0");
          ranges.reset();
          break;
        }
    if (snr && *snr == -HUGE_VAL) s->error_at("snr_db", "must be finite or +inf");
    positive(*s, "velocity_step_mps", step, "grid step is positive");
    if (lo && hi && !(*lo <= 0.0 && *hi >= 0.0 && std::isfinite(*lo) && std::isfinite(*hi)))
      s->error_at("velocity_min_mps", "velocity grid must be finite and contain 0");
    s->finish();
  }
  if (grid && array && grid->carrier_hz > 0.0 && array->kind == ArrayKind::Uca &&
      v.template_model == ChannelModel::FarField)
    root.error_at("profiles", "far_field templates need a linear array");
  if (!(grid && grid->n_symbols >= 2 && array && theta && vr && vt && ranges && snr && lo && hi && step && model_ok))
    return std::nullopt;
  v.grid = *grid;
  v.array = *array;
  v.theta_deg = *theta;
  v.v_radial_mps = *vr;
  v.v_transverse_mps = *vt;
  v.ranges_m = *ranges;
  v.snr_db = *snr;
  v.velocity_min_mps = *lo;
  v.velocity_max_mps = *hi;
  v.velocity_step_mps = *step;
  return v;
}

std::optional<BeamSettings> read_beams(Section& root) {
  BeamSettings b;
  const auto grid = read_grid(root);
  std::optional<ArraySpec> array;
  if (auto s = root.section("array")) array = read_array(*s, grid ? std::optional(grid->carrier_hz) : std::nullopt);
  std::optional<double> theta, lo, hi;
  std::optional<std::vector<double>> focal;
  std::optional<std::size_t> points;
  if (auto s = root.section("beams")) {
    theta = s->number("theta_deg");
    focal = s->numbers("focal_ranges_m");
    lo = s->number("probe_min_m");
    hi = s->number("probe_max_m");
    points = s->count("probe_points");
    open_angle(*s, "theta_deg", theta);
    if (focal)
      for (double r : *focal)
        if (!(r > 0.0 && std::isfinite(r))) {
          s->error_at("focal_ranges_m", "each focal range must be > 0");
          focal.reset();
          break;
        }
    positive(*s, "probe_min_m", lo, "probe distances are positive");
    positive(*s, "probe_max_m", hi, "probe distances are positive");
    if (lo && hi && *hi < *lo) s->error_at("probe_max_m", "must be >= probe_min_m");
    at_least(*s, "probe_points", points, 1, "probe axis is nonempty");
    s->finish();
  }
  if (!(grid && array && theta && focal && lo && hi && points && *points >= 1)) return std::nullopt;
  b.grid = *grid;
  b.array = *array;
  b.theta_deg = *theta;
  b.focal_ranges_m = *focal;
  b.probe_min_m = *lo;
  b.probe_max_m = *hi;
  b.probe_points = *points;
  return b;
}

std::optional<MapSettings> read_map(Section& root) {
  MapSettings m;
  const auto grid = read_grid(root);
  bool arrays_ok = true;
  for (auto& s : root.section_list("arrays")) {
    auto a = read_array(s, grid ? std::optional(grid->carrier_hz) : std::nullopt);
    if (a) m.arrays.push_back(*a);
    else arrays_ok = false;
  }
  std::optional<double> snr, rlo, rhi, tlo, thi;
  std::optional<std::size_t> rn, tn;
  std::optional<std::vector<Unknown>> unknowns;
  if (auto s = root.section("map")) {
    snr = s->number("snr_db");
    unknowns = read_unknowns(*s);
    require_range_unknown(*s, unknowns);
    rlo = s->number("range_min_m");
    rhi = s->number("range_max_m");
    rn = s->count("range_points");
    tlo = s->number("theta_min_deg");
    thi = s->number("theta_max_deg");
    tn = s->count("theta_points");
    if (snr && !std::isfinite(*snr)) s->error_at("snr_db", "must be finite");
    positive(*s, "range_min_m", rlo, "ranges are positive");
    positive(*s, "range_max_m", rhi, "ranges are positive");
    if (rlo && rhi && *rhi < *rlo) s->error_at("range_max_m", "must be >= range_min_m");
    open_angle(*s, "theta_min_deg", tlo);
    open_angle(*s, "theta_max_deg", thi);
    if (tlo && thi && *thi < *tlo) s->error_at("theta_max_deg", "must be >= theta_min_deg");
    at_least(*s, "range_points", rn, 1, "region is nonempty");
    at_least(*s, "theta_points", tn, 1, "region is nonempty");
    s->finish();
  }
  if (!(grid && arrays_ok && !m.arrays.empty() && snr && unknowns && rlo && rhi && rn && tlo && thi && tn))
    return std::nullopt;
  m.grid = *grid;
  m.snr_db = *snr;
  m.unknowns = *unknowns;
  m.range_min_m = *rlo;
  m.range_max_m = *rhi;
  m.range_points = *rn;
  m.theta_min_deg = *tlo;
  m.theta_max_deg = *thi;
  m.theta_points = *tn;
  return m;
}

}  // namespace

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::ChannelGallery: return "channel-gallery";
    case Experiment::CrbSweep: return "crb-sweep";
    case Experiment::VelocityProfiles: return "velocity-profiles";
    case Experiment::BeamCompare: return "beam-compare";
    case Experiment::CrbMap: return "crb-map";
  }
  return "?";
}

std::optional<Experiment> experiment_from_string(const std::string& name) {
  for (Experiment e : {Experiment::ChannelGallery, Experiment::CrbSweep, Experiment::VelocityProfiles,
                       Experiment::BeamCompare, Experiment::CrbMap})
    if (name == to_string(e)) return e;
  return std::nullopt;
}

ArrayGeometry ArraySpec::build(double wavelength) const {
  return ArrayGeometry::make(kind, n_antennas, wavelength, size_wavelengths * wavelength, deg_to_rad(orientation_deg));
}

std::string Diagnostic::str() const {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ", column " << column << ": ";
  if (!path.empty()) os << path << ": ";
  os << message;
  return os.str();
}

ParseResult parse_config(const std::string& yaml_text) {
  ParseResult result;
  Diags& diags = result.diagnostics;
  YAML::Node doc;
  try {
    doc = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    diags.push_back(at_mark(e.mark, "", "YAML syntax error: " + e.msg));
    return result;
  }
  Section root(doc, "", diags, YAML::Mark::null_mark());
  if (!root.valid()) return result;

  ExperimentConfig cfg;
  cfg.source = yaml_text;
  std::optional<Experiment> experiment;
  if (auto name = root.text("experiment")) {
    experiment = experiment_from_string(*name);
    if (!experiment)
      root.error_at("experiment",
                    "must be one of channel-gallery, crb-sweep, velocity-profiles, beam-compare, crb-map");
  }
  if (auto n = root.child("seed", false)) {
    try {
      cfg.seed = n->as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      root.error_at("seed", "expected a non-negative integer");
    }
  }
  if (auto out = root.text("output", false)) cfg.output_dir = *out;

  bool settings_ok = false;
  if (experiment) {
    cfg.experiment = *experiment;
    switch (*experiment) {
      case Experiment::ChannelGallery:
        if (auto s = read_gallery(root)) cfg.settings = *s, settings_ok = true;
        break;
      case Experiment::CrbSweep:
        if (auto s = read_sweep(root)) cfg.settings = *s, settings_ok = true;
        break;
      case Experiment::VelocityProfiles:
        if (auto s = read_velocity(root)) cfg.settings = *s, settings_ok = true;
        break;
      case Experiment::BeamCompare:
        if (auto s = read_beams(root)) cfg.settings = *s, settings_ok = true;
        break;
      case Experiment::CrbMap:
        if (auto s = read_map(root)) cfg.settings = *s, settings_ok = true;
        break;
    }
  }
  root.finish();
  if (diags.empty() && settings_ok) result.config = std::move(cfg);
  else if (diags.empty())
    diags.push_back({0, 0, "", "configuration rejected"});
  std::stable_sort(diags.begin(), diags.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
  return result;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

std::vector<Diagnostic> validate_config_file(const std::filesystem::path& path) {
  return parse_config(read_text_file(path)).diagnostics;
}

}  // namespace nfisac
