#include "nfisac/transforms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>

#include "nfisac/csv.hpp"

namespace nfisac {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place unitary DFT of every row (along_rows) or every column of `a`.
// sign = FFTW_FORWARD applies F, FFTW_BACKWARD applies F^H.
void unitary_dft(CMatrix& a, bool along_rows, int sign) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  if (rows == 0 || cols == 0) return;
  const int len = along_rows ? cols : rows;
  const int howmany = along_rows ? rows : cols;
  const int stride = along_rows ? 1 : cols;
  const int dist = along_rows ? cols : 1;
  auto* buf = reinterpret_cast<fftw_complex*>(a.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_many_dft(1, &len, howmany, buf, nullptr, stride, dist, buf, nullptr, stride,
                              dist, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  a *= 1.0 / std::sqrt(static_cast<double>(len));
}

std::size_t shifted(std::size_t i, std::size_t n) { return (i + n / 2) % n; }

long centered_label(std::size_t i, std::size_t n) {
  // Display position i holds raw bin (i + ceil(n/2)) mod n, labelled in [-n/2, n/2).
  const std::size_t raw = (i + (n + 1) / 2) % n;
  const long r = static_cast<long>(raw);
  return r >= static_cast<long>((n + 1) / 2) ? r - static_cast<long>(n) : r;
}

}  // namespace

const char* to_string(Domain domain) {
  switch (domain) {
    case Domain::SpatialFrequency: return "spatial_frequency";
    case Domain::SpatialDelay: return "spatial_delay";
    case Domain::AngularFrequency: return "angular_frequency";
    case Domain::AngularDelay: return "angular_delay";
  }
  return "?";
}

CMatrix symbol_matrix(const ChannelTensor& tensor, std::size_t k) {
  if (k >= tensor.symbols()) throw InvalidArgument("symbol index out of range");
  CMatrix h(tensor.antennas(), tensor.subcarriers());
  for (std::size_t n = 0; n < tensor.antennas(); ++n)
    for (std::size_t m = 0; m < tensor.subcarriers(); ++m) h(n, m) = tensor.at(n, m, k);
  return h;
}

DomainMatrix to_spatial_delay(const CMatrix& h) {
  DomainMatrix out{h, Domain::SpatialDelay};
  unitary_dft(out.data, true, FFTW_BACKWARD);
  return out;
}

DomainMatrix to_angular_frequency(const CMatrix& h) {
  DomainMatrix out{h, Domain::AngularFrequency};
  unitary_dft(out.data, false, FFTW_BACKWARD);
  return out;
}

DomainMatrix to_angular_delay(const CMatrix& h) {
  DomainMatrix out{h, Domain::AngularDelay};
  unitary_dft(out.data, false, FFTW_BACKWARD);
  unitary_dft(out.data, true, FFTW_BACKWARD);
  return out;
}

DomainMatrix transform(const CMatrix& h, Domain target) {
  switch (target) {
    case Domain::SpatialFrequency: return {h, Domain::SpatialFrequency};
    case Domain::SpatialDelay: return to_spatial_delay(h);
    case Domain::AngularFrequency: return to_angular_frequency(h);
    case Domain::AngularDelay: return to_angular_delay(h);
  }
  throw InvalidArgument("unknown domain");
}

CMatrix to_spatial_frequency(const DomainMatrix& m) {
  CMatrix h = m.data;
  if (m.domain == Domain::AngularFrequency || m.domain == Domain::AngularDelay)
    unitary_dft(h, false, FFTW_FORWARD);
  if (m.domain == Domain::SpatialDelay || m.domain == Domain::AngularDelay)
    unitary_dft(h, true, FFTW_FORWARD);
  return h;
}

double angular_bin_spatial_frequency(std::size_t bin, std::size_t n_bins) {
  double psi = -static_cast<double>(bin) / static_cast<double>(n_bins);
  psi -= std::floor(psi + 0.5);
  return psi;
}

std::optional<double> angular_bin_angle(std::size_t bin, const ArrayGeometry& geometry,
                                        double frequency_hz) {
  if (geometry.kind() != ArrayKind::DenseUla) return std::nullopt;
  const double psi = angular_bin_spatial_frequency(bin, geometry.size());
  const double cos_theta = psi * wavelength_of(frequency_hz) / geometry.spacing();
  if (std::abs(cos_theta) > 1.0) return std::nullopt;
  return std::acos(cos_theta);
}

double delay_bin_seconds(std::size_t bin, const OfdmGrid& grid) {
  return static_cast<double>(bin) / grid.bandwidth();
}

Eigen::MatrixXd heatmap_db(const DomainMatrix& m, double floor_db, bool centered) {
  const auto rows = static_cast<std::size_t>(m.data.rows());
  const auto cols = static_cast<std::size_t>(m.data.cols());
  const double peak = m.data.cwiseAbs().maxCoeff();
  Eigen::MatrixXd db(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double mag = std::abs(m.data(i, j));
      const double v = (peak > 0.0 && mag > 0.0) ? 20.0 * std::log10(mag / peak) : floor_db;
      const std::size_t oi = centered ? shifted(i, rows) : i;
      const std::size_t oj = centered ? shifted(j, cols) : j;
      db(oi, oj) = std::max(v, floor_db);
    }
  return db;
}

void write_heatmap_csv(const Eigen::MatrixXd& db, bool centered, std::ostream& out) {
  const auto rows = static_cast<std::size_t>(db.rows());
  const auto cols = static_cast<std::size_t>(db.cols());
  CsvRow header;
  header << "bin";
  for (std::size_t j = 0; j < cols; ++j)
    header << (centered ? std::to_string(centered_label(j, cols)) : std::to_string(j));
  out << header.str();
  for (std::size_t i = 0; i < rows; ++i) {
    CsvRow row;
    row << (centered ? std::to_string(centered_label(i, rows)) : std::to_string(i));
    for (std::size_t j = 0; j < cols; ++j) row << db(i, j);
    out << row.str();
  }
}

SupportSpread measure_support(const DomainMatrix& angular_delay, double level_db, double core_db) {
  const Eigen::MatrixXd power = angular_delay.data.cwiseAbs2();
  const double peak = power.maxCoeff();
  SupportSpread out;
  if (!(peak > 0.0)) return out;
  const double level = peak * std::pow(10.0, level_db / 10.0);
  const double core = peak * std::pow(10.0, core_db / 10.0);
  for (Eigen::Index j = 0; j < power.cols(); ++j) {
    if (power.col(j).maxCoeff() < core) continue;
    out.angular_per_delay.push_back(static_cast<std::size_t>((power.col(j).array() >= level).count()));
  }
  for (Eigen::Index i = 0; i < power.rows(); ++i) {
    if (power.row(i).maxCoeff() < core) continue;
    out.delay_per_angle.push_back(static_cast<std::size_t>((power.row(i).array() >= level).count()));
  }
  auto ratio = [](const std::vector<std::size_t>& v) {
    if (v.empty()) return 1.0;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return static_cast<double>(*hi) / static_cast<double>(*lo);
  };
  out.angular_spread_ratio = ratio(out.angular_per_delay);
  out.delay_spread_ratio = ratio(out.delay_per_angle);
  return out;
}

}  // namespace nfisac
