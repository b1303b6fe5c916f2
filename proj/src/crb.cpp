#include "nfisac/crb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nfisac/parallel.hpp"
#include "nfisac/simd/kernels.hpp"

namespace nfisac {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Information left after removing the gain nuisance, relative to the raw
// diagonal, below which a parameter counts as unobservable.
constexpr double kRetentionFloor = 1e-20;
constexpr double kDenseRetentionFloor = 1e-13;

bool is_gain(Unknown u) { return u == Unknown::GainReal || u == Unknown::GainImag; }

// Kinematic unknown a enters the phase through
//   X_a(n, k) = A[n] + k * B[n],   d mu / d eta_a = -j 2 pi f_m X_a mu
// with A = d(delay_n)/d eta_a and B = (Ts/c) d(v_n)/d eta_a.
struct Coefficients {
  std::vector<double> a;
  std::vector<double> b;
};

Coefficients coefficients(const EstimationScenario& s, Unknown u) {
  const auto pos = s.geometry.positions();
  const std::size_t n_ant = pos.size();
  const double ts_over_c = s.grid.symbol_duration() / kSpeedOfLight;
  const TargetState& t = s.target;
  Coefficients out{std::vector<double>(n_ant, 0.0), std::vector<double>(n_ant, 0.0)};

  if (s.model == ChannelModel::FarField) {
    const double sin_theta = std::sin(t.theta_rad);
    for (std::size_t n = 0; n < n_ant; ++n) {
      switch (u) {
        case Unknown::Range: out.a[n] = 1.0 / kSpeedOfLight; break;
        case Unknown::Delay: out.a[n] = 1.0; break;
        case Unknown::Angle: out.a[n] = pos[n].x / kSpeedOfLight * sin_theta; break;
        case Unknown::RadialVelocity: out.b[n] = ts_over_c; break;
        default: break;  // transverse velocity is invisible to the planar model
      }
    }
    return out;
  }

  const double r = t.range_m;
  for (std::size_t n = 0; n < n_ant; ++n) {
    const SightLine sl = sight_line(t, pos[n]);
    const double ca = sl.along, ct = sl.across, dist = sl.distance;
    switch (u) {
      case Unknown::Range:
      case Unknown::Delay: {
        const double scale = u == Unknown::Delay ? kSpeedOfLight : 1.0;
        out.a[n] = scale * ca / kSpeedOfLight;
        out.b[n] = scale * ts_over_c * ct * (t.v_radial * ct - t.v_transverse * ca) / dist;
        break;
      }
      case Unknown::Angle:
        out.a[n] = r * ct / kSpeedOfLight;
        out.b[n] = ts_over_c * (t.v_radial * ct - t.v_transverse * ca +
                                (r / dist) * (t.v_transverse * ca * ca - t.v_radial * ca * ct));
        break;
      case Unknown::RadialVelocity: out.b[n] = ts_over_c * ca; break;
      case Unknown::TransverseVelocity: out.b[n] = ts_over_c * ct; break;
      default: break;
    }
  }
  return out;
}

struct Partition {
  std::vector<std::size_t> kinematic;  // indices into unknowns
  std::size_t gain_re = 0;
  std::size_t gain_im = 0;
};

Partition partition(const std::vector<Unknown>& unknowns) {
  Partition p;
  for (std::size_t i = 0; i < unknowns.size(); ++i) {
    if (unknowns[i] == Unknown::GainReal) p.gain_re = i;
    else if (unknowns[i] == Unknown::GainImag) p.gain_im = i;
    else p.kinematic.push_back(i);
  }
  return p;
}

// Completes a report from the full FIM and the Schur complement `schur` of
// the gain block (kinematic x kinematic, ordered as part.kinematic).
CrbReport finish(const std::vector<Unknown>& unknowns, const Eigen::MatrixXd& fim,
                 const Eigen::MatrixXd& schur, double retention_floor = kRetentionFloor) {
  const Partition part = partition(unknowns);
  const std::size_t p = unknowns.size();
  const std::size_t q = part.kinematic.size();
  CrbReport rep;
  rep.unknowns = unknowns;
  rep.fim = fim;
  rep.crb.assign(p, kInf);

  Eigen::MatrixXd schur_inv = Eigen::MatrixXd::Zero(q, q);
  if (q > 0) {
    Eigen::VectorXd scale(q);
    for (std::size_t i = 0; i < q; ++i) {
      const double raw = fim(part.kinematic[i], part.kinematic[i]);
      const double kept = schur(i, i);
      if (!(raw > 0.0) || !(kept > retention_floor * raw)) {
        rep.condition_number = kInf;
        return rep;
      }
      scale(i) = 1.0 / std::sqrt(kept);
    }
    const Eigen::MatrixXd scaled = scale.asDiagonal() * schur * scale.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled);
    const Eigen::VectorXd ev = eig.eigenvalues();
    rep.condition_number = ev.minCoeff() > 0.0 ? ev.maxCoeff() / ev.minCoeff() : kInf;
    if (!(rep.condition_number <= kUnidentifiableCondition)) return rep;
    const Eigen::MatrixXd scaled_inv =
        eig.eigenvectors() * ev.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
    schur_inv = scale.asDiagonal() * scaled_inv * scale.asDiagonal();
  } else {
    rep.condition_number = 1.0;
  }
  rep.identifiable = true;

  // Gain block of the inverse: G^-1 + G^-1 C S^-1 C^T G^-1 where G is the
  // gain-gain FIM block and C the gain-kinematic coupling.
  Eigen::Matrix2d g;
  g << fim(part.gain_re, part.gain_re), fim(part.gain_re, part.gain_im),
      fim(part.gain_im, part.gain_re), fim(part.gain_im, part.gain_im);
  const Eigen::Matrix2d g_inv = g.inverse();
  Eigen::MatrixXd c(2, q);
  for (std::size_t j = 0; j < q; ++j) {
    c(0, j) = fim(part.gain_re, part.kinematic[j]);
    c(1, j) = fim(part.gain_im, part.kinematic[j]);
  }
  const Eigen::MatrixXd gain_cov = g_inv + g_inv * c * schur_inv * c.transpose() * g_inv;
  for (std::size_t i = 0; i < q; ++i) rep.crb[part.kinematic[i]] = schur_inv(i, i);
  rep.crb[part.gain_re] = gain_cov(0, 0);
  rep.crb[part.gain_im] = gain_cov(1, 1);
  return rep;
}

}  // namespace

const char* to_string(Unknown u) {
  switch (u) {
    case Unknown::Range: return "range";
    case Unknown::Delay: return "delay";
    case Unknown::Angle: return "angle";
    case Unknown::RadialVelocity: return "v_radial";
    case Unknown::TransverseVelocity: return "v_transverse";
    case Unknown::GainReal: return "gain_re";
    case Unknown::GainImag: return "gain_im";
  }
  return "?";
}

double EstimationScenario::noise_variance() const {
  return std::norm(target.gain) / std::pow(10.0, snr_db / 10.0);
}

void EstimationScenario::validate() const {
  grid.validate();
  target.validate();
  if (!std::isfinite(snr_db)) throw InvalidArgument("snr must be finite for a CRB");
  if (!(std::norm(target.gain) > 0.0)) throw InvalidArgument("target gain must be nonzero");
  if (model == ChannelModel::FarField && !geometry.is_linear())
    throw InvalidArgument("far-field model is defined for linear arrays only");
  std::vector<Unknown> sorted = unknowns;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("unknowns must be distinct");
  const auto has = [&](Unknown u) { return std::find(unknowns.begin(), unknowns.end(), u) != unknowns.end(); };
  if (!has(Unknown::GainReal) || !has(Unknown::GainImag))
    throw InvalidArgument("unknowns must include both gain components");
  if (has(Unknown::Range) && has(Unknown::Delay))
    throw InvalidArgument("range and delay are the same parameter");
  for (const Point2& q : geometry.positions())
    if (!(sight_line(target, q).distance > 1e-9 * target.range_m))
      throw InvalidArgument("target is collocated with an array element");
}

std::optional<double> CrbReport::bound(Unknown u) const {
  for (std::size_t i = 0; i < unknowns.size(); ++i)
    if (unknowns[i] == u) return crb[i];
  return std::nullopt;
}

GradientTensor mean_signal_gradient(const EstimationScenario& s) {
  s.validate();
  const ChannelTensor mu = synthesize(s.model, s.grid, s.geometry, s.target);
  const std::size_t n_ant = mu.antennas(), n_sc = mu.subcarriers(), n_sym = mu.symbols();
  GradientTensor g(n_ant, n_sc, n_sym, s.unknowns.size());
  const std::vector<double> freqs = s.grid.subcarrier_frequencies();
  const cplx inv_beta = 1.0 / s.target.gain;
  for (std::size_t i = 0; i < s.unknowns.size(); ++i) {
    const Unknown u = s.unknowns[i];
    if (is_gain(u)) {
      const cplx factor = u == Unknown::GainReal ? inv_beta : cplx(0.0, 1.0) * inv_beta;
      for (std::size_t n = 0; n < n_ant; ++n)
        for (std::size_t m = 0; m < n_sc; ++m)
          for (std::size_t k = 0; k < n_sym; ++k) g.at(n, m, k, i) = factor * mu.at(n, m, k);
      continue;
    }
    const Coefficients co = coefficients(s, u);
    for (std::size_t n = 0; n < n_ant; ++n)
      for (std::size_t m = 0; m < n_sc; ++m)
        for (std::size_t k = 0; k < n_sym; ++k) {
          const double x = co.a[n] + static_cast<double>(k) * co.b[n];
          g.at(n, m, k, i) = cplx(0.0, -kTwoPi * freqs[m] * x) * mu.at(n, m, k);
        }
  }
  return g;
}

CrbReport fisher_information(const EstimationScenario& s) {
  s.validate();
  const Partition part = partition(s.unknowns);
  const std::size_t p = s.unknowns.size();
  const std::size_t q = part.kinematic.size();
  const double n_ant = static_cast<double>(s.geometry.size());
  const double n_sc = static_cast<double>(s.grid.n_subcarriers);
  const double n_sym = static_cast<double>(s.grid.n_symbols);
  const double entries = n_ant * n_sc * n_sym;
  const double power = std::norm(s.target.gain);
  const double c0 = 2.0 / s.noise_variance();

  // Subcarrier moments (the grid is centered on the carrier).
  const double df = s.grid.subcarrier_spacing_hz;
  const double f_mean = s.grid.carrier_hz;
  const double f_var = df * df * (n_sc * n_sc - 1.0) / 12.0;
  const double f_sq = f_mean * f_mean + f_var;
  // Symbol-index moments.
  const double k_mean = (n_sym - 1.0) / 2.0;
  const double k_var = (n_sym * n_sym - 1.0) / 12.0;

  std::vector<Coefficients> co(q);
  for (std::size_t j = 0; j < q; ++j) co[j] = coefficients(s, s.unknowns[part.kinematic[j]]);

  // Per-antenna phase slope at the mean symbol, and its antenna average.
  std::vector<std::vector<double>> centered(q);
  std::vector<double> x_mean(q, 0.0);
  for (std::size_t j = 0; j < q; ++j) {
    std::vector<double> pj(co[j].a.size());
    for (std::size_t n = 0; n < pj.size(); ++n) pj[n] = co[j].a[n] + k_mean * co[j].b[n];
    double sum = 0.0;
    for (double v : pj) sum += v;
    x_mean[j] = sum / n_ant;
    for (double& v : pj) v -= x_mean[j];
    centered[j] = std::move(pj);
  }

  const double two_pi_sq = kTwoPi * kTwoPi;
  Eigen::MatrixXd fim = Eigen::MatrixXd::Zero(p, p);
  Eigen::MatrixXd schur(q, q);
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = a; b < q; ++b) {
      double cov_p = 0.0, mean_bb = 0.0;
      for (std::size_t n = 0; n < centered[a].size(); ++n) {
        cov_p += centered[a][n] * centered[b][n];
        mean_bb += co[a].b[n] * co[b].b[n];
      }
      cov_p /= n_ant;
      mean_bb /= n_ant;
      // E[X_a X_b] over (n, k), and its centered counterpart.
      const double cov_x = cov_p + k_var * mean_bb;
      const double raw_x = cov_x + x_mean[a] * x_mean[b];
      const double f_ab = c0 * power * two_pi_sq * entries * f_sq * raw_x;
      const double s_ab = c0 * power * two_pi_sq * entries * (f_sq * cov_x + f_var * x_mean[a] * x_mean[b]);
      fim(part.kinematic[a], part.kinematic[b]) = fim(part.kinematic[b], part.kinematic[a]) = f_ab;
      schur(a, b) = schur(b, a) = s_ab;
    }
    // Coupling to the gain: Re(conj(-j 2 pi f X mu) mu / beta) = 2 pi f X Im(beta), etc.
    const double sum_fx = entries * f_mean * x_mean[a];
    fim(part.kinematic[a], part.gain_re) = fim(part.gain_re, part.kinematic[a]) =
        c0 * kTwoPi * s.target.gain.imag() * sum_fx;
    fim(part.kinematic[a], part.gain_im) = fim(part.gain_im, part.kinematic[a]) =
        -c0 * kTwoPi * s.target.gain.real() * sum_fx;
  }
  fim(part.gain_re, part.gain_re) = c0 * entries;
  fim(part.gain_im, part.gain_im) = c0 * entries;
  return finish(s.unknowns, fim, schur);
}

CrbReport fisher_information_dense(const EstimationScenario& s) {
  const GradientTensor g = mean_signal_gradient(s);
  const std::size_t p = s.unknowns.size();
  const double c0 = 2.0 / s.noise_variance();
  Eigen::MatrixXd fim(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j)
      fim(i, j) = fim(j, i) = c0 * simd::dotc(g.parameter(i), g.parameter(j)).real();

  const Partition part = partition(s.unknowns);
  const std::size_t q = part.kinematic.size();
  Eigen::Matrix2d gg;
  gg << fim(part.gain_re, part.gain_re), fim(part.gain_re, part.gain_im),
      fim(part.gain_im, part.gain_re), fim(part.gain_im, part.gain_im);
  Eigen::MatrixXd c(2, q), kk(q, q);
  for (std::size_t a = 0; a < q; ++a) {
    c(0, a) = fim(part.gain_re, part.kinematic[a]);
    c(1, a) = fim(part.gain_im, part.kinematic[a]);
    for (std::size_t b = 0; b < q; ++b) kk(a, b) = fim(part.kinematic[a], part.kinematic[b]);
  }
  // Plain subtraction: anything under ~1e-13 of the raw diagonal is rounding.
  const Eigen::MatrixXd schur = kk - c.transpose() * gg.inverse() * c;
  return finish(s.unknowns, fim, schur, kDenseRetentionFloor);
}

CrbMap crb_map(const EstimationScenario& scenario, const PolarRegion& region) {
  if (std::find(scenario.unknowns.begin(), scenario.unknowns.end(), Unknown::Range) ==
      scenario.unknowns.end())
    throw InvalidArgument("crb map needs range among the unknowns");
  if (region.ranges_m.empty() || region.angles_rad.empty())
    throw InvalidArgument("crb map region is empty");
  CrbMap out;
  out.ranges_m = region.ranges_m;
  out.angles_rad = region.angles_rad;
  const std::size_t n_ang = region.angles_rad.size();
  out.crb_range.assign(region.ranges_m.size() * n_ang, kInf);
  parallel_for(out.crb_range.size(), [&](std::size_t cell) {
    EstimationScenario local = scenario;
    local.target.range_m = region.ranges_m[cell / n_ang];
    local.target.theta_rad = region.angles_rad[cell % n_ang];
    const CrbReport rep = fisher_information(local);
    if (rep.identifiable) out.crb_range[cell] = *rep.bound(Unknown::Range);
  });
  out.unidentifiable_cells = static_cast<std::size_t>(
      std::count_if(out.crb_range.begin(), out.crb_range.end(), [](double v) { return std::isinf(v); }));
  return out;
}

}  // namespace nfisac
