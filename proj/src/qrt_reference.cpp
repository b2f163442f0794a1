#include "qdc/qrt_reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "flush_denormals.hpp"

namespace qdc {

namespace {

// Phasor recurrence is reseeded from std::polar every block to bound drift.
constexpr std::size_t kPhaseBlock = 256;

// Below this fraction of ||G(0)|| the remaining samples are stored as zero.
constexpr double kNegligible = 1e-200;

}  // namespace

Complex CorrelationSeries::lab_sample(std::size_t k) const {
  return samples[k] * std::polar(1.0, frame_omega * dt * static_cast<double>(k));
}

void CorrelationSeries::write_csv(std::ostream& os) const {
  const auto old_precision = os.precision(17);
  os << "tau,re_k,im_k\n";
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const Complex v = lab_sample(k);
    os << dt * static_cast<double>(k) << ',' << v.real() << ',' << v.imag() << '\n';
  }
  os.precision(old_precision);
}

CorrelationSeries evolve_correlation(const ReducedLiouvillian& Lred, const GreenVector& g0,
                                     const Eigen::VectorXd& weights, double normalization,
                                     Emitter emitter, const QrtOptions& options) {
  if (!g0.is_time_zero()) throw std::invalid_argument("evolve_correlation: g0 must be at tau = 0");
  if (!(options.dt > 0.0) || !(options.t_max > 0.0)) {
    throw std::invalid_argument("evolve_correlation: need dt > 0 and t_max > 0");
  }
  const auto n = static_cast<Eigen::Index>(Lred.size());
  if (g0.values.size() != n || weights.size() != n) {
    throw std::invalid_argument("evolve_correlation: vector lengths do not match the sector");
  }

  CorrelationSeries series;
  series.dt = options.dt;
  series.frame_omega = options.frame_omega;
  if (std::isnan(series.frame_omega)) {
    // mean oscillation frequency of the sector's coherences
    series.frame_omega = Lred.size() > 0 ? Lred.dense.diagonal().imag().mean() : 0.0;
  }
  series.emitter = emitter;
  series.normalization = normalization;

  const auto steps = static_cast<std::size_t>(std::llround(options.t_max / options.dt));
  series.samples.resize(steps + 1);

  const CVector w = weights.cast<Complex>();
  const Complex shift{0.0, -series.frame_omega};
  const auto& L = Lred.sparse;
  auto rhs = [&](const CVector& y) -> CVector { return L * y + shift * y; };

  const double dt = options.dt;
  const detail::FlushDenormals ftz;
  CVector y = g0.values;
  const double norm0 = std::max(y.norm(), 1e-300);
  series.samples[0] = w.transpose() * y;
  CVector k1, k2, k3, k4;
  for (std::size_t s = 1; s <= steps; ++s) {
    k1 = rhs(y);
    k2 = rhs(y + 0.5 * dt * k1);
    k3 = rhs(y + 0.5 * dt * k2);
    k4 = rhs(y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(y.norm() <= 1e3 * norm0)) {
      std::ostringstream msg;
      msg << "evolve_correlation: blow-up at tau = " << dt * static_cast<double>(s)
          << "; reduce dt";
      throw std::runtime_error(msg.str());
    }
    series.samples[s] = w.transpose() * y;
    if (y.norm() < kNegligible * norm0) break;  // the rest stays zero
  }

  const double k0 = std::abs(series.samples[0]);
  const std::size_t tail = std::max<std::size_t>(1, series.samples.size() / 100);
  double tail_max = 0.0;
  for (std::size_t k = series.samples.size() - tail; k < series.samples.size(); ++k) {
    tail_max = std::max(tail_max, std::abs(series.samples[k]));
  }
  if (tail_max > 1e-6 * k0) {
    series.window_adequate = false;
    std::ostringstream msg;
    msg << "t_max too short: |K| over the last 1% of the window reaches " << tail_max / k0
        << " of |K(0)|";
    series.warnings.push_back(msg.str());
  }
  return series;
}

Spectrum spectrum_from_correlation(const CorrelationSeries& series, const std::vector<double>& grid,
                                   Execution execution, bool allow_short_window) {
  if (!series.window_adequate && !allow_short_window) {
    throw std::runtime_error("spectrum_from_correlation: correlation window failed its decay check");
  }
  require_uniform_grid(grid);
  Spectrum out{grid, std::vector<double>(grid.size(), 0.0), series.normalization, series.emitter};
  const std::size_t count = series.samples.size();
  if (count == 0) return out;
  std::size_t active = count;
  while (active > 1 && series.samples[active - 1] == Complex{0.0, 0.0}) --active;
  const double dt = series.dt;
  const double scale = dt / (std::numbers::pi * series.normalization);
  const Complex* samples = series.samples.data();

  auto point = [&](std::size_t g) {
    const double nu = grid[g] - series.frame_omega;
    const Complex step = std::polar(1.0, -nu * dt);
    Complex sum{0.0, 0.0};
    for (std::size_t block = 0; block < active; block += kPhaseBlock) {
      Complex phase = std::polar(1.0, -nu * dt * static_cast<double>(block));
      const std::size_t end = std::min(active, block + kPhaseBlock);
      for (std::size_t k = block; k < end; ++k) {
        sum += samples[k] * phase;
        phase *= step;
      }
    }
    // trapezoid: half weight on both end points
    sum -= 0.5 * samples[0];
    if (count > 1) {
      sum -= 0.5 * samples[count - 1] * std::polar(1.0, -nu * dt * static_cast<double>(count - 1));
    }
    out.values[g] = scale * sum.real();
  };

  const auto n = static_cast<long>(grid.size());
  if (execution == Execution::serial) {
    for (long g = 0; g < n; ++g) point(static_cast<std::size_t>(g));
  } else {
#pragma omp parallel for schedule(static)
    for (long g = 0; g < n; ++g) point(static_cast<std::size_t>(g));
  }
  return out;
}

Spectrum qrt_spectrum(const EmissionProblem& problem, const std::vector<double>& grid,
                      const QrtOptions& options, Execution execution) {
  QrtOptions opts = options;
  if (std::isnan(opts.frame_omega)) opts.frame_omega = problem.params.omega_a();
  const auto series = evolve_correlation(problem.reduced, problem.g0, problem.weights,
                                         problem.normalization, problem.emitter, opts);
  return spectrum_from_correlation(series, grid, execution);
}

ErrorReport compare_spectra(const Spectrum& a, const Spectrum& b) {
  if (a.grid.size() != b.grid.size()) {
    throw std::invalid_argument("compare_spectra: grids differ in size");
  }
  ErrorReport r;
  r.grid_points = a.grid.size();
  double sq = 0.0;
  for (std::size_t k = 0; k < a.grid.size(); ++k) {
    if (std::abs(a.grid[k] - b.grid[k]) > 1e-9 * std::max(1.0, std::abs(a.grid[k]))) {
      throw std::invalid_argument("compare_spectra: grids differ at index " + std::to_string(k));
    }
    const double diff = std::abs(a.values[k] - b.values[k]);
    r.max_abs = std::max(r.max_abs, diff);
    sq += diff * diff;
  }
  if (r.grid_points > 0) r.l2 = std::sqrt(sq / static_cast<double>(r.grid_points));
  return r;
}

}  // namespace qdc
