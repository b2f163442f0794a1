#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "qdc/green_spectrum.hpp"

namespace qdc {

struct QrtOptions {
  double dt = 0.01;       ///< 1/meV
  double t_max = 4096.0;  ///< 1/meV
  /// Rotating-frame frequency removed before integration. The offset +1
  /// coherences oscillate near omega_a, far beyond the RK4 stability limit at
  /// dt = 0.01; propagating exp(-i frame tau) G(tau) is exact and keeps the
  /// step stable. NaN selects omega_a in qrt_spectrum and the mean diagonal
  /// frequency of L_red in evolve_correlation.
  double frame_omega = std::numeric_limits<double>::quiet_NaN();
};

/// K(tau_k) = w . G(tau_k), tau_k = k dt, stored in the rotating frame.
struct CorrelationSeries {
  double dt = 0.0;
  double frame_omega = 0.0;
  std::vector<Complex> samples;  ///< exp(-i frame tau_k) K(tau_k)
  Emitter emitter = Emitter::cavity;
  double normalization = 0.0;
  bool window_adequate = true;
  std::vector<std::string> warnings;

  /// K(tau_k) in the laboratory frame.
  Complex lab_sample(std::size_t k) const;

  /// Header `tau,re_k,im_k` with laboratory-frame values.
  void write_csv(std::ostream& os) const;
};

/// Propagates dG/dtau = L_red G from g0 with fixed-step RK4 and records
/// K(tau_k). Throws on blow-up; flags (does not throw) a window whose tail
/// has not decayed below 1e-6 |K(0)|.
CorrelationSeries evolve_correlation(const ReducedLiouvillian& Lred, const GreenVector& g0,
                                     const Eigen::VectorXd& weights, double normalization,
                                     Emitter emitter, const QrtOptions& options = {});

/// S(omega) = Re sum_k w_k K(tau_k) exp(-i omega tau_k) dt / (pi n) with
/// trapezoid end weights. The sign matches the resolvent (i omega - L)^-1.
///
/// Throws when the series failed its decay check unless `allow_short_window`.
Spectrum spectrum_from_correlation(const CorrelationSeries& series, const std::vector<double>& grid,
                                   Execution execution = Execution::parallel,
                                   bool allow_short_window = false);

/// End-to-end time-domain route sharing L_red and G(0) with `problem`.
Spectrum qrt_spectrum(const EmissionProblem& problem, const std::vector<double>& grid,
                      const QrtOptions& options = {}, Execution execution = Execution::parallel);

struct ErrorReport {
  double max_abs = 0.0;
  double l2 = 0.0;  ///< root-mean-square difference
  std::size_t grid_points = 0;
};

/// Pointwise comparison on identical grids; throws std::invalid_argument otherwise.
ErrorReport compare_spectra(const Spectrum& a, const Spectrum& b);

}  // namespace qdc
