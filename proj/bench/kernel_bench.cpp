// Serial reference vs OpenMP kernels for the two per-frequency loops:
// the resolvent sweep (one shifted solve per grid point) and the one-sided
// transform of the correlation series.
//
//   qdc-kernel-bench [n_exc ...]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <vector>

#include "qdc/green_spectrum.hpp"
#include "qdc/qrt_reference.hpp"

namespace {

template <typename Fn>
double min_seconds(int repeats, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes;
  for (int i = 1; i < argc; ++i) sizes.push_back(std::atoi(argv[i]));
  if (sizes.empty()) sizes = {5, 10, 20, 40};

  const qdc::SystemParams params;  // resonant strong-coupling defaults
  const auto grid = qdc::FrequencyGrid{params.omega_a(), 15.0, 0.048}.points();
  std::cout << "threads: " << omp_get_max_threads() << ", grid points: " << grid.size() << "\n\n";
  std::cout << std::setw(6) << "n_exc" << std::setw(12) << "kernel" << std::setw(12) << "serial_s"
            << std::setw(12) << "omp_s" << std::setw(10) << "ratio" << std::setw(10) << "same"
            << '\n';

  for (int n : sizes) {
    const auto problem = qdc::prepare_emission(params, n, qdc::Emitter::cavity);
    std::vector<qdc::Complex> a, b;
    const double sweep_serial = min_seconds(3, [&] {
      a = qdc::resolvent_sweep(problem.reduced, problem.g0, problem.weights, grid, qdc::Execution::serial);
    });
    const double sweep_omp = min_seconds(3, [&] {
      b = qdc::resolvent_sweep(problem.reduced, problem.g0, problem.weights, grid, qdc::Execution::parallel);
    });

    qdc::QrtOptions opts;
    opts.frame_omega = params.omega_a();
    const auto series = qdc::evolve_correlation(problem.reduced, problem.g0, problem.weights,
                                                problem.normalization, problem.emitter, opts);
    qdc::Spectrum s, p;
    const double ft_serial = min_seconds(3, [&] {
      s = qdc::spectrum_from_correlation(series, grid, qdc::Execution::serial);
    });
    const double ft_omp = min_seconds(3, [&] {
      p = qdc::spectrum_from_correlation(series, grid, qdc::Execution::parallel);
    });

    auto row = [&](const char* name, double ts, double tp, bool same) {
      std::cout << std::setw(6) << n << std::setw(12) << name << std::fixed << std::setprecision(4)
                << std::setw(12) << ts << std::setw(12) << tp << std::setprecision(2) << std::setw(10)
                << ts / tp << std::setw(10) << (same ? "yes" : "NO") << std::defaultfloat << '\n';
    };
    row("sweep", sweep_serial, sweep_omp, a == b);
    row("transform", ft_serial, ft_omp, s.values == p.values);
  }
  return 0;
}
