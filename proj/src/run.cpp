#include "qdc/run.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qdc/analysis.hpp"

namespace qdc {

namespace {

using Clock = std::chrono::steady_clock;

class ArtifactWriter {
 public:
  ArtifactWriter(const std::string& prefix, RunOutcome& outcome) : prefix_(prefix), outcome_(outcome) {}

  template <typename Fn>
  void write(const std::string& suffix, Fn&& fn) {
    const std::filesystem::path path = prefix_ + suffix;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    fn(os);
    os.flush();
    if (!os) throw std::runtime_error("failed writing " + path.string());
    outcome_.artifacts.push_back(path);
  }

 private:
  std::string prefix_;
  RunOutcome& outcome_;
};

void write_header(std::ostream& os, const RunConfig& c) {
  const auto& p = c.params;
  const auto grid = c.frequency_grid();
  os << "mode            " << to_string(c.mode) << '\n'
     << "emitter         " << to_string(c.emitter) << '\n'
     << "omega_x         " << p.omega_x << " meV\n"
     << "omega_a         " << p.omega_a() << " meV\n"
     << "delta           " << p.delta << " meV\n"
     << "g               " << p.g << " meV\n"
     << "kappa           " << p.kappa << " meV\n"
     << "gamma           " << p.gamma << " meV\n"
     << "pump            " << p.pump << " meV\n"
     << "n_exc           ";
  for (std::size_t k = 0; k < c.n_exc.size(); ++k) os << (k ? "," : "") << c.n_exc[k];
  os << '\n';
  if (c.mode != RunMode::steady) {
    os << "grid            " << grid.center << " +/- " << grid.half_span << " meV, step "
       << grid.step << " meV (" << grid.size() << " points)\n";
  }
}

void write_spectrum_summary(std::ostream& os, const char* label, const Spectrum& s,
                            const PeakSet& peaks) {
  os << '\n' << label << '\n';
  os << (s.emitter == Emitter::cavity ? "n_c             " : "n_sigma         ")
     << std::setprecision(12) << s.normalization << '\n';
  os << "sum rule        " << integrate(s) << std::setprecision(6) << '\n';
  os << "peaks           " << peaks.size() << '\n';
  peaks.write_text(os);
}

void write_warnings(std::ostream& os, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) os << "warning: " << w << '\n';
}

double time_once(const std::function<void()>& fn) {
  const auto t0 = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::vector<BenchRecord> bench(const RunConfig& config, int repeats) {
  const auto grid = config.grid_points();
  const auto spectrum_opts = config.spectrum_options();
  const auto qrt_opts = config.qrt_options();
  std::vector<BenchRecord> out;
  for (int n : config.n_exc) {
    double best_gft = std::numeric_limits<double>::infinity();
    double best_qrt = std::numeric_limits<double>::infinity();
    for (int r = 0; r < repeats; ++r) {
      best_gft = std::min(best_gft, time_once([&] {
        const auto problem = prepare_emission(config.params, n, config.emitter, spectrum_opts);
        (void)gft_spectrum(problem, grid, spectrum_opts);
      }));
      best_qrt = std::min(best_qrt, time_once([&] {
        const auto problem = prepare_emission(config.params, n, config.emitter, spectrum_opts);
        (void)qrt_spectrum(problem, grid, qrt_opts);
      }));
    }
    out.push_back({n, BenchMethod::gft, best_gft, grid.size()});
    out.push_back({n, BenchMethod::qrt, best_qrt, grid.size()});
  }
  return out;
}

void write_bench_table(std::ostream& os, const std::vector<BenchRecord>& records) {
  std::map<int, std::pair<double, double>> rows;
  std::size_t points = 0;
  for (const auto& r : records) {
    auto& row = rows[r.n_exc];
    (r.method == BenchMethod::gft ? row.first : row.second) = r.wall_seconds;
    points = r.grid_points;
  }
  os << "grid points: " << points << '\n';
  os << std::setw(10) << "n_exc" << std::setw(14) << "gft_s" << std::setw(14) << "qrt_s"
     << std::setw(12) << "speedup" << '\n';
  for (const auto& [n, t] : rows) {
    os << std::setw(10) << n << std::fixed << std::setprecision(4) << std::setw(14) << t.first
       << std::setw(14) << t.second << std::setprecision(1) << std::setw(12) << t.second / t.first
       << std::defaultfloat << '\n';
  }
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  const auto old_precision = os.precision(9);
  os << "n_exc,method,wall_seconds,grid_points\n";
  for (const auto& r : records) {
    os << r.n_exc << ',' << (r.method == BenchMethod::gft ? "gft" : "qrt") << ',' << r.wall_seconds
       << ',' << r.grid_points << '\n';
  }
  os.precision(old_precision);
}

RunOutcome run(const RunConfig& config, std::ostream& log) {
  config.validate();
  RunOutcome outcome;
  ArtifactWriter writer(config.out, outcome);
  std::ostringstream report;
  write_header(report, config);

  switch (config.mode) {
    case RunMode::steady: {
      const int n = config.truncation();
      const Liouvillian L = build_liouvillian(config.params, build_basis(n));
      const auto ss = steady_state(L);
      writer.write(".steady.csv", [&](std::ostream& os) { ss.rho.write_csv(os); });
      report << std::setprecision(12) << "\nn_c             " << population(ss.rho, Population::cavity)
             << "\nn_sigma         " << population(ss.rho, Population::exciton)
             << "\ntop manifold    " << ss.top_manifold_population
             << "\nresidual        " << ss.residual << '\n';
      write_warnings(report, ss.warnings);
      break;
    }
    case RunMode::gft:
    case RunMode::qrt:
    case RunMode::compare: {
      const auto grid = config.grid_points();
      const auto opts = config.spectrum_options();
      const auto problem = prepare_emission(config.params, config.truncation(), config.emitter, opts);
      write_warnings(report, problem.steady.warnings);

      std::optional<Spectrum> gft;
      std::optional<Spectrum> qrt;
      if (config.mode != RunMode::qrt) gft = gft_spectrum(problem, grid, opts);
      if (config.mode != RunMode::gft) {
        QrtOptions qopts = config.qrt_options();
        qopts.frame_omega = config.params.omega_a();
        const auto series = evolve_correlation(problem.reduced, problem.g0, problem.weights,
                                               problem.normalization, problem.emitter, qopts);
        write_warnings(report, series.warnings);
        qrt = spectrum_from_correlation(series, grid);
        if (config.mode == RunMode::qrt) {
          writer.write(".correlation.csv", [&](std::ostream& os) { series.write_csv(os); });
        }
      }

      const Spectrum& primary = gft ? *gft : *qrt;
      const PeakSet peaks = find_peaks(primary);
      writer.write(".spectrum.csv", [&](std::ostream& os) { primary.write_csv(os); });
      writer.write(".peaks.csv", [&](std::ostream& os) { peaks.write_csv(os); });
      write_spectrum_summary(report, gft ? "[gft]" : "[qrt]", primary, peaks);

      if (config.mode == RunMode::compare) {
        writer.write(".qrt.spectrum.csv", [&](std::ostream& os) { qrt->write_csv(os); });
        write_spectrum_summary(report, "[qrt]", *qrt, find_peaks(*qrt));
        const auto err = compare_spectra(*gft, *qrt);
        writer.write(".diff.csv", [&](std::ostream& os) {
          os.precision(17);
          os << "omega_mev,gft,qrt,abs_diff\n";
          for (std::size_t k = 0; k < grid.size(); ++k) {
            os << grid[k] << ',' << gft->values[k] << ',' << qrt->values[k] << ','
               << std::abs(gft->values[k] - qrt->values[k]) << '\n';
          }
        });
        report << "\n[gft vs qrt]\nmax_abs         " << err.max_abs << "\nl2              " << err.l2
               << "\ngrid points     " << err.grid_points << '\n';
      }
      break;
    }
    case RunMode::bench: {
      const auto records = bench(config);
      writer.write(".bench.csv", [&](std::ostream& os) { write_bench_csv(os, records); });
      report << '\n';
      write_bench_table(report, records);
      break;
    }
  }

  writer.write(".report.txt", [&](std::ostream& os) { os << report.str(); });
  log << report.str();
  return outcome;
}

}  // namespace qdc
