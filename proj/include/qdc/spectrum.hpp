#pragma once

#include <iosfwd>
#include <vector>

namespace qdc {

enum class Emitter { cavity, qd };

const char* to_string(Emitter e);

/// Uniform frequency grid centered at `center` covering [center - half_span, center + half_span].
struct FrequencyGrid {
  double center = 1000.0;
  double half_span = 15.0;
  double step = 0.01;

  std::vector<double> points() const;
  std::size_t size() const;
};

/// Emission spectrum S(omega) in 1/meV on a uniform ascending grid (meV).
struct Spectrum {
  std::vector<double> grid;
  std::vector<double> values;
  double normalization = 0.0;  ///< n_c for the cavity, n_sigma for the dot
  Emitter emitter = Emitter::cavity;

  double step() const;

  /// Header `omega_mev,s_per_mev`, one row per grid point, full double precision.
  void write_csv(std::ostream& os) const;
};

/// Checks ascending, uniform spacing; throws std::invalid_argument otherwise.
void require_uniform_grid(const std::vector<double>& grid);

/// How independent per-frequency work is scheduled. Both produce bitwise-identical output.
enum class Execution { serial, parallel };

}  // namespace qdc
