#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdc/green_spectrum.hpp"
#include "qdc/qrt_reference.hpp"

namespace qdc {

enum class RunMode { gft, qrt, compare, steady, bench };

const char* to_string(RunMode m);
const char* to_string(SolveStrategy s);

/// Raised for malformed configuration text; carries the 1-based line number
/// (0 for command-line overrides).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

struct GridSpec {
  std::optional<double> center;  ///< defaults to omega_a
  double half_span = 15.0;
  double step = 0.01;
};

/// Everything a CLI run needs. Defaults reproduce the resonant strong-coupling
/// set: omega_x = 1000, delta = 0, g = 1, kappa = 2, gamma = 0.005, pump = 0.005.
struct RunConfig {
  SystemParams params;
  std::vector<int> n_exc{10};  ///< one entry, or a list for bench mode
  GridSpec grid;
  Emitter emitter = Emitter::cavity;
  RunMode mode = RunMode::gft;
  SolveStrategy strategy = SolveStrategy::per_frequency_factorization;
  double dt = 0.01;
  double t_max = 4096.0;
  std::string out = "qdc";

  FrequencyGrid frequency_grid() const;
  std::vector<double> grid_points() const { return frequency_grid().points(); }
  /// The single truncation used by non-bench modes.
  int truncation() const;
  QrtOptions qrt_options() const;
  SpectrumOptions spectrum_options() const;

  /// Throws ConfigError(0, ...) on invariant violations.
  void validate() const;
};

/// Parses flat `key = value` text. `#` starts a comment; blank lines are
/// ignored; unknown keys, malformed lines and bad values raise ConfigError.
RunConfig parse_config(std::string_view text);

/// Applies a single `key=value` override on top of an existing config.
void apply_override(RunConfig& config, std::string_view assignment);

}  // namespace qdc
