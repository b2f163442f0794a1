#include "qdc/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace qdc {

const char* to_string(RunMode m) {
  switch (m) {
    case RunMode::gft: return "gft";
    case RunMode::qrt: return "qrt";
    case RunMode::compare: return "compare";
    case RunMode::steady: return "steady";
    case RunMode::bench: return "bench";
  }
  return "?";
}

const char* to_string(SolveStrategy s) {
  return s == SolveStrategy::per_frequency_factorization ? "per_frequency" : "spectral";
}

ConfigError::ConfigError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view v, int line) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(line, "'" + std::string(key) + "' expects a number, got '" + std::string(v) + "'");
  }
  return out;
}

int parse_int(std::string_view key, std::string_view v, int line) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError(line, "'" + std::string(key) + "' expects an integer, got '" + std::string(v) + "'");
  }
  return out;
}

void assign(RunConfig& c, std::string_view key, std::string_view value, int line) {
  auto num = [&] { return parse_double(key, value, line); };
  if (key == "omega_x") c.params.omega_x = num();
  else if (key == "delta") c.params.delta = num();
  else if (key == "g") c.params.g = num();
  else if (key == "kappa") c.params.kappa = num();
  else if (key == "gamma") c.params.gamma = num();
  else if (key == "pump") c.params.pump = num();
  else if (key == "grid_center") c.grid.center = num();
  else if (key == "grid_span") c.grid.half_span = num();
  else if (key == "grid_step") c.grid.step = num();
  else if (key == "dt") c.dt = num();
  else if (key == "t_max") c.t_max = num();
  else if (key == "n_exc") {
    c.n_exc.clear();
    std::size_t pos = 0;
    while (pos <= value.size()) {
      const auto comma = value.find(',', pos);
      const auto item = trim(value.substr(pos, comma == std::string_view::npos ? value.npos : comma - pos));
      c.n_exc.push_back(parse_int(key, item, line));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
  } else if (key == "emitter") {
    if (value == "cavity") c.emitter = Emitter::cavity;
    else if (value == "qd") c.emitter = Emitter::qd;
    else throw ConfigError(line, "emitter must be 'cavity' or 'qd', got '" + std::string(value) + "'");
  } else if (key == "mode") {
    if (value == "gft") c.mode = RunMode::gft;
    else if (value == "qrt") c.mode = RunMode::qrt;
    else if (value == "compare") c.mode = RunMode::compare;
    else if (value == "steady") c.mode = RunMode::steady;
    else if (value == "bench") c.mode = RunMode::bench;
    else throw ConfigError(line, "unknown mode '" + std::string(value) + "'");
  } else if (key == "strategy") {
    if (value == "per_frequency") c.strategy = SolveStrategy::per_frequency_factorization;
    else if (value == "spectral") c.strategy = SolveStrategy::spectral_decomposition;
    else throw ConfigError(line, "strategy must be 'per_frequency' or 'spectral'");
  } else if (key == "out") {
    if (value.empty()) throw ConfigError(line, "'out' must not be empty");
    c.out = std::string(value);
  } else {
    throw ConfigError(line, "unknown key '" + std::string(key) + "'");
  }
}

void assign_line(RunConfig& c, std::string_view text, int line) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ConfigError(line, "expected 'key = value'");
  const auto key = trim(text.substr(0, eq));
  const auto value = trim(text.substr(eq + 1));
  if (key.empty()) throw ConfigError(line, "missing key");
  if (value.empty()) throw ConfigError(line, "missing value for '" + std::string(key) + "'");
  assign(c, key, value, line);
}

}  // namespace

FrequencyGrid RunConfig::frequency_grid() const {
  return FrequencyGrid{grid.center.value_or(params.omega_a()), grid.half_span, grid.step};
}

int RunConfig::truncation() const {
  if (n_exc.size() != 1) {
    throw ConfigError(0, "mode '" + std::string(to_string(mode)) + "' takes a single n_exc");
  }
  return n_exc.front();
}

QrtOptions RunConfig::qrt_options() const {
  QrtOptions o;
  o.dt = dt;
  o.t_max = t_max;
  return o;
}

SpectrumOptions RunConfig::spectrum_options() const {
  SpectrumOptions o;
  o.strategy = strategy;
  return o;
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  if (!(grid.step > 0.0)) throw ConfigError(0, "grid_step must be positive");
  if (!(grid.half_span > 0.0)) throw ConfigError(0, "grid_span must be positive");
  if (!(dt > 0.0) || !(t_max > 0.0)) throw ConfigError(0, "dt and t_max must be positive");
  if (n_exc.empty()) throw ConfigError(0, "n_exc is empty");
  const int floor = mode == RunMode::steady ? 0 : 1;
  for (int n : n_exc) {
    if (n < floor) throw ConfigError(0, "n_exc must be >= " + std::to_string(floor));
  }
  if (mode != RunMode::bench) truncation();
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) assign_line(c, line, line_no);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return c;
}

void apply_override(RunConfig& config, std::string_view assignment) {
  try {
    assign_line(config, trim(assignment), 0);
  } catch (const ConfigError& e) {
    throw ConfigError(0, "--set " + std::string(assignment) + ": " + e.what());
  }
}

}  // namespace qdc
