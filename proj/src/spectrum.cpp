#include "qdc/spectrum.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qdc {

const char* to_string(Emitter e) { return e == Emitter::cavity ? "cavity" : "qd"; }

std::size_t FrequencyGrid::size() const {
  if (!(step > 0.0) || !(half_span > 0.0)) {
    throw std::invalid_argument("frequency grid: span and step must be positive");
  }
  return static_cast<std::size_t>(std::llround(2.0 * half_span / step)) + 1;
}

std::vector<double> FrequencyGrid::points() const {
  const std::size_t n = size();
  const double start = center - step * static_cast<double>(n - 1) / 2.0;
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = start + step * static_cast<double>(k);
  return out;
}

double Spectrum::step() const { return grid.size() > 1 ? grid[1] - grid[0] : 0.0; }

void Spectrum::write_csv(std::ostream& os) const {
  const auto old_precision = os.precision(17);
  os << "omega_mev,s_per_mev\n";
  for (std::size_t k = 0; k < grid.size(); ++k) os << grid[k] << ',' << values[k] << '\n';
  os.precision(old_precision);
}

void require_uniform_grid(const std::vector<double>& grid) {
  if (grid.size() < 2) return;
  const double h = grid[1] - grid[0];
  if (!(h > 0.0)) throw std::invalid_argument("grid must be strictly ascending");
  const double scale = std::max(std::abs(grid.front()), std::abs(grid.back()));
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double hk = grid[k] - grid[k - 1];
    if (!(hk > 0.0) || std::abs(hk - h) > 1e-9 * std::max(scale, 1.0)) {
      throw std::invalid_argument("grid must be uniform and strictly ascending");
    }
  }
}

}  // namespace qdc
