#include "qdc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace qdc {

namespace {

double base_level(const std::vector<double>& v, std::size_t peak, int direction) {
  double lowest = v[peak];
  auto k = static_cast<long>(peak);
  const auto n = static_cast<long>(v.size());
  for (k += direction; k >= 0 && k < n; k += direction) {
    if (v[static_cast<std::size_t>(k)] > v[peak]) break;
    lowest = std::min(lowest, v[static_cast<std::size_t>(k)]);
  }
  return lowest;
}

double half_crossing(const std::vector<double>& x, const std::vector<double>& v, std::size_t peak,
                     double half, int direction) {
  auto k = static_cast<long>(peak);
  const auto n = static_cast<long>(v.size());
  while (true) {
    const long next = k + direction;
    if (next < 0 || next >= n) return x[static_cast<std::size_t>(k)];
    const double a = v[static_cast<std::size_t>(k)];
    const double b = v[static_cast<std::size_t>(next)];
    if (b < half) {
      const double t = (a - half) / (a - b);
      return x[static_cast<std::size_t>(k)] +
             t * (x[static_cast<std::size_t>(next)] - x[static_cast<std::size_t>(k)]);
    }
    k = next;
  }
}

}  // namespace

PeakSet find_peaks(const Spectrum& s, double min_prominence) {
  PeakSet out;
  const auto& v = s.values;
  const auto& x = s.grid;
  if (v.size() < 3) return out;
  require_uniform_grid(x);
  const double global_max = *std::max_element(v.begin(), v.end());
  if (!(global_max > 0.0)) return out;
  const double threshold = min_prominence * global_max;
  const double h = x[1] - x[0];

  std::size_t i = 1;
  while (i + 1 < v.size()) {
    if (!(v[i] > v[i - 1])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
    if (j + 1 >= v.size() || !(v[j + 1] < v[i])) {
      i = j + 1;
      continue;
    }
    const std::size_t top = (i + j) / 2;
    const double prominence = v[top] - std::max(base_level(v, top, -1), base_level(v, top, +1));
    if (prominence >= threshold && v[top] > 0.0) {
      const double y0 = v[top - 1], y1 = v[top], y2 = v[top + 1];
      const double denom = y0 - 2.0 * y1 + y2;
      const double offset = denom != 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
      const double height = y1 - 0.25 * (y0 - y2) * offset;
      const double half = 0.5 * height;
      const double fwhm = half_crossing(x, v, top, half, +1) - half_crossing(x, v, top, half, -1);
      out.peaks.push_back({x[top] + offset * h, height, fwhm, prominence});
    }
    i = j + 1;
  }
  return out;
}

double integrate(const Spectrum& s) {
  require_uniform_grid(s.grid);
  double sum = 0.0;
  for (std::size_t k = 1; k < s.grid.size(); ++k) {
    sum += 0.5 * (s.values[k] + s.values[k - 1]) * (s.grid[k] - s.grid[k - 1]);
  }
  return sum;
}

void PeakSet::write_text(std::ostream& os) const {
  os << std::setw(16) << "position_mev" << std::setw(16) << "height_per_mev" << std::setw(14)
     << "fwhm_mev" << '\n';
  for (const auto& p : peaks) {
    os << std::fixed << std::setprecision(6) << std::setw(16) << p.position << std::setw(16)
       << p.height << std::setw(14) << p.fwhm << '\n';
  }
  os << std::defaultfloat;
}

void PeakSet::write_csv(std::ostream& os) const {
  const auto old_precision = os.precision(17);
  os << "position_mev,height_per_mev,fwhm_mev,prominence\n";
  for (const auto& p : peaks) {
    os << p.position << ',' << p.height << ',' << p.fwhm << ',' << p.prominence << '\n';
  }
  os.precision(old_precision);
}

}  // namespace qdc
