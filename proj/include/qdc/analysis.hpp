#pragma once

#include <iosfwd>
#include <vector>

#include "qdc/spectrum.hpp"

namespace qdc {

struct Peak {
  double position;  ///< meV
  double height;    ///< 1/meV
  double fwhm;      ///< meV
  double prominence;
};

struct PeakSet {
  std::vector<Peak> peaks;  ///< ascending position

  std::size_t size() const { return peaks.size(); }
  void write_text(std::ostream& os) const;
  void write_csv(std::ostream& os) const;
};

/// Local maxima whose topographic prominence is at least `min_prominence`
/// times the global maximum. Positions use 3-point parabolic refinement;
/// widths use linear interpolation at half the refined height.
PeakSet find_peaks(const Spectrum& s, double min_prominence = 0.01);

/// Trapezoid integral over the spectrum grid.
double integrate(const Spectrum& s);

}  // namespace qdc
