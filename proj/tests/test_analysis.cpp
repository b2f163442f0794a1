#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "qdc/analysis.hpp"

using qdc::Emitter;
using qdc::Spectrum;
using namespace qdc::oracle;

namespace {

Spectrum sampled(double center, double half_span, double step, auto f) {
  Spectrum s;
  s.grid = qdc::FrequencyGrid{center, half_span, step}.points();
  for (double w : s.grid) s.values.push_back(f(w));
  s.normalization = 1.0;
  s.emitter = Emitter::cavity;
  return s;
}

}  // namespace

TEST_CASE("single Lorentzian") {
  const auto s = sampled(1000.0, 15.0, 0.01, [](double w) { return lorentzian(w, 1000.0, 0.5); });
  const auto peaks = qdc::find_peaks(s);
  REQUIRE(peaks.size() == 1u);
  CHECK(peaks.peaks[0].position == doctest::Approx(1000.0).epsilon(1e-9));
  CHECK(peaks.peaks[0].fwhm == doctest::Approx(1.0).epsilon(0.05));
  CHECK(peaks.peaks[0].height == doctest::Approx(1.0 / (std::numbers::pi * 0.5)).epsilon(1e-3));
}

TEST_CASE("off-grid peak is refined between samples") {
  const auto s = sampled(0.0, 5.0, 0.1, [](double w) { return lorentzian(w, 0.537, 0.8); });
  const auto peaks = qdc::find_peaks(s);
  REQUIRE(peaks.size() == 1u);
  CHECK(std::abs(peaks.peaks[0].position - 0.537) < 0.01);
}

TEST_CASE("degenerate inputs have no peaks") {
  CHECK(qdc::find_peaks(Spectrum{}).size() == 0u);
  CHECK(qdc::find_peaks(sampled(0.0, 1.0, 0.1, [](double) { return 0.0; })).size() == 0u);
  CHECK(qdc::find_peaks(sampled(0.0, 1.0, 0.1, [](double) { return 3.0; })).size() == 0u);
  CHECK(qdc::find_peaks(sampled(0.0, 1.0, 0.1, [](double w) { return w; })).size() == 0u);
}

TEST_CASE("resolved doublet") {
  const auto s = sampled(0.0, 10.0, 0.01,
                         [](double w) { return lorentzian(w, -1.0, 0.3) + 0.5 * lorentzian(w, 1.2, 0.3); });
  const auto peaks = qdc::find_peaks(s);
  REQUIRE(peaks.size() == 2u);
  CHECK(peaks.peaks[0].position == doctest::Approx(-1.0).epsilon(0.01));
  CHECK(peaks.peaks[1].position == doctest::Approx(1.2).epsilon(0.01));
  CHECK(peaks.peaks[0].height > peaks.peaks[1].height);
}

TEST_CASE("small ripples are suppressed by the prominence threshold") {
  const auto s = sampled(0.0, 10.0, 0.01, [](double w) {
    return lorentzian(w, 0.0, 0.5) + 1e-4 * std::sin(40.0 * w);
  });
  CHECK(qdc::find_peaks(s, 0.01).size() == 1u);
}

TEST_CASE("flat-topped peak reports its middle") {
  Spectrum s;
  s.grid = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  s.values = {0.0, 1.0, 2.0, 2.0, 2.0, 1.0, 0.0};
  const auto peaks = qdc::find_peaks(s);
  REQUIRE(peaks.size() == 1u);
  CHECK(peaks.peaks[0].position == doctest::Approx(3.0));
}

TEST_CASE("peak positions and widths are scale invariant") {
  const auto f = [](double w) { return lorentzian(w, 1.0, 0.4) + lorentzian(w, -2.0, 0.7); };
  const auto a = qdc::find_peaks(sampled(0.0, 10.0, 0.01, f));
  const auto b = qdc::find_peaks(sampled(0.0, 10.0, 0.01, [&](double w) { return 37.0 * f(w); }));
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a.peaks[k].position == doctest::Approx(b.peaks[k].position).epsilon(1e-12));
    CHECK(a.peaks[k].fwhm == doctest::Approx(b.peaks[k].fwhm).epsilon(1e-12));
    CHECK(b.peaks[k].height == doctest::Approx(37.0 * a.peaks[k].height).epsilon(1e-12));
  }
}

TEST_CASE("trapezoid integration") {
  CHECK(qdc::integrate(sampled(0.0, 1.0, 0.25, [](double) { return 2.0; })) == doctest::Approx(4.0));
  CHECK(qdc::integrate(sampled(0.0, 1.0, 0.25, [](double w) { return w; })) == doctest::Approx(0.0));
  CHECK(qdc::integrate(sampled(1.0, 1.0, 0.5, [](double w) { return w * w; })) == doctest::Approx(2.75));
  CHECK(qdc::integrate(Spectrum{}) == 0.0);

  const auto f = sampled(0.0, 3.0, 0.1, [](double w) { return std::exp(-w * w); });
  const auto g = sampled(0.0, 3.0, 0.1, [](double w) { return std::cos(w); });
  auto h = f;
  for (std::size_t k = 0; k < h.values.size(); ++k) h.values[k] = 2.0 * f.values[k] - 3.0 * g.values[k];
  CHECK(qdc::integrate(h) == doctest::Approx(2.0 * qdc::integrate(f) - 3.0 * qdc::integrate(g)));

  const auto wide = sampled(0.0, 2000.0, 0.01, [](double w) { return lorentzian(w, 0.0, 0.5); });
  CHECK(qdc::integrate(wide) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("peak table output") {
  qdc::PeakSet set;
  set.peaks.push_back({999.5, 1.25, 0.5, 1.0});
  std::ostringstream csv;
  set.write_csv(csv);
  CHECK(csv.str().rfind("position_mev,", 0) == 0);
  std::ostringstream text;
  set.write_text(text);
  CHECK(text.str().find("999.5") != std::string::npos);
}
