#include "cascade/semiclassical.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade::semiclassical {

SemiclassicalCase case_for_initial(AtomicLevel level) {
  switch (level) {
    case AtomicLevel::Lower:
      return SemiclassicalCase::StartLower;
    case AtomicLevel::Middle:
      return SemiclassicalCase::StartMiddle;
    case AtomicLevel::Upper:
      return SemiclassicalCase::StartUpper;
  }
  return SemiclassicalCase::StartLower;  // unreachable
}

AtomicLevel initial_level(SemiclassicalCase c) {
  switch (c) {
    case SemiclassicalCase::StartLower:
      return AtomicLevel::Lower;
    case SemiclassicalCase::StartMiddle:
      return AtomicLevel::Middle;
    case SemiclassicalCase::StartUpper:
      return AtomicLevel::Upper;
  }
  return AtomicLevel::Lower;  // unreachable
}

double generalized_rabi(const SemiclassicalParams& params) {
  return std::hypot(params.omega - params.omega0, params.omega1);
}

Populations populations(const SemiclassicalParams& params, SemiclassicalCase c,
                        double t) {
  const double detune = params.omega - params.omega0;
  const double rabi = generalized_rabi(params);
  const double w1_sq = params.omega1 * params.omega1;
  const double rabi_sq = rabi * rabi;
  const double rabi_4 = rabi_sq * rabi_sq;

  const double sin_half = std::sin(0.5 * rabi * t);
  const double s2 = sin_half * sin_half;  // sin^2(Omega t / 2)
  const double s4 = s2 * s2;
  const double sin_full = std::sin(rabi * t);
  const double cos_full = std::cos(rabi * t);
  const double sf2 = sin_full * sin_full;

  // Probability transferred across both gaps (two-photon edge-to-edge).
  const double two_step = (w1_sq * w1_sq / rabi_4) * s4;
  // Middle-level occupation when starting from either edge.
  const double one_step =
      (w1_sq / (2.0 * rabi_4)) * (4.0 * detune * detune * s4 + rabi_sq * sf2);
  // Probability to remain in the starting edge level.
  const double inner = w1_sq * s2 + rabi_sq * cos_full;
  const double remain =
      (inner * inner + detune * detune * rabi_sq * sf2) / rabi_4;

  switch (c) {
    case SemiclassicalCase::StartLower:
      return {two_step, one_step, remain};
    case SemiclassicalCase::StartMiddle: {
      // Upper and lower populations are identical for a middle start; the
      // single expression coincides with one_step above.
      const double wings = one_step;
      const double d2 = detune * detune;
      const double middle = (4.0 * d2 * d2 / rabi_4) * s4 +
                            (4.0 * d2 / rabi_sq) * s2 * cos_full +
                            cos_full * cos_full;
      return {wings, middle, wings};
    }
    case SemiclassicalCase::StartUpper:
      // Mirror of the lower start: upper and lower columns interchange,
      // the middle column is identical.
      return {remain, one_step, two_step};
  }
  throw std::logic_error("populations: unknown case");
}

PopulationSeries population_series(const SemiclassicalParams& params,
                                   SemiclassicalCase c, const TimeGrid& grid) {
  PopulationSeries series;
  series.times = grid.times();
  series.p_upper.reserve(series.times.size());
  series.p_middle.reserve(series.times.size());
  series.p_lower.reserve(series.times.size());
  for (double t : series.times) {
    const Populations p = populations(params, c, t);
    series.p_upper.push_back(p.upper);
    series.p_middle.push_back(p.middle);
    series.p_lower.push_back(p.lower);
  }
  return series;
}

}  // namespace cascade::semiclassical
