// fieldstats.hpp - Coherent-state (Poisson) weighting of the quantized
// manifold populations, truncation control, and collapse/revival
// diagnostics.

#pragma once

#include "cascade/core.hpp"
#include "cascade/jcm.hpp"

namespace cascade::fieldstats {

/// Poisson photon statistics of a coherent field, truncated so the omitted
/// tail mass stays below a tolerance. Weights are the raw probabilities
/// P_n = exp(-nbar) nbar^n / n! (not renormalized).
struct CoherentField {
  double nbar;
  int truncation;               // largest retained photon index N_max
  std::vector<double> weights;  // weights[n], n = 0..truncation
};

/// Builds the truncated Poisson weights in log space (overflow-safe for
/// nbar up to ~1e4). The truncation starts at ceil(nbar + 10 sqrt(nbar)) + 10
/// and is extended until the tail mass drops below tail_tol;
/// min_truncation forces a larger cutoff (used by convergence checks).
/// Throws std::invalid_argument for nbar < 0 or tail_tol outside (0, 1).
CoherentField poisson_weights(double nbar, double tail_tol = 1e-12,
                              int min_truncation = 0);

/// Coherently averaged populations at resonance:
/// <P_level(t)> = sum_n P_n |C^(n)_level(t)|^2, with P_n weighting the
/// manifold whose middle bare state holds n photons. For an upper-level
/// start the n = 0 weight has no manifold to evolve in; that weight stays
/// frozen in the upper level so total probability is conserved.
/// Summation runs in fixed ascending n with compensated accumulation, so
/// results are bit-reproducible.
PopulationSeries averaged_populations(const CoherentField& field, double g,
                                      jcm::JcmCase c, const TimeGrid& grid);

enum class RevivalOutcome {
  Found,
  NoOscillation,  // initial envelope amplitude is essentially zero
  NoCollapse,     // envelope never drops below 10% of its initial value
  NoRevival,      // collapsed but never re-grew inside the series window
};

/// Collapse/revival summary extracted from a population series.
/// The time fields are meaningful only when outcome == Found
/// (collapse_time_estimate is also set for NoRevival).
struct RevivalReport {
  RevivalOutcome outcome = RevivalOutcome::NoOscillation;
  double collapse_time_estimate = 0.0;
  double first_revival_time = 0.0;
  double revival_peak_height = 0.0;
};

/// Scans the series with a rolling max-min envelope of width rabi_period
/// (one nominal Rabi period, 2 pi / (g sqrt(2 nbar + 1)) for a coherent
/// run). Collapse is the first time the envelope falls below 10% of its
/// initial value; the first revival is the subsequent envelope maximum.
/// The column with the largest initial envelope is analyzed.
/// Requires a uniform series with at least three points.
RevivalReport revival_report(const PopulationSeries& series,
                             double rabi_period);

}  // namespace cascade::fieldstats
