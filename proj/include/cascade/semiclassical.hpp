// semiclassical.hpp - Closed-form level populations for the cascade atom
// driven by a single-mode classical field (RWA), for the three canonical
// initial conditions, plus the generalized Rabi frequency.

#pragma once

#include "cascade/core.hpp"

namespace cascade::semiclassical {

/// Canonical initial condition: which bare level holds the atom at t = 0.
enum class SemiclassicalCase { StartLower, StartMiddle, StartUpper };

SemiclassicalCase case_for_initial(AtomicLevel level);
AtomicLevel initial_level(SemiclassicalCase c);

/// Generalized Rabi frequency Omega = sqrt((omega - omega0)^2 + omega1^2).
/// Equals omega1 exactly at resonance.
double generalized_rabi(const SemiclassicalParams& params);

/// Closed-form probabilities (p_upper, p_middle, p_lower) at time t for the
/// given initial condition. Only squared moduli are exposed; the amplitude
/// phases are frame-dependent.
Populations populations(const SemiclassicalParams& params, SemiclassicalCase c,
                        double t);

/// Element-wise `populations` over a uniform grid.
PopulationSeries population_series(const SemiclassicalParams& params,
                                   SemiclassicalCase c, const TimeGrid& grid);

}  // namespace cascade::semiclassical
