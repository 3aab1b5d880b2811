// oracle.hpp - Independent brute-force propagators used to validate the
// closed forms: direct RK4 integration of the lab-frame semiclassical
// amplitude equations (explicit exp(+-i omega t) couplings, no ansatz) and
// a spectral matrix exponential for the quantized manifold.

#pragma once

#include "cascade/core.hpp"

namespace cascade::oracle {

enum class Method {
  Rk4,                  // lab-frame fixed-step RK4 with step-doubling control
  SpectralExponential,  // rotating-frame constant matrix, exact exponential
};

struct IntegratorConfig {
  /// Base step; 0 selects one automatically from the fastest timescale.
  double dt = 0.0;
  Method method = Method::Rk4;
  /// Step-doubling acceptance: halving dt must move the endpoint (all
  /// sampled amplitudes) by less than this.
  double endpoint_tol = 1e-10;
  int max_halvings = 14;
};

/// Integrates the driven-atom amplitude equations from t = 0 to t_end.
/// Both methods return lab-frame amplitudes. Throws std::runtime_error if
/// the step-doubling control cannot reach endpoint_tol within max_halvings.
ThreeLevelAmplitudes integrate_semiclassical(const SemiclassicalParams& params,
                                             const ThreeLevelAmplitudes& initial,
                                             double t_end,
                                             const IntegratorConfig& cfg = {});

/// Populations sampled on a grid along a single integration pass
/// (initial state given at t = 0).
PopulationSeries semiclassical_series(const SemiclassicalParams& params,
                                      const ThreeLevelAmplitudes& initial,
                                      const TimeGrid& grid,
                                      const IntegratorConfig& cfg = {});

/// Evolves a manifold state under the time-independent interaction
/// Hamiltonian by exact spectral exponential (iterative symmetric
/// eigensolver, independent of the closed-form rotation).
ThreeLevelAmplitudes integrate_jcm(const JcmParams& params,
                                   const ThreeLevelAmplitudes& initial,
                                   double t_end);

/// Populations of integrate_jcm sampled on a grid.
PopulationSeries jcm_series(const JcmParams& params,
                            const ThreeLevelAmplitudes& initial,
                            const TimeGrid& grid);

}  // namespace cascade::oracle
