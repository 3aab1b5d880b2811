// core.hpp - Shared domain types for the cascade three-level system:
// bare atomic basis, spin-one operator matrices, parameter sets, and the
// population-series container exchanged with the output emitters.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace cascade {

using Complex = std::complex<double>;

/// Absolute tolerance on |norm^2 - 1| below which an amplitude triple is
/// accepted as a physical state.
inline constexpr double kNormTolerance = 1e-9;

/// The three bare levels of the ladder, equally spaced by omega0.
/// Ordering matches the I_z eigenvalues +1, 0, -1.
enum class AtomicLevel { Upper, Middle, Lower };

/// I_z eigenvalue of a bare level (+1, 0, -1).
int iz_eigenvalue(AtomicLevel level);

/// Spin-one representation matrices of the ladder operators and I_z.
/// i_plus raises lower->middle->upper with unit matrix elements; the
/// sqrt(2) of the conventional spin-1 ladder operators is absorbed into
/// the coupling constant of the Hamiltonian.
struct SpinOneOps {
  Eigen::Matrix3d i_plus;
  Eigen::Matrix3d i_minus;  // transpose of i_plus
  Eigen::Matrix3d i_z;      // diag(1, 0, -1)
};

/// The (constant) spin-one operator set.
const SpinOneOps& spin_one_ops();

/// Complex amplitude triple (upper, middle, lower) at one instant.
struct ThreeLevelAmplitudes {
  Complex c_upper{0.0, 0.0};
  Complex c_middle{0.0, 0.0};
  Complex c_lower{0.0, 0.0};
};

/// Sum of squared moduli of the three amplitudes.
double norm_squared(const ThreeLevelAmplitudes& state);

/// True when |norm_squared - 1| <= tol.
bool is_normalized(const ThreeLevelAmplitudes& state,
                   double tol = kNormTolerance);

/// Unit basis vector for a bare level: Upper -> (1,0,0), Middle -> (0,1,0),
/// Lower -> (0,0,1).
ThreeLevelAmplitudes bare_state(AtomicLevel level);

/// Probability triple returned by the closed-form evolutions.
struct Populations {
  double upper;
  double middle;
  double lower;
};

/// Parameters of the classically driven atom: atomic gap omega0, drive
/// frequency omega, coupling omega1 (all rad/time, hbar = 1).
struct SemiclassicalParams {
  double omega0;
  double omega;
  double omega1;

  /// Throws std::invalid_argument unless all three frequencies are > 0.
  SemiclassicalParams(double omega0_in, double omega_in, double omega1_in);
};

/// Parameters of one quantized-field manifold: coupling g, detuning
/// delta = omega0 - omega (hbar = 1), and the photon number n of the
/// middle bare state |n,0>.
struct JcmParams {
  double g;
  double delta;
  int n;

  /// Throws std::invalid_argument unless g > 0 and n >= 0.
  JcmParams(double g_in, double delta_in, int n_in);
};

/// Uniform sampling grid; `steps` counts sample points, so steps == 1
/// degenerates to the single point t_start.
struct TimeGrid {
  double t_start;
  double t_end;
  int steps;

  /// Throws std::invalid_argument unless t_end > t_start and steps >= 1.
  TimeGrid(double t_start_in, double t_end_in, int steps_in);

  double at(int i) const;
  std::vector<double> times() const;
};

/// Time grid plus the three probability columns; the unit exchanged with
/// the CSV/JSON/SVG emitters.
struct PopulationSeries {
  std::vector<double> times;
  std::vector<double> p_upper;
  std::vector<double> p_middle;
  std::vector<double> p_lower;

  std::size_t size() const { return times.size(); }
};

}  // namespace cascade
