// jcm.hpp - One excitation manifold of the cascade Jaynes-Cummings model:
// interaction Hamiltonian, dressed spectrum via an Euler rotation of the
// bare states, the unitary propagator, and the resonant closed-form
// number-state populations.

#pragma once

#include "cascade/core.hpp"

namespace cascade::jcm {

/// Initial condition of the atom inside one manifold. The combined
/// atom-field bare states are |n+1,->, |n,0> and |n-1,+>; an upper-level
/// start therefore requires n >= 1.
enum class JcmCase { StartLower, StartMiddle, StartUpper };

JcmCase case_for_initial(AtomicLevel level);
AtomicLevel initial_level(JcmCase c);

/// Interaction Hamiltonian of the manifold with middle-state photon
/// number n, in the bare basis (|n+1,->, |n,0>, |n-1,+>):
///
///     [ -delta      g sqrt(n+1)  0          ]
///     [ g sqrt(n+1) 0            g sqrt(n)  ]
///     [ 0           g sqrt(n)    +delta     ]
struct ManifoldHamiltonian {
  Eigen::Matrix3d matrix;
  int n;
};

ManifoldHamiltonian manifold_hamiltonian(const JcmParams& params);

/// Quantized Rabi frequency Omega_n = g sqrt(2n + 1).
double rabi_frequency(const JcmParams& params);

/// Real orthogonal rotation taking bare states to dressed states, together
/// with its Euler angles (psi, theta, phi).
struct EulerMatrix {
  Eigen::Matrix3d entries;
  double psi;
  double theta;
  double phi;
};

/// Rebuilds the 3x3 rotation from Euler angles (z-x-z convention used by
/// the dressed-state construction). Inverse of the angle readout stored in
/// EulerMatrix.
Eigen::Matrix3d euler_matrix_from_angles(double psi, double theta, double phi);

/// Resonant dressing rotation in closed form. Rows pair with the
/// eigenvalues (+Omega_n, 0, -Omega_n); the middle column is
/// (1/sqrt2, 0, -1/sqrt2) for every n.
EulerMatrix euler_matrix(int n);

/// Eigenvalues (sorted descending) and dressing rotation of a manifold.
struct DressedSpectrum {
  double lambda_plus;
  double lambda_zero;
  double lambda_minus;
  EulerMatrix t_matrix;
};

/// Dressed spectrum of the manifold. At resonance the exact closed forms
/// are used (eigenvalues +-g sqrt(2n+1), 0 and the closed-form rotation);
/// off resonance the symmetric eigenproblem is solved analytically via the
/// characteristic cubic.
DressedSpectrum dressed_spectrum(const JcmParams& params);

/// Numeric route for any detuning: trigonometric solution of the
/// characteristic cubic plus cross-product eigenvectors. Row signs follow
/// the resonant convention (rows 1 and 3 lead with a positive entry, row 2
/// completes a right-handed triad).
DressedSpectrum solve_manifold_spectrum(const ManifoldHamiltonian& h);

/// Resonant closed-form populations (p_upper, p_middle, p_lower) at time t.
/// Throws std::domain_error for nonzero detuning (use evolve_general) and
/// for an upper-level start with n = 0.
Populations evolve_closed_form(const JcmParams& params, JcmCase c, double t);

/// Propagates an arbitrary normalized amplitude triple within the manifold:
/// C(t) = T^T diag(exp(-i lambda_k t)) T C(0). Amplitudes are in the
/// interaction picture (the manifold-global phase from the free Hamiltonian
/// is dropped). Throws std::invalid_argument when `initial` is not
/// normalized within norm_tol.
ThreeLevelAmplitudes evolve_general(const JcmParams& params,
                                    const ThreeLevelAmplitudes& initial,
                                    double t, double norm_tol = kNormTolerance);

}  // namespace cascade::jcm
