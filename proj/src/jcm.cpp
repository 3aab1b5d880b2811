#include "cascade/jcm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cascade::jcm {

namespace {

constexpr double kPi = std::numbers::pi;

// Flip a row so its first entry of significant magnitude is positive.
void fix_row_sign(Eigen::Vector3d& row) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(row(i)) > 1e-8) {
      if (row(i) < 0.0) row = -row;
      return;
    }
  }
}

// Eigenvalues of a real symmetric 3x3 matrix, descending, via the
// trigonometric solution of the characteristic cubic.
Eigen::Vector3d symmetric_eigenvalues(const Eigen::Matrix3d& a) {
  const double q = a.trace() / 3.0;
  const Eigen::Matrix3d b = a - q * Eigen::Matrix3d::Identity();
  const double p2 = (b * b).trace() / 6.0;
  const double p = std::sqrt(std::max(p2, 0.0));
  if (p < 1e-300) {
    return Eigen::Vector3d::Constant(q);
  }
  double r = b.determinant() / (2.0 * p * p * p);
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double hi = q + 2.0 * p * std::cos(phi);
  const double lo = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
  return {hi, 3.0 * q - hi - lo, lo};
}

// Unit eigenvector of `a` for the eigenvalue lambda, from the cross
// product of the two best-conditioned rows of (a - lambda I). Falls back
// to the orthogonal complement of the largest row when lambda is
// (near-)degenerate and every cross product collapses.
Eigen::Vector3d eigenvector_for(const Eigen::Matrix3d& a, double lambda) {
  const Eigen::Matrix3d m = a - lambda * Eigen::Matrix3d::Identity();
  const Eigen::Vector3d r0 = m.row(0);
  const Eigen::Vector3d r1 = m.row(1);
  const Eigen::Vector3d r2 = m.row(2);
  const Eigen::Vector3d c01 = r0.cross(r1);
  const Eigen::Vector3d c02 = r0.cross(r2);
  const Eigen::Vector3d c12 = r1.cross(r2);
  const Eigen::Vector3d* best = &c01;
  if (c02.squaredNorm() > best->squaredNorm()) best = &c02;
  if (c12.squaredNorm() > best->squaredNorm()) best = &c12;

  const double scale = m.cwiseAbs().maxCoeff();
  if (best->norm() > 1e-12 * scale * scale) return best->normalized();

  // Rank <= 1: the eigenspace is the plane orthogonal to the largest row.
  Eigen::Vector3d r = r0;
  if (r1.squaredNorm() > r.squaredNorm()) r = r1;
  if (r2.squaredNorm() > r.squaredNorm()) r = r2;
  if (r.norm() <= 1e-300) return Eigen::Vector3d::UnitX();
  r.normalize();
  const Eigen::Vector3d u = std::abs(r(0)) < 0.9 ? Eigen::Vector3d::UnitX()
                                                 : Eigen::Vector3d::UnitY();
  return (u - u.dot(r) * r).normalized();
}

// Euler angles reproducing an SO(3) matrix in the z-x-z parameterization;
// theta in [0, pi].
void read_euler_angles(const Eigen::Matrix3d& m, double& psi, double& theta,
                       double& phi) {
  const double cos_theta = std::clamp(m(2, 2), -1.0, 1.0);
  const double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);
  if (sin_theta > 1e-12) {
    theta = std::atan2(sin_theta, cos_theta);
    psi = std::atan2(m(0, 2), m(1, 2));
    phi = std::atan2(m(2, 0), -m(2, 1));
  } else if (cos_theta > 0.0) {
    theta = 0.0;
    psi = std::atan2(m(0, 1), m(0, 0));
    phi = 0.0;
  } else {
    theta = kPi;
    psi = std::atan2(-m(0, 1), m(0, 0));
    phi = 0.0;
  }
}

// Propagator applied to a manifold-ordered vector (lower, middle, upper).
Eigen::Vector3cd propagate(const Eigen::Matrix3d& t_matrix,
                           const Eigen::Vector3d& lambdas, double t,
                           const Eigen::Vector3cd& v) {
  const Complex i_unit(0.0, 1.0);
  Eigen::Vector3cd dressed = t_matrix.cast<Complex>() * v;
  for (int k = 0; k < 3; ++k) {
    dressed(k) *= std::exp(-i_unit * lambdas(k) * t);
  }
  return t_matrix.transpose().cast<Complex>() * dressed;
}

}  // namespace

JcmCase case_for_initial(AtomicLevel level) {
  switch (level) {
    case AtomicLevel::Lower:
      return JcmCase::StartLower;
    case AtomicLevel::Middle:
      return JcmCase::StartMiddle;
    case AtomicLevel::Upper:
      return JcmCase::StartUpper;
  }
  return JcmCase::StartLower;  // unreachable
}

AtomicLevel initial_level(JcmCase c) {
  switch (c) {
    case JcmCase::StartLower:
      return AtomicLevel::Lower;
    case JcmCase::StartMiddle:
      return AtomicLevel::Middle;
    case JcmCase::StartUpper:
      return AtomicLevel::Upper;
  }
  return AtomicLevel::Lower;  // unreachable
}

ManifoldHamiltonian manifold_hamiltonian(const JcmParams& params) {
  const double up = params.g * std::sqrt(params.n + 1.0);
  const double low = params.g * std::sqrt(static_cast<double>(params.n));
  ManifoldHamiltonian h;
  h.n = params.n;
  h.matrix << -params.delta, up, 0.0,
              up, 0.0, low,
              0.0, low, params.delta;
  return h;
}

double rabi_frequency(const JcmParams& params) {
  return params.g * std::sqrt(2.0 * params.n + 1.0);
}

Eigen::Matrix3d euler_matrix_from_angles(double psi, double theta,
                                         double phi) {
  const double cps = std::cos(psi), sps = std::sin(psi);
  const double cth = std::cos(theta), sth = std::sin(theta);
  const double cph = std::cos(phi), sph = std::sin(phi);
  Eigen::Matrix3d m;
  m << cps * cph - cth * sph * sps, cps * sph + cth * cph * sps, sps * sth,
      -sps * cph - cth * sph * cps, -sps * sph + cth * cph * cps, cps * sth,
      sth * sph, -sth * cph, cth;
  return m;
}

EulerMatrix euler_matrix(int n) {
  if (n < 0) throw std::invalid_argument("euler_matrix: n must be >= 0");
  const double dn = static_cast<double>(n);
  const double a11 = std::sqrt((dn + 1.0) / (4.0 * dn + 2.0));
  const double a13 = std::sqrt(dn / (4.0 * dn + 2.0));
  const double a21 = -std::sqrt(dn / (2.0 * dn + 1.0));
  const double a23 = std::sqrt((dn + 1.0) / (2.0 * dn + 1.0));
  const double inv_sqrt2 = std::sqrt(0.5);

  EulerMatrix em;
  em.entries << a11, inv_sqrt2, a13,
                a21, 0.0, a23,
                a11, -inv_sqrt2, a13;
  em.theta = std::asin(std::sqrt((3.0 * dn + 2.0) / (4.0 * dn + 2.0)));
  em.phi = std::asin(std::sqrt((dn + 1.0) / (3.0 * dn + 2.0)));
  em.psi = std::asin(std::sqrt(dn / (3.0 * dn + 2.0)));
  return em;
}

DressedSpectrum solve_manifold_spectrum(const ManifoldHamiltonian& h) {
  const Eigen::Vector3d lambdas = symmetric_eigenvalues(h.matrix);

  Eigen::Vector3d row_plus = eigenvector_for(h.matrix, lambdas(0));
  Eigen::Vector3d row_minus = eigenvector_for(h.matrix, lambdas(2));
  fix_row_sign(row_plus);
  fix_row_sign(row_minus);
  // Right-handed completion keeps det T = +1, so Euler angles always exist;
  // at resonance this reproduces the closed-form middle row.
  const Eigen::Vector3d row_zero = row_minus.cross(row_plus);

  DressedSpectrum sp;
  sp.lambda_plus = lambdas(0);
  sp.lambda_zero = lambdas(1);
  sp.lambda_minus = lambdas(2);
  sp.t_matrix.entries.row(0) = row_plus;
  sp.t_matrix.entries.row(1) = row_zero;
  sp.t_matrix.entries.row(2) = row_minus;
  read_euler_angles(sp.t_matrix.entries, sp.t_matrix.psi, sp.t_matrix.theta,
                    sp.t_matrix.phi);
  return sp;
}

DressedSpectrum dressed_spectrum(const JcmParams& params) {
  if (params.delta == 0.0) {
    const double omega_n = rabi_frequency(params);
    return {omega_n, 0.0, -omega_n, euler_matrix(params.n)};
  }
  return solve_manifold_spectrum(manifold_hamiltonian(params));
}

Populations evolve_closed_form(const JcmParams& params, JcmCase c, double t) {
  if (params.delta != 0.0) {
    throw std::domain_error(
        "evolve_closed_form: closed forms hold at resonance only; "
        "use evolve_general for nonzero detuning");
  }
  if (c == JcmCase::StartUpper && params.n == 0) {
    throw std::domain_error(
        "evolve_closed_form: upper-level start needs n >= 1 "
        "(the bare state |n-1,+> does not exist for n = 0)");
  }

  const double dn = static_cast<double>(params.n);
  const double omega_n = rabi_frequency(params);
  const double sin_half = std::sin(0.5 * omega_n * t);
  const double cos_half = std::cos(0.5 * omega_n * t);
  const double s2 = sin_half * sin_half;
  const double c2 = cos_half * cos_half;
  const double sin_full = std::sin(omega_n * t);
  const double cos_full = std::cos(omega_n * t);
  const double sf2 = sin_full * sin_full;
  const double denom = 2.0 * dn + 1.0;
  const double denom_sq = denom * denom;

  // Edge-to-edge transfer, shared by the lower and upper starts.
  const double two_step = (4.0 * dn * (dn + 1.0) / denom_sq) * s2 * s2;

  switch (c) {
    case JcmCase::StartLower: {
      const double middle = ((dn + 1.0) / denom) * sf2;
      const double remain =
          1.0 - 4.0 *
                    (dn * (dn + 1.0) / denom_sq +
                     (dn + 1.0) * (dn + 1.0) / denom_sq * c2) *
                    s2;
      return {two_step, middle, remain};
    }
    case JcmCase::StartMiddle:
      return {(dn / denom) * sf2, cos_full * cos_full,
              ((dn + 1.0) / denom) * sf2};
    case JcmCase::StartUpper: {
      const double remain =
          1.0 -
          4.0 * (dn * (dn + 1.0) / denom_sq + dn * dn / denom_sq * c2) * s2;
      const double middle = (dn / denom) * sf2;
      return {remain, middle, two_step};
    }
  }
  throw std::logic_error("evolve_closed_form: unknown case");
}

ThreeLevelAmplitudes evolve_general(const JcmParams& params,
                                    const ThreeLevelAmplitudes& initial,
                                    double t, double norm_tol) {
  if (!is_normalized(initial, norm_tol)) {
    throw std::invalid_argument("evolve_general: initial state not normalized");
  }

  // Manifold basis order is (lower, middle, upper).
  const Eigen::Vector3cd v(initial.c_lower, initial.c_middle, initial.c_upper);

  Eigen::Vector3cd out;
  if (params.delta == 0.0) {
    const double omega_n = rabi_frequency(params);
    const Eigen::Vector3d lambdas(omega_n, 0.0, -omega_n);
    out = propagate(euler_matrix(params.n).entries, lambdas, t, v);
  } else {
    const DressedSpectrum sp = dressed_spectrum(params);
    const Eigen::Vector3d lambdas(sp.lambda_plus, sp.lambda_zero,
                                  sp.lambda_minus);
    out = propagate(sp.t_matrix.entries, lambdas, t, v);
  }
  return {out(2), out(1), out(0)};
}

}  // namespace cascade::jcm
