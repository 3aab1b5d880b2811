#include "cascade/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cascade::oracle {

namespace {

using Eigen::Matrix3d;
using Eigen::Vector3cd;
using Eigen::Vector3d;

constexpr Complex kImag(0.0, 1.0);

Vector3cd to_vector(const ThreeLevelAmplitudes& s) {
  return {s.c_upper, s.c_middle, s.c_lower};
}

ThreeLevelAmplitudes from_vector(const Vector3cd& v) {
  return {v(0), v(1), v(2)};
}

// dC/dt = -i M(t) C with the explicitly time-dependent couplings of the
// lab frame; atomic order (upper, middle, lower).
Vector3cd lab_frame_rhs(const SemiclassicalParams& p, double t,
                        const Vector3cd& c) {
  const double coupling = p.omega1 / std::numbers::sqrt2;
  const Complex phase = std::exp(-kImag * p.omega * t);  // e^{-i omega t}
  const Complex phase_conj = std::conj(phase);
  Vector3cd rhs;
  rhs(0) = p.omega0 * c(0) + coupling * phase * c(1);
  rhs(1) = coupling * (phase_conj * c(0) + phase * c(2));
  rhs(2) = coupling * phase_conj * c(1) - p.omega0 * c(2);
  return -kImag * rhs;
}

void rk4_step(const SemiclassicalParams& p, double t, double h, Vector3cd& c) {
  const Vector3cd k1 = lab_frame_rhs(p, t, c);
  const Vector3cd k2 = lab_frame_rhs(p, t + 0.5 * h, c + (0.5 * h) * k1);
  const Vector3cd k3 = lab_frame_rhs(p, t + 0.5 * h, c + (0.5 * h) * k2);
  const Vector3cd k4 = lab_frame_rhs(p, t + h, c + h * k3);
  c += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double base_step(const SemiclassicalParams& p, double requested) {
  if (requested > 0.0) return requested;
  const double rabi = std::hypot(p.omega - p.omega0, p.omega1);
  const double fastest = std::max({p.omega0, p.omega, rabi});
  return (2.0 * std::numbers::pi / fastest) / 1000.0;
}

// One RK4 pass over [0, max(times)], recording the amplitudes at each
// requested time. Times must be nondecreasing; each inter-sample interval
// is subdivided so the integrator lands on samples exactly.
std::vector<Vector3cd> rk4_sampled(const SemiclassicalParams& p,
                                   const Vector3cd& initial,
                                   const std::vector<double>& times,
                                   double dt) {
  std::vector<Vector3cd> out;
  out.reserve(times.size());
  Vector3cd c = initial;
  double t = 0.0;
  for (double target : times) {
    const double span = target - t;
    if (span > 0.0) {
      const int n_steps = std::max(1, static_cast<int>(std::ceil(span / dt)));
      const double h = span / n_steps;
      for (int k = 0; k < n_steps; ++k) {
        rk4_step(p, t + k * h, h, c);
      }
      t = target;
    }
    out.push_back(c);
  }
  return out;
}

// Integrates twice (dt, dt/2) and halves until the sampled amplitudes agree
// within cfg.endpoint_tol; returns the finer pass.
std::vector<Vector3cd> rk4_controlled(const SemiclassicalParams& p,
                                      const Vector3cd& initial,
                                      const std::vector<double>& times,
                                      const IntegratorConfig& cfg) {
  double dt = base_step(p, cfg.dt);
  std::vector<Vector3cd> coarse = rk4_sampled(p, initial, times, dt);
  for (int halving = 0; halving < cfg.max_halvings; ++halving) {
    dt *= 0.5;
    std::vector<Vector3cd> fine = rk4_sampled(p, initial, times, dt);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      max_diff = std::max(max_diff, (fine[i] - coarse[i]).cwiseAbs().maxCoeff());
    }
    if (max_diff < cfg.endpoint_tol) return fine;
    coarse = std::move(fine);
  }
  throw std::runtime_error(
      "integrate_semiclassical: step control failed to reach the requested "
      "tolerance");
}

// Rotating-frame propagation: B = R(t) C with R = diag(e^{i w t}, 1,
// e^{-i w t}) obeys a constant symmetric Hamiltonian, solved exactly by
// spectral decomposition; the frame phases are undone on return.
Vector3cd rotating_frame_exact(const SemiclassicalParams& p,
                               const Vector3cd& initial, double t) {
  const double coupling = p.omega1 / std::numbers::sqrt2;
  const double detune = p.omega - p.omega0;
  Matrix3d h_rot;
  h_rot << -detune, coupling, 0.0,
           coupling, 0.0, coupling,
           0.0, coupling, detune;
  Eigen::SelfAdjointEigenSolver<Matrix3d> solver(h_rot);
  const Vector3d evals = solver.eigenvalues();
  const Matrix3d evecs = solver.eigenvectors();

  Vector3cd b = evecs.transpose().cast<Complex>() * initial;
  for (int k = 0; k < 3; ++k) b(k) *= std::exp(-kImag * evals(k) * t);
  b = evecs.cast<Complex>() * b;

  b(0) *= std::exp(-kImag * p.omega * t);
  b(2) *= std::exp(kImag * p.omega * t);
  return b;
}

Matrix3d jcm_matrix(const JcmParams& p) {
  const double up = p.g * std::sqrt(p.n + 1.0);
  const double low = p.g * std::sqrt(static_cast<double>(p.n));
  Matrix3d h;
  h << -p.delta, up, 0.0,
       up, 0.0, low,
       0.0, low, p.delta;
  return h;
}

void require_normalized(const ThreeLevelAmplitudes& s, const char* who) {
  if (!is_normalized(s)) {
    throw std::invalid_argument(std::string(who) +
                                ": initial state not normalized");
  }
}

PopulationSeries series_from(const std::vector<double>& times,
                             const std::vector<Vector3cd>& states) {
  PopulationSeries series;
  series.times = times;
  series.p_upper.reserve(states.size());
  series.p_middle.reserve(states.size());
  series.p_lower.reserve(states.size());
  for (const Vector3cd& v : states) {
    series.p_upper.push_back(std::norm(v(0)));
    series.p_middle.push_back(std::norm(v(1)));
    series.p_lower.push_back(std::norm(v(2)));
  }
  return series;
}

}  // namespace

ThreeLevelAmplitudes integrate_semiclassical(const SemiclassicalParams& params,
                                             const ThreeLevelAmplitudes& initial,
                                             double t_end,
                                             const IntegratorConfig& cfg) {
  require_normalized(initial, "integrate_semiclassical");
  if (t_end < 0.0) {
    throw std::invalid_argument("integrate_semiclassical: t_end must be >= 0");
  }
  const Vector3cd c0 = to_vector(initial);
  if (cfg.method == Method::SpectralExponential) {
    return from_vector(rotating_frame_exact(params, c0, t_end));
  }
  if (t_end == 0.0) return initial;
  const std::vector<double> times{t_end};
  return from_vector(rk4_controlled(params, c0, times, cfg).front());
}

PopulationSeries semiclassical_series(const SemiclassicalParams& params,
                                      const ThreeLevelAmplitudes& initial,
                                      const TimeGrid& grid,
                                      const IntegratorConfig& cfg) {
  require_normalized(initial, "semiclassical_series");
  if (grid.t_start < 0.0) {
    throw std::invalid_argument("semiclassical_series: grid must start at t >= 0");
  }
  const std::vector<double> times = grid.times();
  const Vector3cd c0 = to_vector(initial);

  std::vector<Vector3cd> states;
  if (cfg.method == Method::SpectralExponential) {
    states.reserve(times.size());
    for (double t : times) states.push_back(rotating_frame_exact(params, c0, t));
  } else {
    states = rk4_controlled(params, c0, times, cfg);
  }
  return series_from(times, states);
}

ThreeLevelAmplitudes integrate_jcm(const JcmParams& params,
                                   const ThreeLevelAmplitudes& initial,
                                   double t_end) {
  require_normalized(initial, "integrate_jcm");

  Eigen::SelfAdjointEigenSolver<Matrix3d> solver(jcm_matrix(params));
  const Vector3d evals = solver.eigenvalues();
  const Matrix3d evecs = solver.eigenvectors();

  // Manifold basis order (lower, middle, upper).
  Vector3cd v(initial.c_lower, initial.c_middle, initial.c_upper);
  Vector3cd dressed = evecs.transpose().cast<Complex>() * v;
  for (int k = 0; k < 3; ++k) dressed(k) *= std::exp(-kImag * evals(k) * t_end);
  v = evecs.cast<Complex>() * dressed;
  return {v(2), v(1), v(0)};
}

PopulationSeries jcm_series(const JcmParams& params,
                            const ThreeLevelAmplitudes& initial,
                            const TimeGrid& grid) {
  require_normalized(initial, "jcm_series");
  const std::vector<double> times = grid.times();

  Eigen::SelfAdjointEigenSolver<Matrix3d> solver(jcm_matrix(params));
  const Vector3d evals = solver.eigenvalues();
  const Matrix3d evecs = solver.eigenvectors();
  const Vector3cd v0(initial.c_lower, initial.c_middle, initial.c_upper);
  const Vector3cd dressed0 = evecs.transpose().cast<Complex>() * v0;

  PopulationSeries series;
  series.times = times;
  series.p_upper.reserve(times.size());
  series.p_middle.reserve(times.size());
  series.p_lower.reserve(times.size());
  for (double t : times) {
    Vector3cd dressed = dressed0;
    for (int k = 0; k < 3; ++k) dressed(k) *= std::exp(-kImag * evals(k) * t);
    const Vector3cd v = evecs.cast<Complex>() * dressed;
    series.p_upper.push_back(std::norm(v(2)));
    series.p_middle.push_back(std::norm(v(1)));
    series.p_lower.push_back(std::norm(v(0)));
  }
  return series;
}

}  // namespace cascade::oracle
