#include "cascade/core.hpp"

#include <cmath>
#include <stdexcept>

namespace cascade {

int iz_eigenvalue(AtomicLevel level) {
  switch (level) {
    case AtomicLevel::Upper:
      return 1;
    case AtomicLevel::Middle:
      return 0;
    case AtomicLevel::Lower:
      return -1;
  }
  return 0;  // unreachable
}

const SpinOneOps& spin_one_ops() {
  static const SpinOneOps ops = [] {
    SpinOneOps o;
    o.i_plus << 0, 1, 0,
                0, 0, 1,
                0, 0, 0;
    o.i_minus = o.i_plus.transpose();
    o.i_z << 1, 0, 0,
             0, 0, 0,
             0, 0, -1;
    return o;
  }();
  return ops;
}

double norm_squared(const ThreeLevelAmplitudes& state) {
  return std::norm(state.c_upper) + std::norm(state.c_middle) +
         std::norm(state.c_lower);
}

bool is_normalized(const ThreeLevelAmplitudes& state, double tol) {
  return std::abs(norm_squared(state) - 1.0) <= tol;
}

ThreeLevelAmplitudes bare_state(AtomicLevel level) {
  ThreeLevelAmplitudes s;
  switch (level) {
    case AtomicLevel::Upper:
      s.c_upper = 1.0;
      break;
    case AtomicLevel::Middle:
      s.c_middle = 1.0;
      break;
    case AtomicLevel::Lower:
      s.c_lower = 1.0;
      break;
  }
  return s;
}

SemiclassicalParams::SemiclassicalParams(double omega0_in, double omega_in,
                                         double omega1_in)
    : omega0(omega0_in), omega(omega_in), omega1(omega1_in) {
  if (!(omega0 > 0.0) || !(omega > 0.0) || !(omega1 > 0.0)) {
    throw std::invalid_argument(
        "SemiclassicalParams: omega0, omega and omega1 must be > 0");
  }
}

JcmParams::JcmParams(double g_in, double delta_in, int n_in)
    : g(g_in), delta(delta_in), n(n_in) {
  if (!(g > 0.0)) {
    throw std::invalid_argument("JcmParams: coupling g must be > 0");
  }
  if (n < 0) {
    throw std::invalid_argument("JcmParams: photon number n must be >= 0");
  }
}

TimeGrid::TimeGrid(double t_start_in, double t_end_in, int steps_in)
    : t_start(t_start_in), t_end(t_end_in), steps(steps_in) {
  if (!(t_end > t_start)) {
    throw std::invalid_argument("TimeGrid: t_end must be > t_start");
  }
  if (steps < 1) {
    throw std::invalid_argument("TimeGrid: steps must be >= 1");
  }
}

double TimeGrid::at(int i) const {
  if (steps == 1) return t_start;
  return t_start + (t_end - t_start) * static_cast<double>(i) /
                       static_cast<double>(steps - 1);
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) t[static_cast<std::size_t>(i)] = at(i);
  return t;
}

}  // namespace cascade
