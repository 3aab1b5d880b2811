#include "cascade/fieldstats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cascade::fieldstats {

namespace {

// Neumaier compensated accumulator; weights span many orders of magnitude.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

double log_poisson(double nbar, int n) {
  return -nbar + n * std::log(nbar) - std::lgamma(n + 1.0);
}

}  // namespace

CoherentField poisson_weights(double nbar, double tail_tol,
                              int min_truncation) {
  if (nbar < 0.0) {
    throw std::invalid_argument("poisson_weights: nbar must be >= 0");
  }
  if (!(tail_tol > 0.0) || !(tail_tol < 1.0)) {
    throw std::invalid_argument("poisson_weights: tail_tol must be in (0, 1)");
  }

  CoherentField field;
  field.nbar = nbar;

  if (nbar == 0.0) {
    // Vacuum: P_0 = 1, everything else exactly 0.
    field.truncation = std::max(0, min_truncation);
    field.weights.assign(static_cast<std::size_t>(field.truncation) + 1, 0.0);
    field.weights[0] = 1.0;
    return field;
  }

  int nmax = static_cast<int>(std::ceil(nbar + 10.0 * std::sqrt(nbar))) + 10;
  nmax = std::max(nmax, min_truncation);
  constexpr int kHardCap = 2'000'000;

  field.weights.clear();
  CompensatedSum total;
  int n = 0;
  while (true) {
    for (; n <= nmax; ++n) {
      const double w = std::exp(log_poisson(nbar, n));
      field.weights.push_back(w);
      total.add(w);
    }
    if (1.0 - total.value() < tail_tol) break;
    if (nmax >= kHardCap) {
      throw std::runtime_error(
          "poisson_weights: truncation failed to reach the tail tolerance");
    }
    nmax = std::min(kHardCap,
                    nmax + 10 + static_cast<int>(std::ceil(5.0 * std::sqrt(nbar))));
  }
  field.truncation = nmax;
  return field;
}

PopulationSeries averaged_populations(const CoherentField& field, double g,
                                      jcm::JcmCase c, const TimeGrid& grid) {
  const std::vector<double> times = grid.times();
  const std::size_t npts = times.size();
  std::vector<CompensatedSum> upper(npts), middle(npts), lower(npts);

  for (int n = 0; n <= field.truncation; ++n) {
    const double w = field.weights[static_cast<std::size_t>(n)];
    if (w == 0.0) continue;

    if (c == jcm::JcmCase::StartUpper && n == 0) {
      // No |n-1,+> manifold exists for n = 0; the vacuum weight stays
      // frozen in the upper level.
      for (std::size_t i = 0; i < npts; ++i) upper[i].add(w);
      continue;
    }

    const JcmParams params(g, 0.0, n);
    for (std::size_t i = 0; i < npts; ++i) {
      const Populations p = jcm::evolve_closed_form(params, c, times[i]);
      upper[i].add(w * p.upper);
      middle[i].add(w * p.middle);
      lower[i].add(w * p.lower);
    }
  }

  PopulationSeries series;
  series.times = times;
  series.p_upper.resize(npts);
  series.p_middle.resize(npts);
  series.p_lower.resize(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    series.p_upper[i] = upper[i].value();
    series.p_middle[i] = middle[i].value();
    series.p_lower[i] = lower[i].value();
  }
  return series;
}

RevivalReport revival_report(const PopulationSeries& series,
                             double rabi_period) {
  const std::size_t npts = series.size();
  if (npts < 3) {
    throw std::invalid_argument("revival_report: series needs >= 3 points");
  }
  if (!(rabi_period > 0.0)) {
    throw std::invalid_argument("revival_report: rabi_period must be > 0");
  }
  const double dt = series.times[1] - series.times[0];
  if (!(dt > 0.0)) {
    throw std::invalid_argument("revival_report: series times must increase");
  }

  const std::size_t half_window = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(0.5 * rabi_period / dt)));
  if (npts < 2 * half_window + 1) {
    throw std::invalid_argument(
        "revival_report: series shorter than one envelope window");
  }

  // Rolling max-min envelope centered on each interior sample.
  const std::size_t first = half_window;
  const std::size_t last = npts - 1 - half_window;
  auto envelope_of = [&](const std::vector<double>& col) {
    std::vector<double> env(npts, 0.0);
    for (std::size_t i = first; i <= last; ++i) {
      double lo = col[i - half_window];
      double hi = lo;
      for (std::size_t j = i - half_window + 1; j <= i + half_window; ++j) {
        lo = std::min(lo, col[j]);
        hi = std::max(hi, col[j]);
      }
      env[i] = hi - lo;
    }
    return env;
  };

  // Analyze the column that oscillates hardest at the start.
  const std::vector<double>* cols[3] = {&series.p_upper, &series.p_middle,
                                        &series.p_lower};
  std::vector<double> env;
  double initial_amp = -1.0;
  for (const auto* col : cols) {
    std::vector<double> e = envelope_of(*col);
    if (e[first] > initial_amp) {
      initial_amp = e[first];
      env = std::move(e);
    }
  }

  RevivalReport report;
  if (initial_amp < 1e-9) {
    report.outcome = RevivalOutcome::NoOscillation;
    return report;
  }

  const double collapse_level = 0.1 * initial_amp;
  std::size_t collapse_idx = 0;
  bool collapsed = false;
  for (std::size_t i = first; i <= last; ++i) {
    if (env[i] < collapse_level) {
      collapse_idx = i;
      collapsed = true;
      break;
    }
  }
  if (!collapsed) {
    report.outcome = RevivalOutcome::NoCollapse;
    return report;
  }
  report.collapse_time_estimate = series.times[collapse_idx];

  std::size_t peak_idx = collapse_idx;
  for (std::size_t i = collapse_idx + 1; i <= last; ++i) {
    if (env[i] > env[peak_idx]) peak_idx = i;
  }
  if (env[peak_idx] < 2.0 * collapse_level) {
    report.outcome = RevivalOutcome::NoRevival;
    return report;
  }

  report.outcome = RevivalOutcome::Found;
  report.first_revival_time = series.times[peak_idx];
  report.revival_peak_height = env[peak_idx];
  return report;
}

}  // namespace cascade::fieldstats
