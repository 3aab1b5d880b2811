#include <doctest.h>

#include "cascade/fieldstats.hpp"
#include "cascade/semiclassical.hpp"

#include <cmath>
#include <numbers>

using namespace cascade;
using namespace cascade::fieldstats;

namespace {
constexpr double kPi = std::numbers::pi;

double nominal_rabi_period(double g, double nbar) {
  return 2.0 * kPi / (g * std::sqrt(2.0 * nbar + 1.0));
}
}  // namespace

TEST_SUITE_BEGIN("fieldstats");

TEST_CASE("poisson weights: vacuum") {
  const CoherentField f = poisson_weights(0.0);
  REQUIRE(f.truncation == 0);
  CHECK(f.weights[0] == 1.0);
}

TEST_CASE("poisson weights: nbar = 1 has equal first two weights") {
  const CoherentField f = poisson_weights(1.0);
  CHECK(f.weights[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(f.weights[1] == f.weights[0]);
  CHECK(f.weights[2] == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("poisson weights: nbar = 50 sums to one with the mode at 49/50") {
  const CoherentField f = poisson_weights(50.0);
  CHECK(f.truncation >= 50 + static_cast<int>(10.0 * std::sqrt(50.0)));

  double sum = 0.0;
  int mode = 0;
  for (int n = 0; n <= f.truncation; ++n) {
    sum += f.weights[static_cast<std::size_t>(n)];
    if (f.weights[static_cast<std::size_t>(n)] >
        f.weights[static_cast<std::size_t>(mode)]) {
      mode = n;
    }
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((mode == 49 || mode == 50));
}

TEST_CASE("poisson weights: log-space evaluation matches the ratio recurrence") {
  // P_{n+1} = P_n * nbar / (n+1); independent of lgamma.
  const double nbar = 700.0;  // direct nbar^n / n! would overflow
  const CoherentField f = poisson_weights(nbar);
  for (int n : {600, 650, 699, 700, 701, 750, 800}) {
    const double ratio = f.weights[static_cast<std::size_t>(n + 1)] /
                         f.weights[static_cast<std::size_t>(n)];
    CHECK(ratio == doctest::Approx(nbar / (n + 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("poisson weights: validation") {
  CHECK_THROWS_AS(poisson_weights(-0.5), std::invalid_argument);
  CHECK_THROWS_AS(poisson_weights(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(poisson_weights(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("averaged populations: vacuum field reduces to the n = 0 manifold") {
  const CoherentField f = poisson_weights(0.0);
  const double g = 0.1;
  const TimeGrid grid(0.0, 60.0, 600);
  const PopulationSeries s =
      averaged_populations(f, g, jcm::JcmCase::StartMiddle, grid);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double c = std::cos(g * s.times[i]);
    const double sn = std::sin(g * s.times[i]);
    CHECK(s.p_upper[i] == 0.0);
    CHECK(s.p_middle[i] == doctest::Approx(c * c).epsilon(1e-14));
    CHECK(s.p_lower[i] == doctest::Approx(sn * sn).epsilon(1e-14));
  }
}

TEST_CASE("averaged populations: t = 0 recovers the initial condition") {
  const CoherentField f = poisson_weights(7.0);
  const TimeGrid grid(0.0, 1.0, 2);
  for (auto c : {jcm::JcmCase::StartLower, jcm::JcmCase::StartMiddle,
                 jcm::JcmCase::StartUpper}) {
    const PopulationSeries s = averaged_populations(f, 0.1, c, grid);
    const double expected_upper = (c == jcm::JcmCase::StartUpper) ? 1.0 : 0.0;
    const double expected_middle = (c == jcm::JcmCase::StartMiddle) ? 1.0 : 0.0;
    const double expected_lower = (c == jcm::JcmCase::StartLower) ? 1.0 : 0.0;
    CHECK(s.p_upper[0] == doctest::Approx(expected_upper).epsilon(1e-12));
    CHECK(s.p_middle[0] == doctest::Approx(expected_middle).epsilon(1e-12));
    CHECK(s.p_lower[0] == doctest::Approx(expected_lower).epsilon(1e-12));
  }
}

TEST_CASE("averaged populations: rows sum to the retained weight mass") {
  const CoherentField f = poisson_weights(12.0);
  const TimeGrid grid(0.0, 100.0, 300);
  const PopulationSeries s =
      averaged_populations(f, 0.1, jcm::JcmCase::StartUpper, grid);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double total = s.p_upper[i] + s.p_middle[i] + s.p_lower[i];
    CHECK(total <= 1.0 + 1e-14);
    CHECK(std::abs(total - 1.0) <= 1e-12);  // retained mass is 1 - tail
  }
}

TEST_CASE("averaged populations: doubling the truncation changes nothing") {
  const double nbar = 6.0;
  const CoherentField f = poisson_weights(nbar);
  const CoherentField wider = poisson_weights(nbar, 1e-12, 2 * f.truncation);
  const TimeGrid grid(0.0, 150.0, 400);
  const auto a = averaged_populations(f, 0.1, jcm::JcmCase::StartLower, grid);
  const auto b =
      averaged_populations(wider, 0.1, jcm::JcmCase::StartLower, grid);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a.p_upper[i] - b.p_upper[i]) < 1e-12);
    CHECK(std::abs(a.p_middle[i] - b.p_middle[i]) < 1e-12);
    CHECK(std::abs(a.p_lower[i] - b.p_lower[i]) < 1e-12);
  }
}

TEST_CASE("middle-start asymmetry is positive, bounded, and fades with nbar") {
  // <P_lower> - <P_upper> = sum_n P_n sin^2(Omega_n t) / (2n+1), so the gap
  // is bounded by sum_n P_n / (2n+1) and shrinks as the field grows more
  // classical.
  const double g = 0.1;
  double previous_gap = 1.0;
  for (double nbar : {1.0, 5.0, 10.0, 50.0}) {
    const CoherentField f = poisson_weights(nbar);
    double bound = 0.0;
    for (int n = 0; n <= f.truncation; ++n) {
      bound += f.weights[static_cast<std::size_t>(n)] / (2.0 * n + 1.0);
    }
    const TimeGrid grid(0.0, 120.0, 1200);
    const PopulationSeries s =
        averaged_populations(f, g, jcm::JcmCase::StartMiddle, grid);
    double max_gap = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s.p_lower[i] >= s.p_upper[i] - 1e-14);
      max_gap = std::max(max_gap, std::abs(s.p_lower[i] - s.p_upper[i]));
    }
    CHECK(max_gap > 0.0);
    CHECK(max_gap <= bound + 1e-12);
    CHECK(max_gap < previous_gap);
    previous_gap = max_gap;
  }
}

TEST_CASE("collapse and revival of a lower start at nbar = 50") {
  const double g = 0.1, nbar = 50.0;
  const CoherentField f = poisson_weights(nbar);
  const TimeGrid grid(0.0, 800.0, 8000);
  const PopulationSeries s =
      averaged_populations(f, g, jcm::JcmCase::StartLower, grid);
  const RevivalReport r = revival_report(s, nominal_rabi_period(g, nbar));

  REQUIRE(r.outcome == RevivalOutcome::Found);
  CHECK(r.collapse_time_estimate > 0.0);
  CHECK(r.collapse_time_estimate < 100.0);
  // Fundamental-component rephasing time 2 pi sqrt(2 nbar + 1) / g.
  const double expected = 2.0 * kPi * std::sqrt(2.0 * nbar + 1.0) / g;
  CHECK(r.first_revival_time > r.collapse_time_estimate);
  CHECK(r.first_revival_time == doctest::Approx(expected).epsilon(0.10));
}

TEST_CASE("middle start revives at half the edge-start revival time") {
  // Every middle-start population oscillates at 2 Omega_n, so neighboring
  // manifolds rephase at pi sqrt(2 nbar + 1) / g, half the edge-start time.
  const double g = 0.1, nbar = 50.0;
  const CoherentField f = poisson_weights(nbar);
  const TimeGrid grid(0.0, 500.0, 5000);
  const PopulationSeries s =
      averaged_populations(f, g, jcm::JcmCase::StartMiddle, grid);
  const RevivalReport r = revival_report(s, nominal_rabi_period(g, nbar));

  REQUIRE(r.outcome == RevivalOutcome::Found);
  const double expected = kPi * std::sqrt(2.0 * nbar + 1.0) / g;
  CHECK(r.first_revival_time == doctest::Approx(expected).epsilon(0.10));
}

TEST_CASE("revival report: constant series has no oscillation") {
  PopulationSeries s;
  const TimeGrid grid(0.0, 10.0, 101);
  s.times = grid.times();
  s.p_upper.assign(101, 0.2);
  s.p_middle.assign(101, 0.3);
  s.p_lower.assign(101, 0.5);
  const RevivalReport r = revival_report(s, 1.0);
  CHECK(r.outcome == RevivalOutcome::NoOscillation);
}

TEST_CASE("revival report: a single-frequency series never collapses") {
  const SemiclassicalParams p{1.0, 1.0, 0.5};
  const double period = 2.0 * kPi / 0.5;
  const TimeGrid grid(0.0, 40.0 * period, 8000);
  const PopulationSeries s = semiclassical::population_series(
      p, semiclassical::SemiclassicalCase::StartLower, grid);
  const RevivalReport r = revival_report(s, period);
  CHECK(r.outcome == RevivalOutcome::NoCollapse);
}

TEST_CASE("revival report: input validation") {
  PopulationSeries s;
  s.times = {0.0, 1.0};
  s.p_upper = {0.0, 0.0};
  s.p_middle = {0.0, 0.0};
  s.p_lower = {1.0, 1.0};
  CHECK_THROWS_AS(revival_report(s, 1.0), std::invalid_argument);
}

TEST_SUITE_END();
