#include <doctest.h>

#include "cascade/series_io.hpp"
#include "cascade/svg_plot.hpp"

#include <random>

using namespace cascade;

namespace {

PopulationSeries random_series(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  PopulationSeries s;
  for (std::size_t i = 0; i < n; ++i) {
    s.times.push_back(0.37 * static_cast<double>(i));
    const double a = prob(rng), b = prob(rng);
    const double lo = std::min(a, b), hi = std::max(a, b);
    s.p_upper.push_back(lo);
    s.p_middle.push_back(hi - lo);
    s.p_lower.push_back(1.0 - hi);
  }
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("series_io");

TEST_CASE("csv schema") {
  PopulationSeries s;
  s.times = {0.0, 0.5};
  s.p_upper = {0.0, 0.25};
  s.p_middle = {1.0, 0.5};
  s.p_lower = {0.0, 0.25};
  const std::string text = io::to_csv(s);
  CHECK(text.substr(0, 26) == "t,p_upper,p_middle,p_lower");
  CHECK(text.find("\r") == std::string::npos);  // LF endings only
  CHECK(text.back() == '\n');
}

TEST_CASE("csv round-trip reproduces every float exactly") {
  std::mt19937_64 rng(2024);
  const PopulationSeries s = random_series(rng, 200);
  const PopulationSeries back = io::from_csv(io::to_csv(s));
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back.times[i] == s.times[i]);
    CHECK(back.p_upper[i] == s.p_upper[i]);
    CHECK(back.p_middle[i] == s.p_middle[i]);
    CHECK(back.p_lower[i] == s.p_lower[i]);
  }
}

TEST_CASE("csv parser rejects malformed input") {
  CHECK_THROWS_AS(io::from_csv("nonsense\n1,2,3,4\n"), std::runtime_error);
  CHECK_THROWS_AS(io::from_csv("t,p_upper,p_middle,p_lower\n1,2,3\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(io::from_csv("t,p_upper,p_middle,p_lower\n1,2,3,x\n"),
                  std::runtime_error);
}

TEST_CASE("emission clamps probabilities at the formatting boundary") {
  PopulationSeries s;
  s.times = {0.0};
  s.p_upper = {1.0 + 2e-16};
  s.p_middle = {-3e-17};
  s.p_lower = {0.5};
  const PopulationSeries back = io::from_csv(io::to_csv(s));
  CHECK(back.p_upper[0] == 1.0);
  CHECK(back.p_middle[0] == 0.0);
  CHECK(back.p_lower[0] == 0.5);
}

TEST_CASE("json round-trip with params echo") {
  std::mt19937_64 rng(7);
  const PopulationSeries s = random_series(rng, 64);
  nlohmann::ordered_json echo;
  echo["mode"] = "jcm-number";
  echo["n"] = 3;
  const auto j = io::to_json(s, echo);
  CHECK(j["params"]["mode"] == "jcm-number");

  // Serialize and reparse: doubles survive bit-exactly.
  const auto reparsed = nlohmann::ordered_json::parse(j.dump());
  const PopulationSeries back = io::from_json(reparsed);
  REQUIRE(back.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(back.times[i] == s.times[i]);
    CHECK(back.p_upper[i] == s.p_upper[i]);
    CHECK(back.p_middle[i] == s.p_middle[i]);
    CHECK(back.p_lower[i] == s.p_lower[i]);
  }
}

TEST_CASE("identical series emit byte-identical artifacts") {
  std::mt19937_64 rng_a(99), rng_b(99);
  const PopulationSeries a = random_series(rng_a, 128);
  const PopulationSeries b = random_series(rng_b, 128);
  CHECK(io::to_csv(a) == io::to_csv(b));
  CHECK(io::to_svg(a, "title") == io::to_svg(b, "title"));
  nlohmann::ordered_json echo;
  echo["mode"] = "semiclassical";
  CHECK(io::to_json(a, echo).dump(2) == io::to_json(b, echo).dump(2));
}

TEST_CASE("svg contains the three styled curves and axes") {
  std::mt19937_64 rng(3);
  const PopulationSeries s = random_series(rng, 32);
  const std::string svg = io::to_svg(s, "demo");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("stroke-dasharray=\"8 4\"") != std::string::npos);   // middle
  CHECK(svg.find("stroke-dasharray=\"2 4\"") != std::string::npos);   // lower
  CHECK(svg.find("p_upper") != std::string::npos);
  CHECK(svg.find("p_middle") != std::string::npos);
  CHECK(svg.find("p_lower") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_SUITE_END();
