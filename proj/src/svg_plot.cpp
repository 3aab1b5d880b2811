#include "cascade/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace cascade::io {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 930.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 490.0;

std::string fmt(const char* pattern, double a) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

std::string fmt2(const char* pattern, double a, double b) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

std::string polyline(const PopulationSeries& series,
                     const std::vector<double>& col, double t0, double t1,
                     const char* dash) {
  const double tspan = t1 - t0;
  std::string pts;
  pts.reserve(col.size() * 16);
  for (std::size_t i = 0; i < col.size(); ++i) {
    const double x =
        kLeft + (kRight - kLeft) * (tspan > 0.0 ? (series.times[i] - t0) / tspan : 0.5);
    const double p = std::clamp(col[i], 0.0, 1.0);
    const double y = kBottom - (kBottom - kTop) * p;
    pts += fmt2("%.2f,%.2f ", x, y);
  }
  std::string out = "  <polyline fill=\"none\" stroke=\"#000\" stroke-width=\"1.4\"";
  if (dash[0] != '\0') {
    out += " stroke-dasharray=\"";
    out += dash;
    out += "\"";
  }
  out += " points=\"" + pts + "\"/>\n";
  return out;
}

}  // namespace

std::string to_svg(const PopulationSeries& series, const std::string& title) {
  if (series.size() < 2) {
    throw std::invalid_argument("to_svg: need at least 2 points");
  }
  const double t0 = series.times.front();
  const double t1 = series.times.back();

  std::string s;
  s += fmt2(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
      "viewBox=\"0 0 960 540\">\n",
      kWidth, kHeight);
  s += "  <rect width=\"960\" height=\"540\" fill=\"#fff\"/>\n";
  s += "  <text x=\"480\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\" "
       "text-anchor=\"middle\">" + title + "</text>\n";

  // y grid and labels at 0, 0.25, ..., 1
  for (int k = 0; k <= 4; ++k) {
    const double p = 0.25 * k;
    const double y = kBottom - (kBottom - kTop) * p;
    s += fmt2("  <line x1=\"70\" y1=\"%.2f\" x2=\"930\" y2=\"%.2f\" "
              "stroke=\"#ddd\" stroke-width=\"1\"/>\n", y, y);
    s += fmt2("  <text x=\"62\" y=\"%.2f\" font-family=\"sans-serif\" "
              "font-size=\"12\" text-anchor=\"end\">%.2f</text>\n",
              y + 4.0, p);
  }
  // x ticks
  for (int k = 0; k <= 5; ++k) {
    const double frac = k / 5.0;
    const double x = kLeft + (kRight - kLeft) * frac;
    const double t = t0 + (t1 - t0) * frac;
    s += fmt2("  <line x1=\"%.2f\" y1=\"490\" x2=\"%.2f\" y2=\"496\" "
              "stroke=\"#000\" stroke-width=\"1\"/>\n", x, x);
    s += fmt2("  <text x=\"%.2f\" y=\"512\" font-family=\"sans-serif\" "
              "font-size=\"12\" text-anchor=\"middle\">%g</text>\n", x, t);
  }
  s += "  <line x1=\"70\" y1=\"490\" x2=\"930\" y2=\"490\" stroke=\"#000\" "
       "stroke-width=\"1.2\"/>\n";
  s += "  <line x1=\"70\" y1=\"50\" x2=\"70\" y2=\"490\" stroke=\"#000\" "
       "stroke-width=\"1.2\"/>\n";
  s += "  <text x=\"500\" y=\"532\" font-family=\"sans-serif\" font-size=\"13\" "
       "text-anchor=\"middle\">t</text>\n";
  s += "  <text x=\"22\" y=\"270\" font-family=\"sans-serif\" font-size=\"13\" "
       "text-anchor=\"middle\" transform=\"rotate(-90 22 270)\">population</text>\n";

  s += polyline(series, series.p_upper, t0, t1, "");
  s += polyline(series, series.p_middle, t0, t1, "8 4");
  s += polyline(series, series.p_lower, t0, t1, "2 4");

  // legend
  const char* labels[3] = {"p_upper", "p_middle", "p_lower"};
  const char* dashes[3] = {"", "8 4", "2 4"};
  for (int k = 0; k < 3; ++k) {
    const double y = 62.0 + 18.0 * k;
    s += fmt2("  <line x1=\"790\" y1=\"%.2f\" x2=\"830\" y2=\"%.2f\" "
              "stroke=\"#000\" stroke-width=\"1.4\"", y, y);
    if (dashes[k][0] != '\0') {
      s += " stroke-dasharray=\"";
      s += dashes[k];
      s += "\"";
    }
    s += "/>\n";
    s += fmt("  <text x=\"838\" y=\"%.2f\" font-family=\"sans-serif\" "
             "font-size=\"12\">", y + 4.0);
    s += labels[k];
    s += "</text>\n";
  }

  s += "</svg>\n";
  return s;
}

}  // namespace cascade::io
