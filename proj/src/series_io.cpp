#include "cascade/series_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cascade::io {

namespace {

constexpr const char* kCsvHeader = "t,p_upper,p_middle,p_lower";

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

void append_float(std::string& out, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

double parse_float(const std::string& field, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0') {
    throw std::runtime_error(std::string("from_csv: bad ") + what + " field '" +
                             field + "'");
  }
  return v;
}

}  // namespace

std::string to_csv(const PopulationSeries& series) {
  std::string out = kCsvHeader;
  out += '\n';
  for (std::size_t i = 0; i < series.size(); ++i) {
    append_float(out, series.times[i]);
    out += ',';
    append_float(out, clamp01(series.p_upper[i]));
    out += ',';
    append_float(out, clamp01(series.p_middle[i]));
    out += ',';
    append_float(out, clamp01(series.p_lower[i]));
    out += '\n';
  }
  return out;
}

PopulationSeries from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("from_csv: missing or unexpected header");
  }
  PopulationSeries series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 4) {
      throw std::runtime_error("from_csv: expected 4 fields per row");
    }
    series.times.push_back(parse_float(fields[0], "time"));
    series.p_upper.push_back(parse_float(fields[1], "p_upper"));
    series.p_middle.push_back(parse_float(fields[2], "p_middle"));
    series.p_lower.push_back(parse_float(fields[3], "p_lower"));
  }
  return series;
}

nlohmann::ordered_json to_json(const PopulationSeries& series,
                               const nlohmann::ordered_json& params_echo) {
  nlohmann::ordered_json j;
  j["params"] = params_echo;
  j["t"] = series.times;
  auto clamped = [](const std::vector<double>& v) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), clamp01);
    return out;
  };
  j["p_upper"] = clamped(series.p_upper);
  j["p_middle"] = clamped(series.p_middle);
  j["p_lower"] = clamped(series.p_lower);
  return j;
}

PopulationSeries from_json(const nlohmann::ordered_json& j) {
  PopulationSeries series;
  series.times = j.at("t").get<std::vector<double>>();
  series.p_upper = j.at("p_upper").get<std::vector<double>>();
  series.p_middle = j.at("p_middle").get<std::vector<double>>();
  series.p_lower = j.at("p_lower").get<std::vector<double>>();
  return series;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << contents;
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace cascade::io
