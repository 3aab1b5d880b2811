// series_io.hpp - CSV and JSON emission/parsing for population series.
// Floats are written with 17 significant digits so a parse of the emitted
// text reproduces every double bit-exactly; probabilities are clamped to
// [0, 1] at this formatting boundary only.

#pragma once

#include "cascade/core.hpp"

#include <json.hpp>

#include <string>

namespace cascade::io {

/// CSV with header `t,p_upper,p_middle,p_lower`, one row per grid point,
/// LF line endings.
std::string to_csv(const PopulationSeries& series);

/// Parses the CSV schema above. Throws std::runtime_error on a malformed
/// header or row.
PopulationSeries from_csv(const std::string& text);

/// JSON object with a `params` echo block plus parallel arrays
/// `t`, `p_upper`, `p_middle`, `p_lower`.
nlohmann::ordered_json to_json(const PopulationSeries& series,
                               const nlohmann::ordered_json& params_echo);

PopulationSeries from_json(const nlohmann::ordered_json& j);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace cascade::io
