#ifndef CSGEMOS_IO_HPP
#define CSGEMOS_IO_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csgemos/ensemble.hpp"

namespace csgemos {

// Shortest round-trip decimal representation (std::to_chars).
std::string fmt_double(double v);

// Fixed-precision representation for report tables ("%.10g").
std::string fmt_double_fixed(double v);

std::vector<std::string> split_csv_line(const std::string& line);
double parse_double(const std::string& field, const std::string& context);

// Long-format ensemble forecast table, one row per member:
//   location_id,valid_time,lead_time_h,obs_mm,group,member_idx,value_mm
// Dates are ISO-8601. The obs_mm column may be empty/NA when observations
// come from a companion file.
void write_forecast_csv(std::span<const ForecastCase> cases,
                        const std::string& path);

// Companion observation table: location_id,valid_time,obs_mm
void write_observations_csv(std::span<const ForecastCase> cases,
                            const std::string& path);

// Reads forecasts and joins observations. When observations_path is
// non-empty it takes precedence over the embedded obs_mm column. Cases
// without a matching observation are dropped with a logged count.
std::vector<ForecastCase> read_forecast_cases(
    const std::string& forecasts_path,
    const std::string& observations_path = "");

// Generic helpers used by the pipeline writers.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace csgemos

#endif  // CSGEMOS_IO_HPP
