#include "csgemos/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "csgemos/errors.hpp"
#include "csgemos/log.hpp"

namespace csgemos {

std::string fmt_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw DataError("fmt_double: conversion failed");
  return std::string(buf, ptr);
}

std::string fmt_double_fixed(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return std::string(buf);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
    fields.back().pop_back();
  return fields;
}

double parse_double(const std::string& field, const std::string& context) {
  double v = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw DataError("cannot parse number '" + field + "' in " + context);
  return v;
}

namespace {

bool is_missing(const std::string& field) {
  if (field.empty()) return true;
  std::string lower(field);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower == "na" || lower == "nan";
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

void write_forecast_csv(std::span<const ForecastCase> cases,
                        const std::string& path) {
  std::ofstream out = open_output(path);
  out << "location_id,valid_time,lead_time_h,obs_mm,group,member_idx,value_mm\n";
  for (const auto& fc : cases) {
    const auto& f = fc.forecast;
    const std::string prefix = f.location_id + "," + f.valid_time.to_string() +
                               "," + std::to_string(f.lead_time_h) + "," +
                               fmt_double(fc.observation) + ",";
    for (const auto& g : f.groups) {
      for (std::size_t i = 0; i < g.members.size(); ++i)
        out << prefix << g.label << "," << i << "," << fmt_double(g.members[i])
            << "\n";
    }
  }
  if (!out) throw DataError("failed writing '" + path + "'");
}

void write_observations_csv(std::span<const ForecastCase> cases,
                            const std::string& path) {
  std::map<std::pair<std::string, Date>, double> obs;
  for (const auto& fc : cases) {
    const auto key = std::make_pair(fc.forecast.location_id, fc.forecast.valid_time);
    auto [it, inserted] = obs.emplace(key, fc.observation);
    if (!inserted && it->second != fc.observation)
      throw DataError("conflicting observations for " + key.first + " at " +
                      key.second.to_string());
  }
  std::ofstream out = open_output(path);
  out << "location_id,valid_time,obs_mm\n";
  for (const auto& [key, value] : obs)
    out << key.first << "," << key.second.to_string() << "," << fmt_double(value)
        << "\n";
  if (!out) throw DataError("failed writing '" + path + "'");
}

namespace {

struct CaseKey {
  std::string location_id;
  Date valid_time;
  int lead_time_h;
  auto operator<=>(const CaseKey&) const = default;
};

struct PendingCase {
  std::optional<double> embedded_obs;
  // group label -> (member_idx, value)
  std::map<std::string, std::vector<std::pair<int, double>>> groups;
};

}  // namespace

std::vector<ForecastCase> read_forecast_cases(
    const std::string& forecasts_path, const std::string& observations_path) {
  std::ifstream in = open_input(forecasts_path);
  std::string line;
  if (!std::getline(in, line))
    throw DataError("'" + forecasts_path + "' is empty");
  {
    const auto header = split_csv_line(line);
    const std::vector<std::string> expected = {
        "location_id", "valid_time", "lead_time_h", "obs_mm",
        "group",       "member_idx", "value_mm"};
    if (header != expected)
      throw DataError("unexpected forecast CSV header in '" + forecasts_path + "'");
  }

  std::map<CaseKey, PendingCase> pending;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 7)
      throw DataError("bad field count at " + forecasts_path + ":" +
                      std::to_string(line_no));
    const std::string context = forecasts_path + ":" + std::to_string(line_no);
    CaseKey key{fields[0], Date::parse(fields[1]),
                static_cast<int>(parse_double(fields[2], context))};
    PendingCase& pc = pending[key];
    if (!is_missing(fields[3])) {
      const double obs = parse_double(fields[3], context);
      if (pc.embedded_obs && *pc.embedded_obs != obs)
        throw DataError("conflicting obs_mm values in " + context);
      pc.embedded_obs = obs;
    }
    pc.groups[fields[4]].emplace_back(
        static_cast<int>(parse_double(fields[5], context)),
        parse_double(fields[6], context));
  }

  // companion observations override the embedded column
  std::map<std::pair<std::string, Date>, double> obs;
  const bool have_companion = !observations_path.empty();
  if (have_companion) {
    std::ifstream oin = open_input(observations_path);
    if (!std::getline(oin, line))
      throw DataError("'" + observations_path + "' is empty");
    if (split_csv_line(line) !=
        std::vector<std::string>{"location_id", "valid_time", "obs_mm"})
      throw DataError("unexpected observations CSV header in '" +
                      observations_path + "'");
    std::size_t oline = 1;
    while (std::getline(oin, line)) {
      ++oline;
      if (line.empty() || line == "\r") continue;
      const auto fields = split_csv_line(line);
      if (fields.size() != 3)
        throw DataError("bad field count at " + observations_path + ":" +
                        std::to_string(oline));
      if (is_missing(fields[2])) continue;
      obs[{fields[0], Date::parse(fields[1])}] = parse_double(
          fields[2], observations_path + ":" + std::to_string(oline));
    }
  }

  std::vector<ForecastCase> cases;
  cases.reserve(pending.size());
  std::size_t dropped = 0;
  for (auto& [key, pc] : pending) {
    std::optional<double> observation;
    if (have_companion) {
      auto it = obs.find({key.location_id, key.valid_time});
      if (it != obs.end()) observation = it->second;
    }
    if (!observation) observation = pc.embedded_obs;
    if (!observation) {
      ++dropped;
      continue;
    }
    std::vector<MemberGroup> groups;
    for (auto& [label, members] : pc.groups) {
      std::sort(members.begin(), members.end());
      std::vector<double> values;
      values.reserve(members.size());
      for (const auto& [idx, v] : members) values.push_back(v);
      groups.emplace_back(label, std::move(values));
    }
    cases.emplace_back(EnsembleForecast(key.location_id, key.valid_time,
                                        key.lead_time_h, std::move(groups)),
                       *observation);
  }
  if (dropped > 0)
    log::warn(std::to_string(dropped) +
              " forecast cases dropped for missing observations");
  return cases;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out = open_output(path);
  out << content;
  if (!out) throw DataError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace csgemos
