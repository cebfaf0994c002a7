#include "csgemos/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "csgemos/errors.hpp"

namespace csgemos {

MemberGroup::MemberGroup(std::string label_, std::vector<double> members_)
    : label(std::move(label_)), members(std::move(members_)) {
  for (double v : members)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw DataError("member group '" + label +
                      "': member values must be finite and >= 0");
}

EnsembleForecast::EnsembleForecast(std::string location_id_, Date valid_time_,
                                   int lead_time_h_,
                                   std::vector<MemberGroup> groups_)
    : location_id(std::move(location_id_)),
      valid_time(valid_time_),
      lead_time_h(lead_time_h_),
      groups(std::move(groups_)) {
  if (lead_time_h <= 0) throw DataError("lead time must be positive");
  if (member_count() == 0)
    throw DataError("forecast needs at least one ensemble member");
}

std::size_t EnsembleForecast::member_count() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.members.size();
  return n;
}

const MemberGroup* EnsembleForecast::find_group(const std::string& label) const {
  for (const auto& g : groups)
    if (g.label == label) return &g;
  return nullptr;
}

MixtureConfig::MixtureConfig(int m_high_, int m_low_, int cost_ratio_)
    : m_high(m_high_), m_low(m_low_), cost_ratio(cost_ratio_) {
  if (m_high < 0 || m_low < 0)
    throw ConfigError("mixture member counts must be >= 0");
  if (m_high + m_low < 1)
    throw ConfigError("mixture needs at least one member");
  if (cost_ratio < 1) throw ConfigError("cost ratio must be >= 1");
}

std::string MixtureConfig::label() const {
  return "(" + std::to_string(m_high) + "," + std::to_string(m_low) + ")";
}

bool validate_mixture(const MixtureConfig& cfg, int budget) {
  // m_high + m_low / ratio == budget, scaled by ratio to stay integral
  return static_cast<long long>(cfg.m_high) * cfg.cost_ratio + cfg.m_low ==
         static_cast<long long>(budget) * cfg.cost_ratio;
}

std::vector<MixtureConfig> paper_mixtures() {
  return {MixtureConfig(50, 0), MixtureConfig(40, 40), MixtureConfig(20, 120),
          MixtureConfig(10, 160), MixtureConfig(0, 200)};
}

ForecastCase::ForecastCase(EnsembleForecast forecast_, double observation_)
    : forecast(std::move(forecast_)), observation(observation_) {
  if (!(observation >= 0.0) || !std::isfinite(observation))
    throw DataError("observation must be finite and >= 0");
}

double GroupMeans::mean_of(const std::string& label, double fallback) const {
  for (const auto& g : per_group)
    if (g.label == label) return g.mean;
  return fallback;
}

GroupMeans group_means(const EnsembleForecast& forecast) {
  GroupMeans out;
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& g : forecast.groups) {
    if (g.members.empty()) continue;
    double sum = 0.0;
    for (double v : g.members) sum += v;
    out.per_group.push_back({g.label, sum / static_cast<double>(g.members.size())});
    total += sum;
    count += g.members.size();
  }
  if (count == 0) throw DataError("group_means: forecast has no members");
  out.overall = total / static_cast<double>(count);
  return out;
}

EnsembleForecast subset_mixture(const EnsembleForecast& forecast,
                                const MixtureConfig& cfg) {
  std::vector<MemberGroup> groups;
  const auto take = [&](const char* label, int count) {
    if (count == 0) return;
    const MemberGroup* g = forecast.find_group(label);
    if (g == nullptr || static_cast<int>(g->members.size()) < count)
      throw DataError(std::string("subset_mixture: group '") + label +
                      "' has fewer than " + std::to_string(count) + " members");
    groups.emplace_back(label, std::vector<double>(g->members.begin(),
                                                   g->members.begin() + count));
  };
  take(kHighResLabel, cfg.m_high);
  take(kLowResLabel, cfg.m_low);
  return EnsembleForecast(forecast.location_id, forecast.valid_time,
                          forecast.lead_time_h, std::move(groups));
}

ForecastCase subset_mixture(const ForecastCase& fc, const MixtureConfig& cfg) {
  return ForecastCase(subset_mixture(fc.forecast, cfg), fc.observation);
}

std::vector<RollingWindow> assemble_windows(
    std::span<const ForecastCase> dataset, int length_days,
    std::span<const Date> verification_dates, const WindowPolicy& policy) {
  if (length_days <= 0) throw ConfigError("window length must be positive");

  std::vector<const ForecastCase*> sorted;
  sorted.reserve(dataset.size());
  for (const auto& fc : dataset) sorted.push_back(&fc);
  std::sort(sorted.begin(), sorted.end(),
            [](const ForecastCase* a, const ForecastCase* b) {
              if (a->forecast.valid_time != b->forecast.valid_time)
                return a->forecast.valid_time < b->forecast.valid_time;
              if (a->forecast.location_id != b->forecast.location_id)
                return a->forecast.location_id < b->forecast.location_id;
              return a->forecast.lead_time_h < b->forecast.lead_time_h;
            });

  const Date data_start = sorted.empty() ? Date(0) : sorted.front()->forecast.valid_time;

  std::vector<RollingWindow> windows;
  windows.reserve(verification_dates.size());
  for (const Date& target : verification_dates) {
    const Date lo = target - length_days;  // inclusive
    const Date hi = target - 1;            // inclusive
    RollingWindow w{target, length_days, {}};
    auto first = std::lower_bound(
        sorted.begin(), sorted.end(), lo,
        [](const ForecastCase* fc, const Date& d) { return fc->forecast.valid_time < d; });
    for (auto it = first; it != sorted.end() && (*it)->forecast.valid_time <= hi; ++it)
      w.cases.push_back(**it);
    if (w.cases.empty())
      throw EmptyWindow("no training cases before " + target.to_string());
    if (!policy.allow_partial && (sorted.empty() || data_start > lo))
      throw EmptyWindow("history does not span " + std::to_string(length_days) +
                        " days before " + target.to_string());
    windows.push_back(std::move(w));
  }
  return windows;
}

}  // namespace csgemos
