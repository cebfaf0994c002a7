#ifndef CSGEMOS_ENSEMBLE_HPP
#define CSGEMOS_ENSEMBLE_HPP

#include <span>
#include <string>
#include <vector>

#include "csgemos/date.hpp"

namespace csgemos {

inline constexpr const char* kHighResLabel = "high";
inline constexpr const char* kLowResLabel = "low";

// One group of exchangeable ensemble members. Every operation consuming a
// group must be invariant under permutation of its members.
struct MemberGroup {
  std::string label;
  std::vector<double> members;  // non-negative precipitation amounts, mm/24h

  MemberGroup() = default;
  MemberGroup(std::string label, std::vector<double> members);
};

// One forecast: location, valid (verification) time, lead time and the
// member groups.
struct EnsembleForecast {
  std::string location_id;
  Date valid_time;
  int lead_time_h = 0;
  std::vector<MemberGroup> groups;

  EnsembleForecast() = default;
  EnsembleForecast(std::string location_id, Date valid_time, int lead_time_h,
                   std::vector<MemberGroup> groups);

  std::size_t member_count() const;
  const MemberGroup* find_group(const std::string& label) const;
};

// Dual-resolution member counts under a fixed high:low cost ratio.
struct MixtureConfig {
  int m_high = 0;
  int m_low = 0;
  int cost_ratio = 4;

  MixtureConfig() = default;
  MixtureConfig(int m_high, int m_low, int cost_ratio = 4);

  std::string label() const;  // "(40,40)"
};

// cost = m_high + m_low / cost_ratio, compared exactly in integer
// arithmetic (budget in units of one high-resolution member).
bool validate_mixture(const MixtureConfig& cfg, int budget);

// The paper's five equal-cost combinations of a 50-member high-resolution
// and a 200-member low-resolution ensemble.
std::vector<MixtureConfig> paper_mixtures();

struct ForecastCase {
  EnsembleForecast forecast;
  double observation = 0.0;  // mm / 24h, >= 0

  ForecastCase() = default;
  ForecastCase(EnsembleForecast forecast, double observation);
};

struct GroupMean {
  std::string label;
  double mean;
};

struct GroupMeans {
  std::vector<GroupMean> per_group;  // non-empty groups only
  double overall = 0.0;              // mean over all members

  // Mean of the group with the given label, or fallback when the group is
  // absent or empty.
  double mean_of(const std::string& label, double fallback = 0.0) const;
};

GroupMeans group_means(const EnsembleForecast& forecast);

// Restrict a forecast with full "high"/"low" groups to the member counts
// of a mixture (prefix subset; valid because members are exchangeable).
EnsembleForecast subset_mixture(const EnsembleForecast& forecast,
                                const MixtureConfig& cfg);
ForecastCase subset_mixture(const ForecastCase& fc, const MixtureConfig& cfg);

struct RollingWindow {
  Date target_date;
  int length_days = 0;
  std::vector<ForecastCase> cases;
};

struct WindowPolicy {
  // When false, a window whose history does not span the full length is a
  // hard error; when true it is returned with whatever cases exist.
  bool allow_partial = false;
};

// One window per verification date holding the cases whose valid_time lies
// in the length_days calendar days strictly preceding the date. Windows
// pool all locations and lead times; downstream fitting slices them.
std::vector<RollingWindow> assemble_windows(
    std::span<const ForecastCase> dataset, int length_days,
    std::span<const Date> verification_dates, const WindowPolicy& policy = {});

}  // namespace csgemos

#endif  // CSGEMOS_ENSEMBLE_HPP
