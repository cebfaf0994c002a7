#ifndef CSGEMOS_SYNTH_HPP
#define CSGEMOS_SYNTH_HPP

#include <cstdint>
#include <vector>

#include "csgemos/ensemble.hpp"

namespace csgemos {

// How the raw ensemble deviates from a calibrated sample of the truth
// distribution: multiplicative mean bias, spread deflation in (0, 1]
// (values < 1 produce underdispersion) and per-member multiplicative
// log-normal noise by resolution.
struct DistortionConfig {
  double bias = 1.2;
  double spread_deflation = 0.7;
  double noise_high = 0.1;
  double noise_low = 0.35;
};

// Zero-inflated gamma climate with per-location hyper-parameters drawn
// from the configured ranges; forecast skill decays with lead time via an
// exponential predictability weight.
struct ScenarioConfig {
  int n_locations = 40;
  int n_days = 70;
  std::vector<int> lead_times_h = {24, 72, 120};
  std::vector<MixtureConfig> mixtures = paper_mixtures();

  double clim_mean_lo = 0.8, clim_mean_hi = 6.0;
  double wet_shape_lo = 0.6, wet_shape_hi = 1.2;
  double zero_inflation_lo = 0.25, zero_inflation_hi = 0.55;
  double shift_lo = 0.4, shift_hi = 1.0;
  double spread_base_lo = 0.3, spread_base_hi = 0.7;
  double spread_slope_lo = 0.6, spread_slope_hi = 1.0;
  double predictability_tau_h = 240.0;
  double drizzle_factor = 0.02;

  DistortionConfig distortion;

  int reforecast_members = 11;
  int reforecast_years = 3;

  Date start_date = Date::from_ymd(2016, 6, 1);
  std::uint64_t seed = 20160601;

  // largest member counts needed by any mixture
  int max_high() const;
  int max_low() const;
};

void validate(const ScenarioConfig& config);

struct SyntheticData {
  // dual-resolution cases with full member groups; mixtures are taken as
  // prefix subsets of the exchangeable groups
  std::vector<ForecastCase> cases;
  // single-resolution miniature reforecast streams for the quantile maps,
  // valid in the years preceding start_date
  std::vector<ForecastCase> reforecast_high;
  std::vector<ForecastCase> reforecast_low;
};

// Deterministic per seed; locations use independent substreams, so the
// output is identical under any parallel schedule.
SyntheticData generate(const ScenarioConfig& config, int jobs = 1);

std::string location_id(int index);

}  // namespace csgemos

#endif  // CSGEMOS_SYNTH_HPP
