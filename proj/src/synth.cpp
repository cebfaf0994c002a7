#include "csgemos/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "csgemos/distributions.hpp"
#include "csgemos/errors.hpp"
#include "csgemos/rng.hpp"
#include "csgemos/special.hpp"
#include "csgemos/threading.hpp"

namespace csgemos {

int ScenarioConfig::max_high() const {
  int m = 0;
  for (const auto& mix : mixtures) m = std::max(m, mix.m_high);
  return m;
}

int ScenarioConfig::max_low() const {
  int m = 0;
  for (const auto& mix : mixtures) m = std::max(m, mix.m_low);
  return m;
}

void validate(const ScenarioConfig& c) {
  if (c.n_locations < 1 || c.n_days < 1)
    throw ConfigError("scenario: counts must be positive");
  if (c.lead_times_h.empty()) throw ConfigError("scenario: no lead times");
  for (int h : c.lead_times_h)
    if (h <= 0) throw ConfigError("scenario: lead times must be positive");
  if (c.mixtures.empty()) throw ConfigError("scenario: no mixtures");
  if (c.max_high() + c.max_low() < 1)
    throw ConfigError("scenario: mixtures have no members");
  if (!(c.distortion.bias > 0.0))
    throw ConfigError("scenario: bias factor must be > 0");
  if (!(c.distortion.spread_deflation > 0.0) ||
      !(c.distortion.spread_deflation <= 1.0))
    throw ConfigError("scenario: spread deflation must be in (0, 1]");
  if (c.distortion.noise_high < 0.0 || c.distortion.noise_low < 0.0)
    throw ConfigError("scenario: noise levels must be >= 0");
  if (c.reforecast_members < 1 || c.reforecast_years < 0)
    throw ConfigError("scenario: bad reforecast configuration");
  if (!(c.clim_mean_lo > 0.0) || c.clim_mean_hi < c.clim_mean_lo ||
      !(c.wet_shape_lo > 0.0) || c.wet_shape_hi < c.wet_shape_lo ||
      !(c.shift_lo > 0.0) || c.shift_hi < c.shift_lo)
    throw ConfigError("scenario: bad climate hyper-ranges");
  if (c.zero_inflation_lo < 0.0 || c.zero_inflation_hi > 1.0 ||
      c.zero_inflation_hi < c.zero_inflation_lo)
    throw ConfigError("scenario: bad zero-inflation range");
  if (!(c.predictability_tau_h > 0.0) || !(c.drizzle_factor > 0.0))
    throw ConfigError("scenario: bad predictability/drizzle settings");
}

std::string location_id(int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "L%04d", index);
  return std::string(buf);
}

namespace {

struct LocationClimate {
  double clim_mean;
  double wet_shape;
  double zero_inflation;
  double shift;
  double spread_base;
  double spread_slope;
  double signal_mean;  // E[S] of the case signal
};

LocationClimate draw_climate(const ScenarioConfig& c, Rng& rng) {
  LocationClimate lc{};
  lc.clim_mean = rng.uniform(c.clim_mean_lo, c.clim_mean_hi);
  lc.wet_shape = rng.uniform(c.wet_shape_lo, c.wet_shape_hi);
  lc.zero_inflation = rng.uniform(c.zero_inflation_lo, c.zero_inflation_hi);
  lc.shift = rng.uniform(c.shift_lo, c.shift_hi);
  lc.spread_base = rng.uniform(c.spread_base_lo, c.spread_base_hi);
  lc.spread_slope = rng.uniform(c.spread_slope_lo, c.spread_slope_hi);
  lc.signal_mean = lc.zero_inflation * c.drizzle_factor * lc.clim_mean +
                   (1.0 - lc.zero_inflation) * lc.clim_mean;
  return lc;
}

// Conditional distribution of truth and members for one forecast case.
struct CaseTruth {
  double mu;
  double sigma;
  double shift;
};

CaseTruth draw_case_truth(const ScenarioConfig& c, const LocationClimate& lc,
                          int lead_h, Rng& rng) {
  const bool dry = rng.uniform() < lc.zero_inflation;
  double signal;
  if (dry) {
    signal = c.drizzle_factor * lc.clim_mean;
    rng.uniform();  // keep the draw count fixed across regimes
  } else {
    const GammaParams wet{lc.wet_shape, lc.clim_mean / lc.wet_shape};
    signal = gamma_quantile(wet, rng.uniform());
  }
  const double lam = std::exp(-static_cast<double>(lead_h) / c.predictability_tau_h);
  const double mu = lam * signal + (1.0 - lam) * lc.signal_mean;
  const double var =
      (lc.spread_base * lc.spread_base + lc.spread_slope * lc.spread_slope * mu) *
      (2.0 - lam);
  return CaseTruth{mu, std::sqrt(var), lc.shift};
}

CsgParams truth_params(const CaseTruth& t) {
  const GammaParams g = moments_to_params(t.mu, t.sigma);
  return CsgParams{g.shape, g.scale, t.shift};
}

CsgParams member_params(const CaseTruth& t, const DistortionConfig& d) {
  const GammaParams g = moments_to_params(d.bias * t.mu,
                                          d.spread_deflation * t.sigma);
  return CsgParams{g.shape, g.scale, t.shift};
}

double draw_member(const CsgParams& p, double noise, Rng& rng) {
  double v = csg_quantile(p, rng.uniform());
  if (noise > 0.0) {
    const double z = normal_quantile(rng.uniform());
    v *= std::exp(noise * z - 0.5 * noise * noise);
  } else {
    rng.uniform();  // fixed draw count whether or not noise is active
  }
  return v;
}

}  // namespace

SyntheticData generate(const ScenarioConfig& config, int jobs) {
  validate(config);
  const int m_high = config.max_high();
  const int m_low = config.max_low();
  const std::size_t n_leads = config.lead_times_h.size();
  const std::size_t cases_per_location = static_cast<std::size_t>(config.n_days) * n_leads;
  const std::size_t refc_per_location =
      static_cast<std::size_t>(config.reforecast_years) *
      static_cast<std::size_t>(config.n_days) * n_leads;

  SyntheticData data;
  data.cases.resize(static_cast<std::size_t>(config.n_locations) * cases_per_location);
  data.reforecast_high.resize(static_cast<std::size_t>(config.n_locations) * refc_per_location);
  data.reforecast_low.resize(data.reforecast_high.size());

  parallel_for(static_cast<std::size_t>(config.n_locations), jobs, [&](std::size_t loc) {
    const std::string loc_id = location_id(static_cast<int>(loc));
    Rng clim_rng(substream_seed(config.seed, loc));
    const LocationClimate lc = draw_climate(config, clim_rng);

    // operational dual-resolution cases
    for (int day = 0; day < config.n_days; ++day) {
      for (std::size_t li = 0; li < n_leads; ++li) {
        const int lead_h = config.lead_times_h[li];
        const std::uint64_t stream =
            (loc * static_cast<std::size_t>(config.n_days) +
             static_cast<std::size_t>(day)) * n_leads + li;
        Rng rng(substream_seed(config.seed ^ 0x636173ULL, stream));

        const CaseTruth t = draw_case_truth(config, lc, lead_h, rng);
        const double obs = csg_quantile(truth_params(t), rng.uniform());
        const CsgParams mp = member_params(t, config.distortion);

        std::vector<MemberGroup> groups;
        if (m_high > 0) {
          std::vector<double> members(static_cast<std::size_t>(m_high));
          for (auto& v : members)
            v = draw_member(mp, config.distortion.noise_high, rng);
          groups.emplace_back(kHighResLabel, std::move(members));
        }
        if (m_low > 0) {
          std::vector<double> members(static_cast<std::size_t>(m_low));
          for (auto& v : members)
            v = draw_member(mp, config.distortion.noise_low, rng);
          groups.emplace_back(kLowResLabel, std::move(members));
        }

        const std::size_t slot = loc * cases_per_location +
                                 static_cast<std::size_t>(day) * n_leads + li;
        data.cases[slot] = ForecastCase(
            EnsembleForecast(loc_id, config.start_date + day, lead_h,
                             std::move(groups)),
            obs);
      }
    }

    // miniature reforecast streams, one year block at a time
    for (int year = 1; year <= config.reforecast_years; ++year) {
      const Date year_start = config.start_date - 365 * year;
      for (int day = 0; day < config.n_days; ++day) {
        for (std::size_t li = 0; li < n_leads; ++li) {
          const int lead_h = config.lead_times_h[li];
          const std::uint64_t stream =
              ((loc * static_cast<std::size_t>(config.reforecast_years) +
                static_cast<std::size_t>(year - 1)) *
                   static_cast<std::size_t>(config.n_days) +
               static_cast<std::size_t>(day)) * n_leads + li;
          Rng rng(substream_seed(config.seed ^ 0x726566ULL, stream));

          const CaseTruth t = draw_case_truth(config, lc, lead_h, rng);
          const double obs = csg_quantile(truth_params(t), rng.uniform());
          const CsgParams mp = member_params(t, config.distortion);

          std::vector<double> high(static_cast<std::size_t>(config.reforecast_members));
          for (auto& v : high) v = draw_member(mp, config.distortion.noise_high, rng);
          std::vector<double> low(static_cast<std::size_t>(config.reforecast_members));
          for (auto& v : low) v = draw_member(mp, config.distortion.noise_low, rng);

          const std::size_t slot =
              loc * refc_per_location +
              (static_cast<std::size_t>(year - 1) *
                   static_cast<std::size_t>(config.n_days) +
               static_cast<std::size_t>(day)) * n_leads + li;
          const Date valid = year_start + day;
          data.reforecast_high[slot] = ForecastCase(
              EnsembleForecast(loc_id, valid, lead_h,
                               {MemberGroup(kHighResLabel, std::move(high))}),
              obs);
          data.reforecast_low[slot] = ForecastCase(
              EnsembleForecast(loc_id, valid, lead_h,
                               {MemberGroup(kLowResLabel, std::move(low))}),
              obs);
        }
      }
    }
  });
  return data;
}

}  // namespace csgemos
