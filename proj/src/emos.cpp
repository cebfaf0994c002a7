#include "csgemos/emos.hpp"

#include <cmath>
#include <string>

#include "csgemos/crps.hpp"
#include "csgemos/errors.hpp"
#include "csgemos/log.hpp"
#include "csgemos/optimize.hpp"

namespace csgemos {

namespace {

CsgParams link_from_moments(double mu, double sigma_sq, double delta) {
  const double mean = std::max(mu, kLinkFloor);
  const double sd = std::max(std::sqrt(sigma_sq), kLinkFloor);
  GammaParams g = moments_to_params(mean, sd);
  return CsgParams{g.shape, g.scale, std::max(delta, kLinkFloor)};
}

}  // namespace

CsgParams link(const EmosCoefficients& k, double f_high_mean, double f_low_mean,
               double f_overall_mean) {
  const double mu = k.a * k.a + k.b_high * k.b_high * f_high_mean +
                    k.b_low * k.b_low * f_low_mean;
  const double sigma_sq = k.c * k.c + k.d * k.d * f_overall_mean;
  return link_from_moments(mu, sigma_sq, k.delta);
}

CsgParams general_link(double a, std::span<const double> b,
                       std::span<const double> group_mean_values, double c,
                       double d, double delta, double f_overall_mean) {
  if (b.size() != group_mean_values.size())
    throw ArityError("general_link: " + std::to_string(b.size()) +
                     " coefficients for " +
                     std::to_string(group_mean_values.size()) + " groups");
  double mu = a * a;
  for (std::size_t i = 0; i < b.size(); ++i)
    mu += b[i] * b[i] * group_mean_values[i];
  const double sigma_sq = c * c + d * d * f_overall_mean;
  return link_from_moments(mu, sigma_sq, delta);
}

TrainingCase make_training_case(const ForecastCase& fc) {
  const GroupMeans means = group_means(fc.forecast);
  return TrainingCase{means.mean_of(kHighResLabel), means.mean_of(kLowResLabel),
                      means.overall, fc.observation};
}

std::vector<TrainingCase> make_training_cases(
    std::span<const ForecastCase> cases) {
  std::vector<TrainingCase> out;
  out.reserve(cases.size());
  for (const auto& fc : cases) out.push_back(make_training_case(fc));
  return out;
}

double mean_crps_objective(const EmosCoefficients& coeffs,
                           std::span<const TrainingCase> window) {
  if (window.empty()) throw InsufficientData("mean_crps_objective: empty window");
  double acc = 0.0;
  for (const auto& tc : window) {
    const CsgParams p =
        link(coeffs, tc.f_high_mean, tc.f_low_mean, tc.f_overall_mean);
    acc += csg_crps(p, tc.observation);
  }
  return acc / static_cast<double>(window.size());
}

double mean_crps_objective(const EmosCoefficients& coeffs,
                           std::span<const ForecastCase> window) {
  const auto cases = make_training_cases(window);
  return mean_crps_objective(coeffs, cases);
}

namespace {

// Packing of the free parameters: [a, (b_high), (b_low), c, d, log delta],
// with the b of an absent resolution frozen at zero.
struct Packing {
  bool use_high;
  bool use_low;

  std::size_t size() const {
    return 4 + (use_high ? 1 : 0) + (use_low ? 1 : 0);
  }

  std::vector<double> pack(const EmosCoefficients& k) const {
    std::vector<double> x;
    x.reserve(size());
    x.push_back(k.a);
    if (use_high) x.push_back(k.b_high);
    if (use_low) x.push_back(k.b_low);
    x.push_back(k.c);
    x.push_back(k.d);
    x.push_back(std::log(k.delta));
    return x;
  }

  EmosCoefficients unpack(std::span<const double> x) const {
    EmosCoefficients k;
    std::size_t i = 0;
    k.a = x[i++];
    k.b_high = use_high ? x[i++] : 0.0;
    k.b_low = use_low ? x[i++] : 0.0;
    k.c = x[i++];
    k.d = x[i++];
    k.delta = std::exp(x[i++]);
    return k;
  }
};

}  // namespace

FitReport fit(std::span<const TrainingCase> window, const MixtureConfig& config,
              std::optional<EmosCoefficients> init, const FitOptions& options) {
  const Packing packing{config.m_high > 0, config.m_low > 0};
  const std::size_t min_cases =
      static_cast<std::size_t>(options.min_cases_per_parameter) * packing.size();
  if (window.size() < min_cases)
    throw InsufficientData("fit: " + std::to_string(window.size()) +
                           " cases for " + std::to_string(packing.size()) +
                           " free parameters (need >= " +
                           std::to_string(min_cases) + ")");

  EmosCoefficients start = init.value_or(EmosCoefficients{});
  if (!packing.use_high) start.b_high = 0.0;
  if (!packing.use_low) start.b_low = 0.0;
  if (!(start.delta > 0.0)) throw DomainError("fit: initial delta must be > 0");

  const auto objective = [&](std::span<const double> x) {
    return mean_crps_objective(packing.unpack(x), window);
  };

  SimplexOptions sopt;
  sopt.tol = options.tol;
  sopt.max_iterations = options.max_iterations;
  const SimplexResult res = nelder_mead(objective, packing.pack(start), sopt);

  FitReport report;
  report.coefficients = packing.unpack(res.x);
  report.train_mean_crps = res.fmin;
  report.n_cases = window.size();
  report.iterations = res.iterations;
  report.converged = res.converged;

  // count flooring events once per fit instead of per objective call
  std::size_t floored = 0;
  for (const auto& tc : window) {
    const auto& k = report.coefficients;
    const double mu = k.a * k.a + k.b_high * k.b_high * tc.f_high_mean +
                      k.b_low * k.b_low * tc.f_low_mean;
    const double sigma_sq = k.c * k.c + k.d * k.d * tc.f_overall_mean;
    if (mu < kLinkFloor || std::sqrt(sigma_sq) < kLinkFloor) ++floored;
  }
  if (floored > 0)
    log::info("fit: mean/sd floor active for " + std::to_string(floored) +
              " of " + std::to_string(window.size()) + " training cases");
  return report;
}

FitReport fit(std::span<const ForecastCase> window, const MixtureConfig& config,
              std::optional<EmosCoefficients> init, const FitOptions& options) {
  const auto cases = make_training_cases(window);
  return fit(std::span<const TrainingCase>(cases), config, init, options);
}

CsgParams predict(const EmosCoefficients& coeffs,
                  const EnsembleForecast& forecast) {
  const GroupMeans means = group_means(forecast);
  return link(coeffs, means.mean_of(kHighResLabel),
              means.mean_of(kLowResLabel), means.overall);
}

}  // namespace csgemos
