#ifndef CSGEMOS_EMOS_HPP
#define CSGEMOS_EMOS_HPP

#include <optional>
#include <span>
#include <vector>

#include "csgemos/distributions.hpp"
#include "csgemos/ensemble.hpp"

namespace csgemos {

// Raw coefficients of the dual-resolution link functions. All mean and
// variance coefficients enter squared, so their sign is irrelevant; only
// the shift must stay positive.
struct EmosCoefficients {
  double a = 0.3;
  double b_high = 0.7;
  double b_low = 0.7;
  double c = 0.5;
  double d = 0.5;
  double delta = 0.5;
};

// Floor applied to the linked mean and standard deviation before the
// moment conversion, keeping the objective total.
inline constexpr double kLinkFloor = 1e-8;

//   mu      = a^2 + b_high^2 fbar_high + b_low^2 fbar_low
//   sigma^2 = c^2 + d^2 fbar
CsgParams link(const EmosCoefficients& coeffs, double f_high_mean,
               double f_low_mean, double f_overall_mean);

// K-group generalization: mu = a^2 + sum_k b_k^2 fbar_k. Throws ArityError
// when the coefficient count does not match the group count.
CsgParams general_link(double a, std::span<const double> b,
                       std::span<const double> group_mean_values, double c,
                       double d, double delta, double f_overall_mean);

// Per-case summary sufficient for the link functions.
struct TrainingCase {
  double f_high_mean = 0.0;
  double f_low_mean = 0.0;
  double f_overall_mean = 0.0;
  double observation = 0.0;
};

TrainingCase make_training_case(const ForecastCase& fc);
std::vector<TrainingCase> make_training_cases(std::span<const ForecastCase> cases);

double mean_crps_objective(const EmosCoefficients& coeffs,
                           std::span<const TrainingCase> window);
double mean_crps_objective(const EmosCoefficients& coeffs,
                           std::span<const ForecastCase> window);

struct FitReport {
  EmosCoefficients coefficients;
  double train_mean_crps = 0.0;
  std::size_t n_cases = 0;
  int iterations = 0;
  bool converged = false;
};

struct FitOptions {
  double tol = 1e-9;
  int max_iterations = 2000;
  int min_cases_per_parameter = 20;
};

// Mean-CRPS minimization over a training window with a derivative-free
// simplex descent. The shift is optimized as log(delta); b_low is frozen
// at 0 for pure high-resolution mixtures and b_high for pure
// low-resolution ones. The returned objective never exceeds the
// objective at the initial coefficients.
FitReport fit(std::span<const TrainingCase> window, const MixtureConfig& config,
              std::optional<EmosCoefficients> init = std::nullopt,
              const FitOptions& options = {});
FitReport fit(std::span<const ForecastCase> window, const MixtureConfig& config,
              std::optional<EmosCoefficients> init = std::nullopt,
              const FitOptions& options = {});

// group_means composed with link.
CsgParams predict(const EmosCoefficients& coeffs, const EnsembleForecast& forecast);

}  // namespace csgemos

#endif  // CSGEMOS_EMOS_HPP
