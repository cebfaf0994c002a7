#ifndef CSGEMOS_CRPS_HPP
#define CSGEMOS_CRPS_HPP

#include <span>
#include <vector>

#include "csgemos/distributions.hpp"

namespace csgemos {

// Closed-form CRPS of the censored shifted gamma distribution at a
// non-negative observation. Cross-validated against csg_crps_quadrature;
// see tests for the agreement grid.
double csg_crps(const CsgParams& p, double obs);

// Reference oracle: adaptive quadrature of the squared CDF/step difference.
// abs_tol is the absolute integration tolerance; throws QuadratureFailure
// if the requested tolerance cannot be met.
double csg_crps_quadrature(const CsgParams& p, double obs,
                           double abs_tol = 1e-10);

// CRPS of an unweighted forecast ensemble (empirical step CDF) via the
// kernel identity mean|f_i - y| - (1/2M^2) sum |f_i - f_j|.
double empirical_crps(std::span<const double> members, double obs);

// Step CDF over sorted support values with probability weights.
class WeightedEmpiricalCdf {
 public:
  // Values need not be pre-sorted; weights must be non-negative and sum
  // to 1 within 1e-12.
  WeightedEmpiricalCdf(std::vector<double> values, std::vector<double> weights);

  double operator()(double x) const;  // P(X <= x)
  double crps(double obs) const;      // exact piecewise integration
  double mean() const;

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& cum_weights() const { return cumw_; }

 private:
  std::vector<double> values_;  // ascending
  std::vector<double> cumw_;    // cumulative weights, back() == 1
};

}  // namespace csgemos

#endif  // CSGEMOS_CRPS_HPP
