#ifndef CSGEMOS_QUANTILE_MAP_HPP
#define CSGEMOS_QUANTILE_MAP_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "csgemos/cluster.hpp"
#include "csgemos/crps.hpp"

namespace csgemos {

// Empirical climatological CDF over a sorted sample.
//   F(x)      = (number of samples <= x) / n
//   F^{-1}(p) = linear interpolation through (i/n, x_(i)), clamped to the
//               sample range
class ClimCdf {
 public:
  explicit ClimCdf(std::vector<double> samples, std::size_t min_samples = 30);

  double cdf(double x) const;
  double quantile(double p) const;
  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }

 private:
  std::vector<double> samples_;  // ascending, all >= 0
};

ClimCdf build_clim_cdf(std::vector<double> samples, std::size_t min_samples = 30);

// f~ = F_o^{-1}(F_f(f)); monotone in f, output within the observation
// climatology range.
double quantile_map(double f, const ClimCdf& forecast_clim,
                    const ClimCdf& obs_clim);

// Histogram of the ranks of the sorted (adjusted) reforecast members
// closest to the verifying analysis; ties resolved toward the lower rank.
struct ClosestMemberHistogram {
  std::vector<std::int64_t> counts;  // length = reforecast ensemble size
  int mean_bin = -1;                 // conditioning descriptor, -1 = none

  std::int64_t total() const;
};

ClosestMemberHistogram build_closest_member_histogram(
    const std::vector<std::vector<double>>& sorted_members,
    std::span<const double> analyses);

// Interior bin edges at equidistant quantiles of the conditioning values.
std::vector<double> mean_bin_edges(std::vector<double> values, int n_bins);
int mean_bin_index(double value, std::span<const double> edges);

// One histogram per quantile-mapped ensemble-mean bin.
std::vector<ClosestMemberHistogram> build_conditional_histograms(
    const std::vector<std::vector<double>>& sorted_members,
    std::span<const double> analyses, std::span<const double> edges);

// Weights for a sorted M-member ensemble; non-negative, sum to 1.
struct MemberWeights {
  std::vector<double> weights;

  MemberWeights() = default;
  explicit MemberWeights(std::vector<double> weights);
};

// Beta fit by moment matching of the normalized rank histogram (bin mass
// treated as uniform within each bin) and evaluation of the beta CDF
// increments on the M equal subintervals of [0, 1]. A histogram with all
// mass in a single bin degrades to weights uniform over that bin.
MemberWeights fit_beta_weights(const ClosestMemberHistogram& hist,
                               int target_size);

// Uniform fallback weights.
MemberWeights uniform_weights(int target_size);

// Dual-resolution combination: concatenation of the per-resolution weight
// vectors, renormalized to total mass 1.
MemberWeights concat_weights(const MemberWeights& first,
                             const MemberWeights& second);

// Weighted empirical predictive CDF over the sorted members (weights are
// by ascending rank).
WeightedEmpiricalCdf weighted_ensemble_cdf(std::vector<double> members,
                                           const MemberWeights& weights);

// Desk-scale stand-in for supplemental-location selection: the `count`
// nearest other locations in standardized feature space.
std::vector<std::string> supplemental_locations(
    const std::vector<FeatureVector>& standardized_features,
    const std::string& target, int count);

}  // namespace csgemos

#endif  // CSGEMOS_QUANTILE_MAP_HPP
