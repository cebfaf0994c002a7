#ifndef CSGEMOS_CLUSTER_HPP
#define CSGEMOS_CLUSTER_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "csgemos/ensemble.hpp"

namespace csgemos {

// Per-location feature vector: q equidistant quantiles of the observation
// climatology over the training window followed by the same quantiles of
// the ensemble-mean forecast error distribution.
struct FeatureVector {
  std::string location_id;
  std::vector<double> values;  // 2q entries
};

// Empirical quantile by linear interpolation of order statistics
// (h = p (n-1)); sample must be sorted ascending.
double sample_quantile(std::span<const double> sorted_sample, double p);

// Quantile levels i/(q+1), i = 1..q, of (i) observed amounts and (ii)
// ensemble-mean errors (mean - observation) over the given cases.
// Requires at least q cases.
FeatureVector extract_features(std::span<const ForecastCase> location_cases,
                               int q = 12);

// In-place z-scoring of every coordinate across locations; constant
// coordinates are mapped to zero.
void standardize_features(std::vector<FeatureVector>& features);

struct ClusterModel {
  int k = 0;
  std::vector<std::vector<double>> centroids;
  std::map<std::string, int> assignment;  // location -> cluster index
};

// Lloyd iteration with k-means++-style seeding. Deterministic for a fixed
// seed (inputs are canonically ordered by location first). Empty clusters
// are re-seeded from the farthest point. If all feature vectors are
// identical and k > 1 the model degrades to k = 1 with a warning.
ClusterModel kmeans(std::vector<FeatureVector> features, int k,
                    std::uint64_t seed, int max_iterations = 100);

// Partition of the window cases by the cluster of their location. The
// union of the pools equals the input multiset.
std::map<int, std::vector<ForecastCase>> pool_training_data(
    const ClusterModel& model, std::span<const ForecastCase> window_cases);

// Index-based variant used by the pipeline to avoid copying cases.
std::map<int, std::vector<std::size_t>> pool_training_indices(
    const ClusterModel& model, std::span<const ForecastCase> window_cases);

}  // namespace csgemos

#endif  // CSGEMOS_CLUSTER_HPP
