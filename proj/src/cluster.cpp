#include "csgemos/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csgemos/errors.hpp"
#include "csgemos/log.hpp"
#include "csgemos/rng.hpp"

namespace csgemos {

double sample_quantile(std::span<const double> sorted_sample, double p) {
  if (sorted_sample.empty()) throw InsufficientData("sample_quantile: empty sample");
  if (!(p >= 0.0) || !(p <= 1.0))
    throw DomainError("sample_quantile: require p in [0, 1]");
  const std::size_t n = sorted_sample.size();
  if (n == 1) return sorted_sample[0];
  const double h = p * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted_sample[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted_sample[lo] + frac * (sorted_sample[lo + 1] - sorted_sample[lo]);
}

FeatureVector extract_features(std::span<const ForecastCase> location_cases,
                               int q) {
  if (q < 1) throw ConfigError("extract_features: require q >= 1");
  if (location_cases.size() < static_cast<std::size_t>(q))
    throw InsufficientData("extract_features: " +
                           std::to_string(location_cases.size()) +
                           " cases for q=" + std::to_string(q));
  const std::string& loc = location_cases.front().forecast.location_id;

  std::vector<double> obs;
  std::vector<double> errors;
  obs.reserve(location_cases.size());
  errors.reserve(location_cases.size());
  for (const auto& fc : location_cases) {
    if (fc.forecast.location_id != loc)
      throw DataError("extract_features: cases span multiple locations");
    obs.push_back(fc.observation);
    errors.push_back(group_means(fc.forecast).overall - fc.observation);
  }
  std::sort(obs.begin(), obs.end());
  std::sort(errors.begin(), errors.end());

  FeatureVector fv;
  fv.location_id = loc;
  fv.values.reserve(2 * static_cast<std::size_t>(q));
  for (int i = 1; i <= q; ++i)
    fv.values.push_back(sample_quantile(obs, static_cast<double>(i) / (q + 1)));
  for (int i = 1; i <= q; ++i)
    fv.values.push_back(sample_quantile(errors, static_cast<double>(i) / (q + 1)));
  return fv;
}

void standardize_features(std::vector<FeatureVector>& features) {
  if (features.empty()) return;
  const std::size_t dim = features.front().values.size();
  for (const auto& f : features)
    if (f.values.size() != dim)
      throw DataError("standardize_features: inconsistent feature dimensions");

  const double n = static_cast<double>(features.size());
  for (std::size_t j = 0; j < dim; ++j) {
    double mean = 0.0;
    for (const auto& f : features) mean += f.values[j];
    mean /= n;
    double var = 0.0;
    for (const auto& f : features) {
      const double d = f.values[j] - mean;
      var += d * d;
    }
    var /= n;
    const double sd = std::sqrt(var);
    for (auto& f : features)
      f.values[j] = sd > 0.0 ? (f.values[j] - mean) / sd : 0.0;
  }
}

namespace {

double sq_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

std::size_t nearest_centroid(const std::vector<std::vector<double>>& centroids,
                             const std::vector<double>& point) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = sq_distance(centroids[c], point);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

ClusterModel kmeans(std::vector<FeatureVector> features, int k,
                    std::uint64_t seed, int max_iterations) {
  if (features.empty()) throw InsufficientData("kmeans: no feature vectors");
  if (k < 1) throw ConfigError("kmeans: require k >= 1");
  if (static_cast<std::size_t>(k) > features.size())
    throw ConfigError("kmeans: k exceeds number of locations");

  // canonical ordering makes the seeding independent of input order
  std::sort(features.begin(), features.end(),
            [](const FeatureVector& a, const FeatureVector& b) {
              return a.location_id < b.location_id;
            });
  const std::size_t n = features.size();
  const std::size_t dim = features.front().values.size();
  for (const auto& f : features)
    if (f.values.size() != dim)
      throw DataError("kmeans: inconsistent feature dimensions");

  bool all_identical = true;
  for (std::size_t i = 1; i < n && all_identical; ++i)
    all_identical = features[i].values == features[0].values;
  if (all_identical && k > 1) {
    log::warn("kmeans: all feature vectors identical, degrading to k=1");
    k = 1;
  }

  Rng rng(seed);
  std::vector<std::vector<double>> centroids;
  centroids.reserve(static_cast<std::size_t>(k));

  // k-means++-style spread-out seeding
  centroids.push_back(features[rng.below(n)].values);
  std::vector<double> dist2(n);
  while (centroids.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : centroids) best = std::min(best, sq_distance(c, features[i].values));
      dist2[i] = best;
      total += best;
    }
    std::size_t pick;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        acc += dist2[i];
        if (acc >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = rng.below(n);
    }
    centroids.push_back(features[pick].values);
  }

  std::vector<std::size_t> assign(n, 0);
  double prev_wcss = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iterations; ++it) {
    bool changed = false;
    double wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = nearest_centroid(centroids, features[i].values);
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
      wcss += sq_distance(centroids[c], features[i].values);
    }
    if (wcss > prev_wcss * (1.0 + 1e-9) + 1e-12)
      throw DomainError("kmeans: within-cluster sum of squares increased");
    prev_wcss = wcss;
    if (!changed && it > 0) break;

    // update step; re-seed empty clusters from the farthest point
    std::vector<std::vector<double>> sums(static_cast<std::size_t>(k),
                                          std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < dim; ++j) sums[assign[i]][j] += features[i].values[j];
      ++counts[assign[i]];
    }
    for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
      if (counts[c] == 0) {
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = sq_distance(centroids[assign[i]], features[i].values);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centroids[c] = features[far].values;
        prev_wcss = std::numeric_limits<double>::infinity();
      } else {
        for (std::size_t j = 0; j < dim; ++j)
          centroids[c][j] = sums[c][j] / static_cast<double>(counts[c]);
      }
    }
  }

  // final assignment against the final centroids
  ClusterModel model;
  model.k = k;
  model.centroids = std::move(centroids);
  for (std::size_t i = 0; i < n; ++i)
    model.assignment[features[i].location_id] =
        static_cast<int>(nearest_centroid(model.centroids, features[i].values));
  return model;
}

std::map<int, std::vector<std::size_t>> pool_training_indices(
    const ClusterModel& model, std::span<const ForecastCase> window_cases) {
  std::map<int, std::vector<std::size_t>> pools;
  for (std::size_t i = 0; i < window_cases.size(); ++i) {
    const auto& loc = window_cases[i].forecast.location_id;
    auto it = model.assignment.find(loc);
    if (it == model.assignment.end())
      throw UnknownLocation("pool_training_data: location '" + loc +
                            "' not covered by the cluster model");
    pools[it->second].push_back(i);
  }
  return pools;
}

std::map<int, std::vector<ForecastCase>> pool_training_data(
    const ClusterModel& model, std::span<const ForecastCase> window_cases) {
  std::map<int, std::vector<ForecastCase>> pools;
  for (const auto& [cluster, indices] : pool_training_indices(model, window_cases)) {
    auto& pool = pools[cluster];
    pool.reserve(indices.size());
    for (std::size_t i : indices) pool.push_back(window_cases[i]);
  }
  return pools;
}

}  // namespace csgemos
