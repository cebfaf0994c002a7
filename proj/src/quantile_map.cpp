#include "csgemos/quantile_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "csgemos/errors.hpp"
#include "csgemos/log.hpp"
#include "csgemos/special.hpp"

namespace csgemos {

ClimCdf::ClimCdf(std::vector<double> samples, std::size_t min_samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < min_samples)
    throw InsufficientData("ClimCdf: " + std::to_string(samples_.size()) +
                           " samples (need >= " + std::to_string(min_samples) +
                           ")");
  for (double v : samples_)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw DataError("ClimCdf: samples must be finite and >= 0");
  std::sort(samples_.begin(), samples_.end());
}

ClimCdf build_clim_cdf(std::vector<double> samples, std::size_t min_samples) {
  return ClimCdf(std::move(samples), min_samples);
}

double ClimCdf::cdf(double x) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) /
         static_cast<double>(samples_.size());
}

double ClimCdf::quantile(double p) const {
  const std::size_t n = samples_.size();
  const double pos = p * static_cast<double>(n);  // plotting position i/n
  if (pos <= 1.0) return samples_.front();
  if (pos >= static_cast<double>(n)) return samples_.back();
  const std::size_t i = static_cast<std::size_t>(pos);  // 1-based lower index
  const double frac = pos - static_cast<double>(i);
  return samples_[i - 1] + frac * (samples_[i] - samples_[i - 1]);
}

double quantile_map(double f, const ClimCdf& forecast_clim,
                    const ClimCdf& obs_clim) {
  if (!(f >= 0.0) || !std::isfinite(f))
    throw DomainError("quantile_map: require f >= 0");
  return obs_clim.quantile(forecast_clim.cdf(f));
}

std::int64_t ClosestMemberHistogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

namespace {

std::size_t closest_rank(const std::vector<double>& sorted_members,
                         double analysis) {
  // candidates around the insertion point; ties toward the lower rank
  const auto it = std::lower_bound(sorted_members.begin(), sorted_members.end(),
                                   analysis);
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  const std::size_t pos = static_cast<std::size_t>(it - sorted_members.begin());
  const std::size_t from = pos > 0 ? pos - 1 : 0;
  const std::size_t to = std::min(pos + 1, sorted_members.size() - 1);
  for (std::size_t i = from; i <= to; ++i) {
    const double d = std::fabs(sorted_members[i] - analysis);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

ClosestMemberHistogram build_closest_member_histogram(
    const std::vector<std::vector<double>>& sorted_members,
    std::span<const double> analyses) {
  if (sorted_members.size() != analyses.size())
    throw DataError("closest-member histogram: cases and analyses differ in length");
  if (sorted_members.empty())
    throw DataError("closest-member histogram: no cases");
  const std::size_t m = sorted_members.front().size();
  ClosestMemberHistogram hist;
  hist.counts.assign(m, 0);
  for (std::size_t c = 0; c < sorted_members.size(); ++c) {
    const auto& members = sorted_members[c];
    if (members.size() != m)
      throw DataError("closest-member histogram: inconsistent ensemble size");
    if (!std::is_sorted(members.begin(), members.end()))
      throw DataError("closest-member histogram: members must be sorted");
    ++hist.counts[closest_rank(members, analyses[c])];
  }
  return hist;
}

std::vector<double> mean_bin_edges(std::vector<double> values, int n_bins) {
  if (n_bins < 1) throw ConfigError("mean_bin_edges: require n_bins >= 1");
  std::sort(values.begin(), values.end());
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(n_bins) - 1);
  for (int i = 1; i < n_bins; ++i)
    edges.push_back(sample_quantile(values, static_cast<double>(i) / n_bins));
  return edges;
}

int mean_bin_index(double value, std::span<const double> edges) {
  int bin = 0;
  for (double e : edges) {
    if (value <= e) break;
    ++bin;
  }
  return bin;
}

std::vector<ClosestMemberHistogram> build_conditional_histograms(
    const std::vector<std::vector<double>>& sorted_members,
    std::span<const double> analyses, std::span<const double> edges) {
  if (sorted_members.size() != analyses.size())
    throw DataError("conditional histograms: cases and analyses differ in length");
  if (sorted_members.empty())
    throw DataError("conditional histograms: no cases");
  const std::size_t m = sorted_members.front().size();
  const int n_bins = static_cast<int>(edges.size()) + 1;

  std::vector<ClosestMemberHistogram> hists(static_cast<std::size_t>(n_bins));
  for (int b = 0; b < n_bins; ++b) {
    hists[static_cast<std::size_t>(b)].counts.assign(m, 0);
    hists[static_cast<std::size_t>(b)].mean_bin = b;
  }
  for (std::size_t c = 0; c < sorted_members.size(); ++c) {
    const auto& members = sorted_members[c];
    if (members.size() != m)
      throw DataError("conditional histograms: inconsistent ensemble size");
    const double mean = std::accumulate(members.begin(), members.end(), 0.0) /
                        static_cast<double>(m);
    const int b = mean_bin_index(mean, edges);
    ++hists[static_cast<std::size_t>(b)].counts[closest_rank(members, analyses[c])];
  }
  return hists;
}

MemberWeights::MemberWeights(std::vector<double> weights_)
    : weights(std::move(weights_)) {
  if (weights.empty()) throw DomainError("MemberWeights: empty weight vector");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w))
      throw DomainError("MemberWeights: weights must be finite and >= 0");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw DomainError("MemberWeights: weights must sum to 1");
}

MemberWeights uniform_weights(int target_size) {
  if (target_size < 1) throw ConfigError("uniform_weights: require size >= 1");
  return MemberWeights(std::vector<double>(
      static_cast<std::size_t>(target_size), 1.0 / target_size));
}

namespace {

std::vector<double> normalized(std::vector<double> w) {
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(sum > 0.0)) throw DomainError("weights sum to zero");
  for (double& v : w) v /= sum;
  return w;
}

}  // namespace

MemberWeights fit_beta_weights(const ClosestMemberHistogram& hist,
                               int target_size) {
  if (target_size < 1) throw ConfigError("fit_beta_weights: require target size >= 1");
  const std::int64_t total = hist.total();
  if (total <= 0) throw DegenerateHistogram("fit_beta_weights: empty histogram");
  const std::size_t n_bins = hist.counts.size();
  const double width = 1.0 / static_cast<double>(n_bins);
  const std::size_t m = static_cast<std::size_t>(target_size);

  std::size_t occupied = 0, occupied_bin = 0;
  for (std::size_t i = 0; i < n_bins; ++i)
    if (hist.counts[i] > 0) {
      ++occupied;
      occupied_bin = i;
    }
  if (occupied == 1) {
    // all mass in one bin: weights uniform over that bin's rank interval
    log::warn("fit_beta_weights: histogram mass concentrated in one bin");
    const double lo = static_cast<double>(occupied_bin) * width;
    const double hi = lo + width;
    std::vector<double> w(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      const double a = static_cast<double>(j) / static_cast<double>(m);
      const double b = static_cast<double>(j + 1) / static_cast<double>(m);
      w[j] = std::max(0.0, std::min(b, hi) - std::max(a, lo));
    }
    return MemberWeights(normalized(std::move(w)));
  }

  // moment matching; bin mass uniform within the bin, hence the width^2/12
  // variance contribution
  double mean = 0.0;
  for (std::size_t i = 0; i < n_bins; ++i)
    mean += (static_cast<double>(i) + 0.5) * width *
            static_cast<double>(hist.counts[i]);
  mean /= static_cast<double>(total);
  double var = width * width / 12.0;
  for (std::size_t i = 0; i < n_bins; ++i) {
    const double d = (static_cast<double>(i) + 0.5) * width - mean;
    var += d * d * static_cast<double>(hist.counts[i]) / static_cast<double>(total);
  }

  double t = mean * (1.0 - mean) / var - 1.0;
  if (!(t > 0.0)) t = 1e-6;  // unreachable for interior bin centers
  const double alpha = mean * t;
  const double beta = (1.0 - mean) * t;

  std::vector<double> w(m);
  double prev = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double p = static_cast<double>(j + 1) / static_cast<double>(m);
    const double cur = j + 1 == m ? 1.0 : reg_beta(alpha, beta, p);
    w[j] = std::max(0.0, cur - prev);
    prev = cur;
  }
  return MemberWeights(normalized(std::move(w)));
}

MemberWeights concat_weights(const MemberWeights& first,
                             const MemberWeights& second) {
  std::vector<double> w;
  w.reserve(first.weights.size() + second.weights.size());
  w.insert(w.end(), first.weights.begin(), first.weights.end());
  w.insert(w.end(), second.weights.begin(), second.weights.end());
  return MemberWeights(normalized(std::move(w)));
}

WeightedEmpiricalCdf weighted_ensemble_cdf(std::vector<double> members,
                                           const MemberWeights& weights) {
  if (members.size() != weights.weights.size())
    throw DomainError("weighted_ensemble_cdf: member/weight count mismatch");
  std::sort(members.begin(), members.end());
  return WeightedEmpiricalCdf(std::move(members), weights.weights);
}

std::vector<std::string> supplemental_locations(
    const std::vector<FeatureVector>& standardized_features,
    const std::string& target, int count) {
  const FeatureVector* target_fv = nullptr;
  for (const auto& f : standardized_features)
    if (f.location_id == target) {
      target_fv = &f;
      break;
    }
  if (target_fv == nullptr)
    throw UnknownLocation("supplemental_locations: unknown target '" + target + "'");

  std::vector<std::pair<double, std::string>> by_distance;
  for (const auto& f : standardized_features) {
    if (f.location_id == target) continue;
    double d = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      const double diff = f.values[i] - target_fv->values[i];
      d += diff * diff;
    }
    by_distance.emplace_back(d, f.location_id);
  }
  std::sort(by_distance.begin(), by_distance.end());
  std::vector<std::string> out;
  const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(std::max(count, 0)),
                                              by_distance.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(by_distance[i].second);
  return out;
}

}  // namespace csgemos
