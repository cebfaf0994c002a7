#ifndef CSGEMOS_VERIFY_HPP
#define CSGEMOS_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "csgemos/date.hpp"

namespace csgemos {

enum class ScoreKind { Crps, BrierScore };

struct ScoreEntry {
  std::string location_id;
  Date valid_time;
  double value;
};

// Per-case score values with unique (location, time) keys, time-ordered.
class ScoreSeries {
 public:
  ScoreSeries(ScoreKind kind, double threshold, std::vector<ScoreEntry> entries);

  ScoreKind kind() const { return kind_; }
  double threshold() const { return threshold_; }
  const std::vector<ScoreEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  double mean() const;
  std::vector<Date> dates() const;  // unique, ascending

  // Values grouped by date in ascending date order.
  std::vector<std::vector<double>> values_by_date() const;

 private:
  ScoreKind kind_;
  double threshold_;
  std::vector<ScoreEntry> entries_;  // sorted by (valid_time, location)
};

// (F(threshold) - indicator{threshold >= obs})^2
double brier_score(const std::function<double(double)>& cdf, double threshold,
                   double obs);

double crpss(double mean_crps, double mean_crps_ref);
double bss(double mean_bs, double mean_bs_ref);

// Numeric integral of the Brier score over all thresholds; agrees with the
// CRPS. Diagnostic used by the test suites.
double crps_from_bs_integral(const std::function<double(double)>& cdf,
                             double obs, double upper, double abs_tol = 1e-8);

struct ReliabilityBin {
  double mean_prob;   // NaN when the bin is empty
  double obs_freq;    // NaN when the bin is empty
  std::int64_t count;
  double log10_freq;  // log10(count/total), NaN when empty
};

struct ReliabilityDiagram {
  std::vector<double> edges;  // n_bins+1 edges on [0, 1]
  std::vector<ReliabilityBin> bins;
  std::int64_t total = 0;
};

// Bins forecast probabilities into equal-width bins and pairs the per-bin
// mean probability with the observed event frequency.
ReliabilityDiagram reliability(std::span<const double> probabilities,
                               std::span<const int> outcomes, int n_bins = 10);

struct BootstrapInterval {
  double point;  // statistic on the original series
  double lo;
  double hi;
};

struct BootstrapOptions {
  int n_boot = 2000;
  double mean_block_length = 0.0;  // <= 0: ceil(n_dates^(1/3))
  std::uint64_t seed = 1;
  double level = 0.95;
};

// Stationary bootstrap (geometric block lengths, circular wrapping) over
// the time dimension; all locations of a resampled date stay together.
// Percentile interval of the mean score.
BootstrapInterval stationary_bootstrap_ci(const ScoreSeries& series,
                                          const BootstrapOptions& options);

// Same resampling applied jointly to two series sharing a date grid;
// statistic is the skill score 1 - mean/mean_ref.
BootstrapInterval stationary_bootstrap_skill_ci(const ScoreSeries& series,
                                                const ScoreSeries& reference,
                                                const BootstrapOptions& options);

struct DmResult {
  double statistic;
  double p_value;
  bool degenerate;  // non-positive long-run variance estimate
};

// Diebold-Mariano test on a loss-differential series with rectangular
// kernel long-run variance up to lag horizon-1; two-sided normal p-value.
DmResult diebold_mariano(std::span<const double> loss_differential, int horizon);

// Standard step-up procedure; returns the indices of rejected hypotheses.
std::vector<std::size_t> benjamini_hochberg(std::span<const double> p_values,
                                            double q);

}  // namespace csgemos

#endif  // CSGEMOS_VERIFY_HPP
