#include "csgemos/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "csgemos/cluster.hpp"
#include "csgemos/errors.hpp"
#include "csgemos/rng.hpp"
#include "csgemos/special.hpp"
#include "csgemos/threading.hpp"

namespace csgemos {

ScoreSeries::ScoreSeries(ScoreKind kind, double threshold,
                         std::vector<ScoreEntry> entries)
    : kind_(kind), threshold_(threshold), entries_(std::move(entries)) {
  for (const auto& e : entries_)
    if (!std::isfinite(e.value))
      throw DataError("ScoreSeries: non-finite score for " + e.location_id);
  std::sort(entries_.begin(), entries_.end(),
            [](const ScoreEntry& a, const ScoreEntry& b) {
              if (a.valid_time != b.valid_time) return a.valid_time < b.valid_time;
              return a.location_id < b.location_id;
            });
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (entries_[i].valid_time == entries_[i - 1].valid_time &&
        entries_[i].location_id == entries_[i - 1].location_id)
      throw DataError("ScoreSeries: duplicate (location, time) key " +
                      entries_[i].location_id + "/" +
                      entries_[i].valid_time.to_string());
}

double ScoreSeries::mean() const {
  if (entries_.empty()) throw InsufficientSeries("ScoreSeries: empty series");
  double acc = 0.0;
  for (const auto& e : entries_) acc += e.value;
  return acc / static_cast<double>(entries_.size());
}

std::vector<Date> ScoreSeries::dates() const {
  std::vector<Date> out;
  for (const auto& e : entries_)
    if (out.empty() || out.back() != e.valid_time) out.push_back(e.valid_time);
  return out;
}

std::vector<std::vector<double>> ScoreSeries::values_by_date() const {
  std::vector<std::vector<double>> grouped;
  Date current;
  for (const auto& e : entries_) {
    if (grouped.empty() || e.valid_time != current) {
      grouped.emplace_back();
      current = e.valid_time;
    }
    grouped.back().push_back(e.value);
  }
  return grouped;
}

double brier_score(const std::function<double(double)>& cdf, double threshold,
                   double obs) {
  if (!(threshold >= 0.0)) throw DomainError("brier_score: require threshold >= 0");
  const double indicator = threshold >= obs ? 1.0 : 0.0;
  const double d = cdf(threshold) - indicator;
  return d * d;
}

double crpss(double mean_crps, double mean_crps_ref) {
  if (!(mean_crps_ref > 0.0))
    throw ZeroReference("crpss: non-positive reference score");
  return 1.0 - mean_crps / mean_crps_ref;
}

double bss(double mean_bs, double mean_bs_ref) {
  if (!(mean_bs_ref > 0.0))
    throw ZeroReference("bss: non-positive reference score");
  return 1.0 - mean_bs / mean_bs_ref;
}

namespace {

// adaptive Simpson over a smooth piece
double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb, double whole, double tol,
               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (std::fabs(err) <= 15.0 * tol) return left + right + err / 15.0;
  if (depth >= 55) throw QuadratureFailure("BS integral: depth limit reached");
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (b <= a) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace

double crps_from_bs_integral(const std::function<double(double)>& cdf,
                             double obs, double upper, double abs_tol) {
  if (!(obs >= 0.0)) throw DomainError("crps_from_bs_integral: require obs >= 0");
  if (!(upper > obs)) throw DomainError("crps_from_bs_integral: upper <= obs");
  const auto integrand = [&](double y) { return brier_score(cdf, y, obs); };
  // the indicator jumps at y = obs, so integrate the two smooth pieces
  double total = 0.0;
  if (obs > 0.0) total += integrate(integrand, 0.0, obs, 0.5 * abs_tol);
  total += integrate(integrand, std::nextafter(obs, upper), upper, 0.5 * abs_tol);
  return total;
}

ReliabilityDiagram reliability(std::span<const double> probabilities,
                               std::span<const int> outcomes, int n_bins) {
  if (probabilities.size() != outcomes.size())
    throw DataError("reliability: probability/outcome length mismatch");
  if (n_bins < 1) throw ConfigError("reliability: require n_bins >= 1");

  ReliabilityDiagram diagram;
  diagram.edges.resize(static_cast<std::size_t>(n_bins) + 1);
  for (int i = 0; i <= n_bins; ++i)
    diagram.edges[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / static_cast<double>(n_bins);

  std::vector<double> prob_sum(static_cast<std::size_t>(n_bins), 0.0);
  std::vector<std::int64_t> event_count(static_cast<std::size_t>(n_bins), 0);
  std::vector<std::int64_t> count(static_cast<std::size_t>(n_bins), 0);
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const double p = probabilities[i];
    if (!(p >= 0.0) || !(p <= 1.0))
      throw DomainError("reliability: probability outside [0, 1]");
    int b = static_cast<int>(p * n_bins);
    if (b == n_bins) b = n_bins - 1;  // p == 1 joins the last bin
    prob_sum[static_cast<std::size_t>(b)] += p;
    event_count[static_cast<std::size_t>(b)] += outcomes[i] != 0 ? 1 : 0;
    ++count[static_cast<std::size_t>(b)];
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  diagram.total = static_cast<std::int64_t>(probabilities.size());
  diagram.bins.reserve(static_cast<std::size_t>(n_bins));
  for (int b = 0; b < n_bins; ++b) {
    const auto i = static_cast<std::size_t>(b);
    ReliabilityBin bin{};
    bin.count = count[i];
    if (count[i] > 0) {
      bin.mean_prob = prob_sum[i] / static_cast<double>(count[i]);
      bin.obs_freq = static_cast<double>(event_count[i]) / static_cast<double>(count[i]);
      bin.log10_freq = std::log10(static_cast<double>(count[i]) /
                                  static_cast<double>(diagram.total));
    } else {
      bin.mean_prob = nan;
      bin.obs_freq = nan;
      bin.log10_freq = nan;
    }
    diagram.bins.push_back(bin);
  }
  return diagram;
}

namespace {

// One stationary-bootstrap resample of date indices (circular wrapping).
std::vector<std::size_t> resample_dates(std::size_t n, double restart_prob,
                                        Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::size_t current = rng.below(n);
  idx[0] = current;
  for (std::size_t t = 1; t < n; ++t) {
    if (rng.uniform() < restart_prob)
      current = rng.below(n);
    else
      current = (current + 1) % n;
    idx[t] = current;
  }
  return idx;
}

BootstrapInterval percentile_interval(std::vector<double> stats, double point,
                                      double level) {
  std::sort(stats.begin(), stats.end());
  const double alpha = 0.5 * (1.0 - level);
  return BootstrapInterval{point, sample_quantile(stats, alpha),
                           sample_quantile(stats, 1.0 - alpha)};
}

void check_bootstrap_preconditions(std::size_t n_dates,
                                   const BootstrapOptions& options) {
  if (options.n_boot < 100)
    throw ConfigError("stationary bootstrap: require n_boot >= 100");
  if (!(options.level > 0.0) || !(options.level < 1.0))
    throw ConfigError("stationary bootstrap: level must be in (0, 1)");
  if (n_dates < 10)
    throw InsufficientSeries("stationary bootstrap: need >= 10 time points");
}

double block_restart_prob(std::size_t n_dates, const BootstrapOptions& options) {
  double mean_block = options.mean_block_length;
  if (mean_block <= 0.0)
    mean_block = std::ceil(std::cbrt(static_cast<double>(n_dates)));
  mean_block = std::max(1.0, std::min(mean_block, static_cast<double>(n_dates)));
  return 1.0 / mean_block;
}

}  // namespace

BootstrapInterval stationary_bootstrap_ci(const ScoreSeries& series,
                                          const BootstrapOptions& options) {
  const auto grouped = series.values_by_date();
  check_bootstrap_preconditions(grouped.size(), options);
  const double restart = block_restart_prob(grouped.size(), options);

  std::vector<double> stats(static_cast<std::size_t>(options.n_boot));
  parallel_for(stats.size(), 1, [&](std::size_t b) {
    Rng rng(substream_seed(options.seed, b));
    const auto idx = resample_dates(grouped.size(), restart, rng);
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i : idx) {
      for (double v : grouped[i]) acc += v;
      count += grouped[i].size();
    }
    stats[b] = acc / static_cast<double>(count);
  });
  return percentile_interval(std::move(stats), series.mean(), options.level);
}

BootstrapInterval stationary_bootstrap_skill_ci(const ScoreSeries& series,
                                                const ScoreSeries& reference,
                                                const BootstrapOptions& options) {
  const auto grouped = series.values_by_date();
  const auto grouped_ref = reference.values_by_date();
  if (series.dates() != reference.dates())
    throw DataError("skill bootstrap: date grids differ");
  check_bootstrap_preconditions(grouped.size(), options);
  const double restart = block_restart_prob(grouped.size(), options);

  std::vector<double> stats(static_cast<std::size_t>(options.n_boot));
  parallel_for(stats.size(), 1, [&](std::size_t b) {
    Rng rng(substream_seed(options.seed, b));
    const auto idx = resample_dates(grouped.size(), restart, rng);
    double acc = 0.0, acc_ref = 0.0;
    std::size_t count = 0, count_ref = 0;
    for (std::size_t i : idx) {
      for (double v : grouped[i]) acc += v;
      count += grouped[i].size();
      for (double v : grouped_ref[i]) acc_ref += v;
      count_ref += grouped_ref[i].size();
    }
    const double mean = acc / static_cast<double>(count);
    const double mean_ref = acc_ref / static_cast<double>(count_ref);
    stats[b] = mean_ref > 0.0 ? 1.0 - mean / mean_ref
                              : -std::numeric_limits<double>::infinity();
  });
  const double skill = crpss(series.mean(), reference.mean());
  return percentile_interval(std::move(stats), skill, options.level);
}

DmResult diebold_mariano(std::span<const double> loss_differential,
                         int horizon) {
  const std::size_t n = loss_differential.size();
  if (n < 30)
    throw InsufficientSeries("diebold_mariano: need >= 30 observations");
  if (horizon < 1) throw ConfigError("diebold_mariano: require horizon >= 1");

  const double nd = static_cast<double>(n);
  double mean = 0.0;
  for (double d : loss_differential) mean += d;
  mean /= nd;

  // long-run variance, rectangular kernel up to lag horizon-1
  double lrv = 0.0;
  for (int lag = 0; lag < horizon && lag < static_cast<int>(n); ++lag) {
    double gamma = 0.0;
    for (std::size_t t = static_cast<std::size_t>(lag); t < n; ++t)
      gamma += (loss_differential[t] - mean) *
               (loss_differential[t - static_cast<std::size_t>(lag)] - mean);
    gamma /= nd;
    lrv += lag == 0 ? gamma : 2.0 * gamma;
  }

  if (!(lrv > 0.0)) {
    if (mean == 0.0) return DmResult{0.0, 1.0, false};  // identical forecasts
    return DmResult{0.0, 1.0, true};
  }
  const double statistic = mean / std::sqrt(lrv / nd);
  const double p = std::erfc(std::fabs(statistic) / 1.4142135623730951);
  return DmResult{statistic, p, false};
}

std::vector<std::size_t> benjamini_hochberg(std::span<const double> p_values,
                                            double q) {
  if (!(q > 0.0) || !(q < 1.0))
    throw ConfigError("benjamini_hochberg: require q in (0, 1)");
  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p_values[a] < p_values[b];
  });

  std::size_t cutoff = 0;  // number of rejections
  for (std::size_t i = 0; i < m; ++i) {
    const double p = p_values[order[i]];
    if (!(p >= 0.0) || !(p <= 1.0))
      throw DomainError("benjamini_hochberg: p-value outside [0, 1]");
    if (p <= static_cast<double>(i + 1) * q / static_cast<double>(m))
      cutoff = i + 1;
  }
  std::vector<std::size_t> rejected(order.begin(),
                                    order.begin() + static_cast<long>(cutoff));
  std::sort(rejected.begin(), rejected.end());
  return rejected;
}

}  // namespace csgemos
