#include "csgemos/crps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "csgemos/errors.hpp"
#include "csgemos/special.hpp"

namespace csgemos {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double csg_crps(const CsgParams& p, double obs) {
  if (!valid(p)) throw DomainError("csg_crps: invalid parameters");
  if (!(obs >= 0.0) || !std::isfinite(obs))
    throw DomainError("csg_crps: require obs >= 0");

  const double k = p.shape;
  const double th = p.scale;
  const double c = p.shift / th;       // censoring point, standardized
  const double y = (obs + p.shift) / th;  // observation, standardized

  const double fk_y = reg_gamma_p(k, y);
  const double fk1_y = reg_gamma_p(k + 1.0, y);
  const double fk_c = reg_gamma_p(k, c);
  const double fk1_c = reg_gamma_p(k + 1.0, c);
  const double f2k_2c = reg_gamma_p(2.0 * k, 2.0 * c);
  const double b_half = std::exp(log_beta(0.5, k + 0.5)) / kPi;

  const double crps_std =
      y * (2.0 * fk_y - 1.0) - c * fk_c * fk_c +
      k * (1.0 + 2.0 * fk_c * fk1_c - fk_c * fk_c - 2.0 * fk1_y) -
      k * b_half * (1.0 - f2k_2c);
  return th * crps_std;
}

namespace {

// Adaptive Simpson with standard |S2-S1|/15 error control.
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(std::function<double(double)> f, double abs_tol)
      : f_(std::move(f)), tol_(abs_tol) {}

  double integrate(double a, double b) {
    if (b <= a) return 0.0;
    const double fa = f_(a), fb = f_(b), fm = f_(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, b, fa, fm, fb, whole, tol_, 0);
  }

 private:
  double recurse(double a, double b, double fa, double fm, double fb,
                 double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f_(lm), frm = f_(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (std::fabs(err) <= 15.0 * tol)
      return left + right + err / 15.0;
    if (depth >= 60)
      throw QuadratureFailure("adaptive Simpson depth limit reached");
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  std::function<double(double)> f_;
  double tol_;
};

}  // namespace

double csg_crps_quadrature(const CsgParams& p, double obs, double abs_tol) {
  if (!valid(p)) throw DomainError("csg_crps_quadrature: invalid parameters");
  if (!(obs >= 0.0) || !std::isfinite(obs))
    throw DomainError("csg_crps_quadrature: require obs >= 0");

  // The integrand vanishes on (-inf, 0): the CDF is 0 there and obs >= 0.
  // Truncate the upper tail where the CDF and the step function agree to
  // well below the tolerance.
  const Moments mom = params_to_moments(GammaParams{p.shape, p.scale});
  double upper = std::max(obs, mom.mean + 10.0 * mom.sd);
  while (1.0 - csg_cdf(p, upper) > 1e-9) upper *= 1.5;

  const auto below = [&](double t) {
    const double v = csg_cdf(p, t);
    return v * v;
  };
  const auto above = [&](double t) {
    const double v = 1.0 - csg_cdf(p, t);
    return v * v;
  };

  double total = 0.0;
  if (obs > 0.0) total += AdaptiveSimpson(below, 0.5 * abs_tol).integrate(0.0, obs);
  total += AdaptiveSimpson(above, 0.5 * abs_tol).integrate(obs, upper);
  return total;
}

double empirical_crps(std::span<const double> members, double obs) {
  const std::size_t m = members.size();
  if (m == 0) throw DomainError("empirical_crps: empty ensemble");
  std::vector<double> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());

  double abs_dev = 0.0;
  for (double v : sorted) abs_dev += std::fabs(v - obs);
  abs_dev /= static_cast<double>(m);

  // sum_{i<j}(x_j - x_i) over the sorted sample
  double pair_sum = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    pair_sum += sorted[i] * (2.0 * static_cast<double>(i) -
                             static_cast<double>(m) + 1.0);
  const double mean_pair_dist =
      2.0 * pair_sum / (static_cast<double>(m) * static_cast<double>(m));
  return abs_dev - 0.5 * mean_pair_dist;
}

WeightedEmpiricalCdf::WeightedEmpiricalCdf(std::vector<double> values,
                                           std::vector<double> weights) {
  if (values.empty() || values.size() != weights.size())
    throw DomainError("WeightedEmpiricalCdf: need matching non-empty values/weights");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  values_.reserve(values.size());
  cumw_.reserve(values.size());
  double acc = 0.0;
  for (std::size_t i : order) {
    if (weights[i] < 0.0)
      throw DomainError("WeightedEmpiricalCdf: negative weight");
    acc += weights[i];
    values_.push_back(values[i]);
    cumw_.push_back(acc);
  }
  if (std::fabs(acc - 1.0) > 1e-12)
    throw DomainError("WeightedEmpiricalCdf: weights must sum to 1");
  cumw_.back() = 1.0;
}

double WeightedEmpiricalCdf::operator()(double x) const {
  // P(X <= x) with right-continuous steps at the support points
  auto it = std::upper_bound(values_.begin(), values_.end(), x);
  if (it == values_.begin()) return 0.0;
  return cumw_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

double WeightedEmpiricalCdf::crps(double obs) const {
  // Exact integral of (F - step)^2: F is constant between knots, so the
  // integral is a finite sum over segments delimited by the support
  // points and the observation.
  std::vector<double> knots(values_);
  knots.push_back(obs);
  std::sort(knots.begin(), knots.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    if (b <= a) continue;
    const double f = (*this)(a);
    const double ind = (a >= obs) ? 1.0 : 0.0;
    const double d = f - ind;
    total += d * d * (b - a);
  }
  return total;
}

double WeightedEmpiricalCdf::mean() const {
  double prev = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    acc += values_[i] * (cumw_[i] - prev);
    prev = cumw_[i];
  }
  return acc;
}

}  // namespace csgemos
