#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "csgemos/crps.hpp"
#include "csgemos/errors.hpp"
#include "doctest.h"

using namespace csgemos;

namespace {

// independent oracle: CRPS of a weighted step CDF via the kernel identity
// sum w_i |x_i - y| - 1/2 sum w_i w_j |x_i - x_j|
double kernel_crps(const std::vector<double>& values,
                   const std::vector<double>& weights, double obs) {
  double first = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    first += weights[i] * std::fabs(values[i] - obs);
  double second = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j < values.size(); ++j)
      second += weights[i] * weights[j] * std::fabs(values[i] - values[j]);
  return first - 0.5 * second;
}

// independent oracle: piecewise integration of the unweighted step CDF
double step_integration_crps(std::vector<double> members, double obs) {
  std::sort(members.begin(), members.end());
  std::vector<double> knots = members;
  knots.push_back(obs);
  std::sort(knots.begin(), knots.end());
  const double m = static_cast<double>(members.size());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    if (b <= a) continue;
    const double below =
        static_cast<double>(std::upper_bound(members.begin(), members.end(), a) -
                            members.begin());
    const double f = below / m;
    const double ind = a >= obs ? 1.0 : 0.0;
    total += (f - ind) * (f - ind) * (b - a);
  }
  return total;
}

}  // namespace

TEST_CASE("closed form agrees with the quadrature oracle on a coarse grid") {
  double max_err = 0.0;
  for (double shape : {0.5, 1.0, 4.0})
    for (double scale : {0.2, 1.0, 5.0})
      for (double shift : {0.1, 0.5, 2.0})
        for (double obs : {0.0, 0.1, 1.0, 20.0}) {
          const CsgParams p{shape, scale, shift};
          const double closed = csg_crps(p, obs);
          const double quad = csg_crps_quadrature(p, obs);
          max_err = std::max(max_err, std::fabs(closed - quad));
        }
  CHECK(max_err < 1e-8);
}

TEST_CASE("frozen quadrature regression value") {
  // value produced by csg_crps_quadrature(k=2, theta=1, delta=0.5, y=1)
  const CsgParams p{2.0, 1.0, 0.5};
  const double frozen = 0.54585624462554549;
  CHECK(csg_crps_quadrature(p, 1.0) == doctest::Approx(frozen).epsilon(1e-9));
  CHECK(csg_crps(p, 1.0) == doctest::Approx(frozen).epsilon(1e-8));
}

TEST_CASE("csg crps against the Monte Carlo kernel form at y = 0") {
  // small point mass; E|X-y| - 1/2 E|X-X'| estimated from 1e7 draws
  const CsgParams p{4.0, 1.0, 0.2};
  std::mt19937_64 gen(23);
  std::gamma_distribution<double> gamma(p.shape, p.scale);
  const int n = 10000000;
  double mean_abs = 0.0, mean_pair = 0.0;
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = std::max(gamma(gen) - p.shift, 0.0);
    mean_abs += x;  // |x - 0|
    if (i % 2 == 1) mean_pair += std::fabs(x - prev);
    prev = x;
  }
  mean_abs /= n;
  mean_pair /= n / 2;
  const double mc = mean_abs - 0.5 * mean_pair;
  CHECK(csg_crps(p, 0.0) == doctest::Approx(mc).epsilon(2e-3));
}

TEST_CASE("csg crps scaling identity") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(0.2, 4.0);
  for (int i = 0; i < 100; ++i) {
    const double shape = u(gen), scale = u(gen), shift = 0.5 * u(gen);
    const double obs = u(gen);
    const double c = 0.5 + u(gen);
    const CsgParams p{shape, scale, shift};
    const CsgParams scaled{shape, c * scale, c * shift};
    CHECK(csg_crps(scaled, c * obs) ==
          doctest::Approx(c * csg_crps(p, obs)).epsilon(1e-10));
  }
}

TEST_CASE("csg crps nonnegative, continuous, small near the median") {
  const CsgParams p{2.0, 1.0, 0.5};
  const double median = csg_quantile(p, 0.5);
  CHECK(csg_crps(p, median) > 0.0);

  double best_obs = 0.0, best = 1e100;
  double prev = csg_crps(p, 0.0);
  for (double obs = 0.0; obs <= 12.0; obs += 0.01) {
    const double v = csg_crps(p, obs);
    CHECK(v >= 0.0);
    CHECK(std::fabs(v - prev) < 0.03);  // continuity on a fine grid
    prev = v;
    if (v < best) {
      best = v;
      best_obs = obs;
    }
  }
  CHECK(std::fabs(best_obs - median) < 0.2);
}

TEST_CASE("csg crps rejects invalid input") {
  CHECK_THROWS_AS(csg_crps(CsgParams{-1.0, 1.0, 0.5}, 1.0), DomainError);
  CHECK_THROWS_AS(csg_crps(CsgParams{1.0, 1.0, 0.5}, -0.5), DomainError);
  CHECK_THROWS_AS(csg_crps_quadrature(CsgParams{1.0, 0.0, 0.5}, 1.0), DomainError);
}

TEST_CASE("empirical crps examples") {
  const std::vector<double> two{0.0, 1.0};
  CHECK(empirical_crps(two, 0.0) == doctest::Approx(0.25).epsilon(1e-15));
  const std::vector<double> one{3.5};
  CHECK(empirical_crps(one, 1.25) == doctest::Approx(2.25).epsilon(1e-15));
}

TEST_CASE("empirical crps is permutation invariant and matches both oracles") {
  std::mt19937_64 gen(41);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int rep = 0; rep < 50; ++rep) {
    const int m = 1 + static_cast<int>(gen() % 40);
    std::vector<double> members(m);
    for (auto& v : members) v = u(gen);
    const double obs = u(gen);

    const double direct = empirical_crps(members, obs);
    CHECK(direct == doctest::Approx(step_integration_crps(members, obs)).epsilon(1e-12));

    const std::vector<double> w(m, 1.0 / m);
    CHECK(direct == doctest::Approx(kernel_crps(members, w, obs)).epsilon(1e-12));

    std::shuffle(members.begin(), members.end(), gen);
    CHECK(empirical_crps(members, obs) == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("empirical crps continuous in the observation across a member") {
  const std::vector<double> members{1.0, 2.0, 4.0};
  const double at = empirical_crps(members, 2.0);
  CHECK(empirical_crps(members, 2.0 - 1e-9) == doctest::Approx(at).epsilon(1e-7));
  CHECK(empirical_crps(members, 2.0 + 1e-9) == doctest::Approx(at).epsilon(1e-7));
}

TEST_CASE("weighted empirical cdf reproduces unweighted scores") {
  std::mt19937_64 gen(43);
  std::uniform_real_distribution<double> u(0.0, 8.0);
  for (int rep = 0; rep < 30; ++rep) {
    const int m = 2 + static_cast<int>(gen() % 30);
    std::vector<double> members(m);
    for (auto& v : members) v = u(gen);
    const double obs = u(gen);
    WeightedEmpiricalCdf cdf(members, std::vector<double>(m, 1.0 / m));
    CHECK(cdf.crps(obs) == doctest::Approx(empirical_crps(members, obs)).epsilon(1e-12));
  }
}

TEST_CASE("weighted crps: point mass and random weights vs kernel oracle") {
  // all weight on one member
  WeightedEmpiricalCdf point({2.0, 5.0, 9.0}, {0.0, 1.0, 0.0});
  CHECK(point.crps(3.25) == doctest::Approx(std::fabs(5.0 - 3.25)).epsilon(1e-14));

  std::mt19937_64 gen(47);
  std::uniform_real_distribution<double> u(0.0, 8.0);
  for (int rep = 0; rep < 40; ++rep) {
    const int m = 2 + static_cast<int>(gen() % 20);
    std::vector<double> values(m);
    std::vector<double> weights(m);
    double sum = 0.0;
    for (int i = 0; i < m; ++i) {
      values[i] = u(gen);
      weights[i] = u(gen) + 1e-3;
      sum += weights[i];
    }
    for (auto& w : weights) w /= sum;
    const double obs = u(gen);
    WeightedEmpiricalCdf cdf(values, weights);
    CHECK(cdf.crps(obs) == doctest::Approx(kernel_crps(values, weights, obs)).epsilon(1e-12));
  }
}

TEST_CASE("weighted empirical cdf validates weights") {
  CHECK_THROWS_AS(WeightedEmpiricalCdf({1.0, 2.0}, {0.7, 0.7}), DomainError);
  CHECK_THROWS_AS(WeightedEmpiricalCdf({1.0, 2.0}, {-0.1, 1.1}), DomainError);
  CHECK_THROWS_AS(WeightedEmpiricalCdf({}, {}), DomainError);
}
