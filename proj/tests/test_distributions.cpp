#include <cmath>
#include <random>

#include "csgemos/distributions.hpp"
#include "csgemos/errors.hpp"
#include "doctest.h"

using namespace csgemos;

TEST_CASE("gamma pdf piecewise definition") {
  const GammaParams exp1{1.0, 1.0};
  CHECK(gamma_pdf(exp1, 0.5) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(gamma_pdf(exp1, -1.0) == 0.0);
  CHECK(gamma_pdf(GammaParams{2.0, 3.0}, -1.0) == 0.0);
  CHECK(gamma_pdf(exp1, 0.0) == 0.0);
}

TEST_CASE("gamma pdf integrates to one (quadrature oracle)") {
  const GammaParams p{2.0, 3.0};
  // Simpson integration over a generous range
  const double hi = 120.0;
  const int n = 200000;
  const double h = hi / n;
  double acc = gamma_pdf(p, 0.0) + gamma_pdf(p, hi);
  for (int i = 1; i < n; ++i) acc += gamma_pdf(p, i * h) * (i % 2 == 0 ? 2.0 : 4.0);
  acc *= h / 3.0;
  CHECK(acc == doctest::Approx(1.0).epsilon(1e-10));
  // and the pdf value at an interior point is consistent with a finite
  // difference of the cdf
  const double x = 1.0, dx = 1e-6;
  const double fd = (gamma_cdf(p, x + dx) - gamma_cdf(p, x - dx)) / (2.0 * dx);
  CHECK(gamma_pdf(p, x) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("gamma cdf exponential special case and limits") {
  const GammaParams exp1{1.0, 1.0};
  CHECK(gamma_cdf(exp1, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(gamma_cdf(exp1, 0.0) == 0.0);
  CHECK(gamma_cdf(GammaParams{2.5, 0.8}, 1e9) == doctest::Approx(1.0));
}

TEST_CASE("gamma cdf vs quadrature of the pdf") {
  const GammaParams p{2.5, 0.8};
  const double x = 2.0;
  const int n = 400000;
  const double h = x / n;
  double acc = gamma_pdf(p, 0.0) + gamma_pdf(p, x);
  for (int i = 1; i < n; ++i) acc += gamma_pdf(p, i * h) * (i % 2 == 0 ? 2.0 : 4.0);
  acc *= h / 3.0;
  CHECK(std::fabs(gamma_cdf(p, x) - acc) < 1e-10);
}

TEST_CASE("moments round trip") {
  const GammaParams a = moments_to_params(1.0, 1.0);
  CHECK(a.shape == doctest::Approx(1.0));
  CHECK(a.scale == doctest::Approx(1.0));

  const GammaParams b = moments_to_params(4.0, 2.0);
  CHECK(b.shape == doctest::Approx(4.0));
  CHECK(b.scale == doctest::Approx(1.0));

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.05, 20.0);
  for (int i = 0; i < 200; ++i) {
    const double mean = u(gen), sd = u(gen);
    const GammaParams p = moments_to_params(mean, sd);
    const Moments m = params_to_moments(p);
    CHECK(m.mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(m.sd == doctest::Approx(sd).epsilon(1e-12));
  }

  CHECK_THROWS_AS(moments_to_params(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(moments_to_params(1.0, -2.0), DomainError);
}

TEST_CASE("csg cdf definition") {
  const CsgParams p{1.0, 1.0, 0.5};
  CHECK(csg_cdf(p, -0.1) == 0.0);
  CHECK(csg_cdf(p, 0.0) == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-14));
  CHECK(csg_point_mass(p) == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-14));
  CHECK(csg_cdf(p, 1e8) == doctest::Approx(1.0));

  // right-continuous jump at zero of size G(shift)
  const CsgParams q{2.0, 1.5, 0.8};
  CHECK(csg_cdf(q, -1e-12) == 0.0);
  CHECK(csg_cdf(q, 0.0) ==
        doctest::Approx(gamma_cdf(GammaParams{2.0, 1.5}, 0.8)).epsilon(1e-14));
}

TEST_CASE("csg cdf monotone nondecreasing") {
  const CsgParams p{2.3, 0.7, 0.4};
  double prev = -1.0;
  for (double x = -1.0; x < 20.0; x += 0.05) {
    const double v = csg_cdf(p, x);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("gamma quantile inverts the cdf") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> ush(0.1, 10.0);
  std::uniform_real_distribution<double> usc(0.1, 5.0);
  std::uniform_real_distribution<double> up(1e-6, 1.0 - 1e-9);
  for (int i = 0; i < 300; ++i) {
    const GammaParams p{ush(gen), usc(gen)};
    const double prob = up(gen);
    const double x = gamma_quantile(p, prob);
    CHECK(gamma_cdf(p, x) == doctest::Approx(prob).epsilon(1e-9));
  }
  CHECK(gamma_quantile(GammaParams{1.0, 2.0}, 0.0) == 0.0);
}

TEST_CASE("csg quantile handles the point mass") {
  const CsgParams p{1.0, 1.0, 0.5};
  const double pm = csg_point_mass(p);
  CHECK(csg_quantile(p, 0.5 * pm) == 0.0);
  const double x = csg_quantile(p, 0.9);
  CHECK(x > 0.0);
  CHECK(csg_cdf(p, x) == doctest::Approx(0.9).epsilon(1e-9));
}

TEST_CASE("csg mean matches Monte Carlo") {
  const CsgParams p{2.0, 1.0, 0.5};
  std::mt19937_64 gen(17);
  std::gamma_distribution<double> gamma(p.shape, p.scale);
  double acc = 0.0;
  const int n = 2000000;
  for (int i = 0; i < n; ++i) acc += std::max(gamma(gen) - p.shift, 0.0);
  acc /= n;
  CHECK(csg_mean(p) == doctest::Approx(acc).epsilon(2e-3));
}
