#include "csgemos/distributions.hpp"

#include <cmath>
#include <limits>

#include "csgemos/errors.hpp"
#include "csgemos/special.hpp"

namespace csgemos {

bool valid(const GammaParams& p) {
  return p.shape > 0.0 && p.scale > 0.0 && std::isfinite(p.shape) &&
         std::isfinite(p.scale);
}

bool valid(const CsgParams& p) {
  return p.shape > 0.0 && p.scale > 0.0 && p.shift > 0.0 &&
         std::isfinite(p.shape) && std::isfinite(p.scale) &&
         std::isfinite(p.shift);
}

double gamma_pdf(const GammaParams& p, double x) {
  if (!valid(p)) throw DomainError("gamma_pdf: invalid parameters");
  if (x <= 0.0) return 0.0;
  return std::exp((p.shape - 1.0) * std::log(x) - x / p.scale -
                  p.shape * std::log(p.scale) - log_gamma(p.shape));
}

double gamma_cdf(const GammaParams& p, double x) {
  if (!valid(p)) throw DomainError("gamma_cdf: invalid parameters");
  if (x <= 0.0) return 0.0;
  return reg_gamma_p(p.shape, x / p.scale);
}

double gamma_quantile(const GammaParams& p, double prob) {
  if (!valid(p)) throw DomainError("gamma_quantile: invalid parameters");
  if (!(prob >= 0.0) || !(prob < 1.0))
    throw DomainError("gamma_quantile: require prob in [0, 1)");
  if (prob == 0.0) return 0.0;

  const double k = p.shape;
  // Wilson-Hilferty starting point, decent for k >~ 0.3
  double x;
  {
    const double z = normal_quantile(prob);
    const double t = 1.0 - 1.0 / (9.0 * k) + z / (3.0 * std::sqrt(k));
    x = k * t * t * t;
    if (k < 0.3 || !(x > 0.0)) {
      // small-shape start from P(k, x) ~ x^k / Gamma(k+1)
      x = std::exp((std::log(prob) + log_gamma(k + 1.0)) / k);
    }
    if (!(x > 0.0) || !std::isfinite(x)) x = k;
  }

  // bracket the root in standardized units (scale 1)
  double lo = 0.0;
  double hi = std::max(x * 2.0, k + 10.0 * std::sqrt(k) + 10.0);
  for (int i = 0; i < 200 && reg_gamma_p(k, hi) < prob; ++i) hi *= 2.0;

  // safeguarded Newton on P(k, x) - prob
  for (int it = 0; it < 100; ++it) {
    const double f = reg_gamma_p(k, x) - prob;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    const double dens =
        std::exp((k - 1.0) * std::log(x) - x - log_gamma(k));
    double step_x;
    if (dens > 0.0 && std::isfinite(dens)) {
      step_x = x - f / dens;
    } else {
      step_x = 0.5 * (lo + hi);
    }
    if (!(step_x > lo) || !(step_x < hi)) step_x = 0.5 * (lo + hi);
    const double dx = std::fabs(step_x - x);
    x = step_x;
    if (dx <= 1e-14 * (1.0 + x)) break;
  }
  return x * p.scale;
}

GammaParams moments_to_params(double mean, double sd) {
  if (!(mean > 0.0) || !(sd > 0.0) || !std::isfinite(mean) || !std::isfinite(sd))
    throw DomainError("moments_to_params: require mean > 0 and sd > 0");
  return GammaParams{mean * mean / (sd * sd), sd * sd / mean};
}

Moments params_to_moments(const GammaParams& p) {
  if (!valid(p)) throw DomainError("params_to_moments: invalid parameters");
  return Moments{p.shape * p.scale, std::sqrt(p.shape) * p.scale};
}

double csg_cdf(const CsgParams& p, double x) {
  if (!valid(p)) throw DomainError("csg_cdf: invalid parameters");
  if (x < 0.0) return 0.0;
  return reg_gamma_p(p.shape, (x + p.shift) / p.scale);
}

double csg_point_mass(const CsgParams& p) { return csg_cdf(p, 0.0); }

double csg_quantile(const CsgParams& p, double prob) {
  if (!valid(p)) throw DomainError("csg_quantile: invalid parameters");
  if (!(prob >= 0.0) || !(prob < 1.0))
    throw DomainError("csg_quantile: require prob in [0, 1)");
  if (prob <= csg_point_mass(p)) return 0.0;
  return gamma_quantile(GammaParams{p.shape, p.scale}, prob) - p.shift;
}

double csg_mean(const CsgParams& p) {
  if (!valid(p)) throw DomainError("csg_mean: invalid parameters");
  const double k = p.shape, th = p.scale, d = p.shift;
  const double f_k1 = reg_gamma_p(k + 1.0, d / th);
  const double f_k = reg_gamma_p(k, d / th);
  return k * th * (1.0 - f_k1) - d * (1.0 - f_k);
}

}  // namespace csgemos
