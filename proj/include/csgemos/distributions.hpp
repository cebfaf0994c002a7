#ifndef CSGEMOS_DISTRIBUTIONS_HPP
#define CSGEMOS_DISTRIBUTIONS_HPP

namespace csgemos {

// Gamma distribution with shape kappa and scale theta.
struct GammaParams {
  double shape;  // kappa > 0
  double scale;  // theta > 0
};

// Shifted gamma, left-censored at zero: CDF(x) = G_{kappa,theta}(x + shift)
// for x >= 0, 0 for x < 0. The point mass at zero is G_{kappa,theta}(shift).
struct CsgParams {
  double shape;  // kappa > 0
  double scale;  // theta > 0
  double shift;  // delta > 0
};

struct Moments {
  double mean;
  double sd;
};

bool valid(const GammaParams& p);
bool valid(const CsgParams& p);

double gamma_pdf(const GammaParams& p, double x);
double gamma_cdf(const GammaParams& p, double x);

// Inverse gamma CDF. prob in [0, 1); prob = 0 maps to 0.
double gamma_quantile(const GammaParams& p, double prob);

// kappa = mu^2/sigma^2, theta = sigma^2/mu. Throws DomainError unless
// mu > 0 and sigma > 0.
GammaParams moments_to_params(double mean, double sd);
Moments params_to_moments(const GammaParams& p);

double csg_cdf(const CsgParams& p, double x);

// P(X = 0) of the censored distribution.
double csg_point_mass(const CsgParams& p);

// Inverse CDF of the censored shifted gamma: 0 for prob <= point mass.
double csg_quantile(const CsgParams& p, double prob);

// Mean of the censored variable max(Z - delta, 0), Z ~ Gamma(shape, scale).
double csg_mean(const CsgParams& p);

}  // namespace csgemos

#endif  // CSGEMOS_DISTRIBUTIONS_HPP
