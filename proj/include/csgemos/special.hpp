#ifndef CSGEMOS_SPECIAL_HPP
#define CSGEMOS_SPECIAL_HPP

namespace csgemos {

// Natural log of the gamma function, Lanczos approximation (g=7, n=9).
// Relative accuracy around 1e-14 on the positive axis.
double log_gamma(double x);

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
// Series expansion for x < a + 1, Lentz continued fraction otherwise.
double reg_gamma_p(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double reg_gamma_q(double a, double x);

// log B(a, b)
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a, b), x in [0, 1].
double reg_beta(double a, double b, double x);

// Standard normal CDF / quantile (Acklam's rational approximation with
// one Halley polish step; absolute error well below 1e-12).
double normal_cdf(double x);
double normal_quantile(double p);

}  // namespace csgemos

#endif  // CSGEMOS_SPECIAL_HPP
