#ifndef CSGEMOS_OPTIMIZE_HPP
#define CSGEMOS_OPTIMIZE_HPP

#include <functional>
#include <span>
#include <vector>

namespace csgemos {

struct SimplexOptions {
  double tol = 1e-9;        // best-value improvement per simplex cycle
  int max_iterations = 2000;
  double initial_step = 0.25;
  int restarts = 1;  // restarts from a perturbed best vertex after convergence
};

struct SimplexResult {
  std::vector<double> x;
  double fmin = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Derivative-free Nelder-Mead simplex descent. The returned minimum never
// exceeds f(x0). Deterministic: restart perturbations use a fixed pattern,
// no RNG involved.
SimplexResult nelder_mead(
    const std::function<double(std::span<const double>)>& objective,
    std::vector<double> x0, const SimplexOptions& options = {});

}  // namespace csgemos

#endif  // CSGEMOS_OPTIMIZE_HPP
