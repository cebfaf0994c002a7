#include "csgemos/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "csgemos/errors.hpp"

namespace csgemos {

namespace {

struct Simplex {
  std::vector<std::vector<double>> x;  // n+1 vertices
  std::vector<double> f;

  std::size_t dim() const { return x.size() - 1; }

  void order() {
    std::vector<std::size_t> idx(x.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    std::vector<std::vector<double>> xs(x.size());
    std::vector<double> fs(f.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      xs[i] = std::move(x[idx[i]]);
      fs[i] = f[idx[i]];
    }
    x = std::move(xs);
    f = std::move(fs);
  }
};

Simplex make_simplex(const std::function<double(std::span<const double>)>& fn,
                     const std::vector<double>& x0, double step) {
  const std::size_t n = x0.size();
  Simplex s;
  s.x.assign(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    double d = step * std::max(std::fabs(x0[i]), 1.0);
    s.x[i + 1][i] += d;
  }
  s.f.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) s.f[i] = fn(s.x[i]);
  s.order();
  return s;
}

// One reflect/expand/contract/shrink step. Returns evaluations spent.
int step(const std::function<double(std::span<const double>)>& fn, Simplex& s) {
  const std::size_t n = s.dim();
  int evals = 0;

  std::vector<double> centroid(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) centroid[j] += s.x[i][j];
  for (double& c : centroid) c /= static_cast<double>(n);

  const auto blend = [&](double t) {
    std::vector<double> p(n);
    for (std::size_t j = 0; j < n; ++j)
      p[j] = centroid[j] + t * (s.x[n][j] - centroid[j]);
    return p;
  };

  std::vector<double> xr = blend(-1.0);  // reflection
  const double fr = fn(xr);
  ++evals;

  if (fr < s.f[0]) {
    std::vector<double> xe = blend(-2.0);  // expansion
    const double fe = fn(xe);
    ++evals;
    if (fe < fr) {
      s.x[n] = std::move(xe);
      s.f[n] = fe;
    } else {
      s.x[n] = std::move(xr);
      s.f[n] = fr;
    }
  } else if (fr < s.f[n - 1]) {
    s.x[n] = std::move(xr);
    s.f[n] = fr;
  } else {
    const bool outside = fr < s.f[n];
    std::vector<double> xc = blend(outside ? -0.5 : 0.5);
    const double fc = fn(xc);
    ++evals;
    if (fc < (outside ? fr : s.f[n])) {
      s.x[n] = std::move(xc);
      s.f[n] = fc;
    } else {
      // shrink toward the best vertex
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
          s.x[i][j] = s.x[0][j] + 0.5 * (s.x[i][j] - s.x[0][j]);
        s.f[i] = fn(s.x[i]);
        ++evals;
      }
    }
  }
  s.order();
  return evals;
}

}  // namespace

SimplexResult nelder_mead(
    const std::function<double(std::span<const double>)>& objective,
    std::vector<double> x0, const SimplexOptions& options) {
  if (x0.empty()) throw ConfigError("nelder_mead: empty parameter vector");

  const std::size_t n = x0.size();
  SimplexResult best;
  best.x = x0;
  best.fmin = objective(x0);

  int iterations = 0;
  double step_size = options.initial_step;

  for (int round = 0; round <= options.restarts; ++round) {
    std::vector<double> start = best.x;
    if (round > 0) {
      // perturb the best vertex with a fixed alternating pattern
      for (std::size_t i = 0; i < n; ++i)
        start[i] += (i % 2 == 0 ? 1.0 : -1.0) * 0.5 * step_size *
                    std::max(std::fabs(start[i]), 1.0);
      step_size *= 0.5;
    }
    Simplex s = make_simplex(objective, start, step_size);

    double cycle_best = s.f[0];
    bool converged = false;
    int since_check = 0;
    while (iterations < options.max_iterations) {
      step(objective, s);
      ++iterations;
      if (++since_check >= static_cast<int>(n) + 1) {
        since_check = 0;
        if (cycle_best - s.f[0] < options.tol) {
          converged = true;
          break;
        }
        cycle_best = s.f[0];
      }
    }
    if (s.f[0] < best.fmin) {
      best.fmin = s.f[0];
      best.x = s.x[0];
    }
    best.converged = converged;
    if (iterations >= options.max_iterations) break;
  }
  best.iterations = iterations;
  return best;
}

}  // namespace csgemos
