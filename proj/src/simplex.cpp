#include "cohpure/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cohpure/errors.hpp"
#include "cohpure/random.hpp"

namespace cohpure {

namespace {

struct Descent {
  double value;
  std::vector<double> q;
  bool converged;
  int iterations;
};

Descent descend(const SimplexObjective& objective, std::vector<double> q,
                const SimplexOptConfig& cfg) {
  const std::size_t n = q.size();
  std::vector<double> grad(n), trial(n), trial_grad(n);
  double f = objective(q, grad);
  if (!std::isfinite(f)) return {f, std::move(q), true, 0};

  double step = cfg.initial_step;
  int iters = 0;
  bool converged = false;
  while (iters < cfg.max_iters) {
    ++iters;
    double gmin = std::numeric_limits<double>::infinity();
    double gmax = -gmin;
    for (std::size_t i = 0; i < n; ++i) {
      if (q[i] > 0.0 && std::isfinite(grad[i])) {
        gmin = std::min(gmin, grad[i]);
        gmax = std::max(gmax, grad[i]);
      }
    }
    const double spread = gmax - gmin;
    if (!(spread > 0.0) || !std::isfinite(spread)) {
      converged = true;
      break;
    }
    const double scale = step / spread;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double g = std::isfinite(grad[i]) ? grad[i] : gmax;
      trial[i] = q[i] * std::exp(-scale * (g - gmin));
      total += trial[i];
    }
    for (double& x : trial) x /= total;

    const double ft = objective(trial, trial_grad);
    if (ft < f) {
      const double improvement = f - ft;
      q.swap(trial);
      grad.swap(trial_grad);
      f = ft;
      if (improvement <= cfg.rel_tol * std::max(std::abs(f), 1e-300)) {
        converged = true;
        break;
      }
      step = std::min(2.0 * step, 64.0);
    } else {
      step *= 0.5;
      if (step < cfg.min_step) {
        converged = true;
        break;
      }
    }
  }
  return {f, std::move(q), converged, iters};
}

}  // namespace

SimplexResult minimize_on_simplex(const SimplexObjective& objective, std::size_t dim,
                                  const std::vector<std::vector<double>>& seeds,
                                  const SimplexOptConfig& config) {
  if (dim == 0) throw DomainError("minimize_on_simplex: dimension must be >= 1");
  std::vector<std::vector<double>> starts;
  for (const auto& s : seeds) {
    if (s.size() != dim) throw DomainError("minimize_on_simplex: seed has wrong dimension");
    starts.push_back(s);
  }
  RandomStream rng(config.seed);
  while (static_cast<int>(starts.size()) < std::max(config.restarts, 1)) {
    starts.push_back(dirichlet_uniform(dim, rng));
  }

  SimplexResult best;
  best.value = std::numeric_limits<double>::infinity();
  bool have = false;
  for (const auto& start : starts) {
    Descent run = descend(objective, start, config);
    best.iterations += run.iterations;
    ++best.restarts;
    if (!have || run.value < best.value) {
      have = true;
      best.value = run.value;
      best.argmin = std::move(run.q);
      best.converged = run.converged;
    }
  }
  return best;
}

}  // namespace cohpure
