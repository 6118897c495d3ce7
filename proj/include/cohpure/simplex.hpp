#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cohpure {

struct SimplexOptConfig {
  int restarts = 20;  // total starting points, including the caller's seeds
  int max_iters = 5000;
  double rel_tol = 1e-10;
  double initial_step = 1.0;
  double min_step = 1e-12;
  std::uint64_t seed = 0x5eedULL;
};

/// Result of a numerical minimization. `value` is attained at `argmin`, so it
/// is always an upper bound on the infimum.
struct SimplexResult {
  double value = 0.0;
  std::vector<double> argmin;
  bool converged = true;
  int iterations = 0;
  int restarts = 0;
};

/// Objective on the probability simplex. Writes df/dq_i into `grad` when it is
/// non-empty and returns f(q); may return +inf.
using SimplexObjective = std::function<double(std::span<const double> q, std::span<double> grad)>;

/// Exponentiated-gradient (entropic mirror) descent with step halving on
/// non-improvement. `seeds` are tried first, then Dirichlet(1) draws fill the
/// remaining restarts. Best value wins; ties go to the lowest start index.
SimplexResult minimize_on_simplex(const SimplexObjective& objective, std::size_t dim,
                                  const std::vector<std::vector<double>>& seeds,
                                  const SimplexOptConfig& config = {});

}  // namespace cohpure
