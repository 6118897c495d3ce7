#include "cohpure/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cohpure/errors.hpp"
#include "cohpure/parallel.hpp"
#include "cohpure/purity.hpp"

namespace cohpure {

namespace {

constexpr double kInitialEps = 0.3;
constexpr double kFinalEps = 1e-6;

void require_budget(const UnitaryBudget& b, const char* who) {
  if (b.restarts < 0 || b.refine_iters < 0 || b.restarts + b.refine_iters == 0) {
    throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                          std::string(who) + ": budget must be nonnegative and not all zero");
  }
}

void require_dims(const DensityMatrix& rho, Bipartition dims, const char* who) {
  if (dims.dim_a < 1 || dims.dim_b < 1 || dims.total() != rho.dim()) {
    std::ostringstream os;
    os << who << ": dims " << dims.dim_a << "x" << dims.dim_b << " do not match dimension "
       << rho.dim();
    throw ValidationError(ValidationError::Kind::kDimension, static_cast<double>(rho.dim()), os.str());
  }
}

// NaN never wins a comparison, so an undefined objective value is never selected.
double sanitize(double v) { return std::isnan(v) ? -kInfinity : v; }

std::vector<ComplexMatrix> structured_generators(std::size_t d, const UnitaryStructure& s) {
  if (!s.product) return hermitian_generators(d);
  std::vector<ComplexMatrix> out;
  const ComplexMatrix ia = identity(s.dims.dim_a);
  const ComplexMatrix ib = identity(s.dims.dim_b);
  for (const auto& h : hermitian_generators(s.dims.dim_a)) out.push_back(kron(h, ib));
  for (const auto& h : hermitian_generators(s.dims.dim_b)) out.push_back(kron(ia, h));
  return out;
}

ComplexMatrix draw_candidate(std::size_t d, const UnitaryStructure& s, RandomStream& rng) {
  if (!s.product) return haar_unitary(d, rng);
  const ComplexMatrix ua = haar_unitary(s.dims.dim_a, rng);
  const ComplexMatrix ub = haar_unitary(s.dims.dim_b, rng);
  return kron(ua, ub);
}

// Maximizes sign * objective; reported values are multiplied back by sign.
OptResult search(const StateObjective& objective, const DensityMatrix& rho,
                 const UnitaryBudget& budget, RandomStream& rng, const UnitaryStructure& structure,
                 const std::vector<ComplexMatrix>& extra, double sign, const char* who) {
  require_budget(budget, who);
  const std::size_t d = rho.dim();
  if (structure.product && structure.dims.total() != d) {
    throw ValidationError(ValidationError::Kind::kDimension, static_cast<double>(d),
                          std::string(who) + ": product structure does not match the state");
  }
  for (const auto& u : extra) {
    if (static_cast<std::size_t>(u.rows()) != d || !is_unitary(u)) {
      throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                            std::string(who) + ": extra candidate is not a d x d unitary");
    }
  }
  auto score = [&](const ComplexMatrix& u) { return sanitize(sign * objective(rho.conjugated(u))); };

  std::vector<ComplexMatrix> candidates;
  candidates.reserve(1 + static_cast<std::size_t>(budget.restarts) + extra.size());
  candidates.push_back(identity(d));
  for (int r = 0; r < budget.restarts; ++r) candidates.push_back(draw_candidate(d, structure, rng));
  candidates.insert(candidates.end(), extra.begin(), extra.end());

  std::vector<double> values(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) { values[i] = score(candidates[i]); });

  OptResult result;
  result.restarts = budget.restarts;
  result.evals = static_cast<long>(candidates.size());
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  ComplexMatrix u = candidates[best];
  double value = values[best];
  const double start = value;

  if (budget.refine_iters > 0 && d > 1) {
    const std::vector<ComplexMatrix> gens = structured_generators(d, structure);
    double eps = kInitialEps;
    std::vector<ComplexMatrix> steps;
    auto build_steps = [&] {
      steps.clear();
      for (const auto& g : gens) {
        steps.push_back(expi_hermitian(g, eps));
        steps.push_back(expi_hermitian(g, -eps));
      }
    };
    build_steps();
    for (int sweep = 0; sweep < budget.refine_iters && eps >= kFinalEps; ++sweep) {
      bool improved = false;
      for (const auto& step : steps) {
        const ComplexMatrix trial = u * step;
        const double v = score(trial);
        ++result.evals;
        if (v > value) {
          value = v;
          u = trial;
          improved = true;
        }
      }
      if (!improved) {
        eps *= 0.5;
        if (eps >= kFinalEps) build_steps();
      }
    }
  }
  result.best_value = sign * value;
  result.best_unitary = std::move(u);
  result.improved_by_refinement = std::isfinite(value) && std::isfinite(start) ? value - start : 0.0;
  return result;
}

}  // namespace

std::vector<ComplexMatrix> hermitian_generators(std::size_t d) {
  std::vector<ComplexMatrix> out;
  const auto n = static_cast<Eigen::Index>(d);
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      ComplexMatrix s = ComplexMatrix::Zero(n, n);
      s(j, k) = s(k, j) = r;
      out.push_back(std::move(s));
      ComplexMatrix a = ComplexMatrix::Zero(n, n);
      a(j, k) = Complex(0.0, -r);
      a(k, j) = Complex(0.0, r);
      out.push_back(std::move(a));
    }
  }
  for (Eigen::Index l = 1; l < n; ++l) {
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    const double c = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (Eigen::Index j = 0; j < l; ++j) h(j, j) = c;
    h(l, l) = -static_cast<double>(l) * c;
    out.push_back(std::move(h));
  }
  return out;
}

OptResult unitary_maximize(const StateObjective& objective, const DensityMatrix& rho,
                           const UnitaryBudget& budget, RandomStream& rng,
                           const UnitaryStructure& structure, const std::vector<ComplexMatrix>& extra) {
  return search(objective, rho, budget, rng, structure, extra, 1.0, "unitary_maximize");
}

OptResult unitary_minimize(const StateObjective& objective, const DensityMatrix& rho,
                           const UnitaryBudget& budget, RandomStream& rng,
                           const UnitaryStructure& structure, const std::vector<ComplexMatrix>& extra) {
  return search(objective, rho, budget, rng, structure, extra, -1.0, "unitary_minimize");
}

double negativity(const DensityMatrix& rho, Bipartition dims) {
  require_dims(rho, dims, "negativity");
  const EigenSystem eig = hermitian_eig(hermitize(partial_transpose(rho.matrix(), 1, dims)));
  double n = 0.0;
  for (double x : eig.values) {
    if (x < 0.0) n -= x;
  }
  return n;
}

ComplexMatrix cnot() {
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
  return u;
}

CnotActivation cnot_activation(const DensityMatrix& rho_a) {
  if (rho_a.dim() != 2) {
    throw ValidationError(ValidationError::Kind::kDimension, static_cast<double>(rho_a.dim()),
                          "cnot_activation: input must be a qubit");
  }
  const std::vector<double> zero{1.0, 0.0};
  const DensityMatrix in = tensor(rho_a, diagonal(zero));
  DensityMatrix out = in.conjugated(cnot());
  const double n = negativity(out, {2, 2});
  return {std::move(out), n, c_l1(rho_a) / 2.0};
}

NegativityBound negativity_purity_bound(const DensityMatrix& rho_a) {
  const CnotActivation act = cnot_activation(rho_a);
  const double t = 1.0 - 2.0 * p_geometric(rho_a);
  NegativityBound b;
  b.lhs = act.negativity;
  b.rhs = std::sqrt(std::max(0.0, 1.0 - t * t));
  b.c_l1 = c_l1(rho_a);
  b.holds = b.lhs <= b.rhs + 1e-10;
  return b;
}

SimplexResult c_N(const DensityMatrix& rho, Bipartition dims, const Distance& distance,
                  const SimplexOptConfig& opt) {
  require_dims(rho, dims, "c_N");
  return c_distance(rho, distance, opt);
}

OptResult discord_upper(const DensityMatrix& rho, Bipartition dims, const Distance& distance,
                        const UnitaryBudget& budget, RandomStream& rng, const SimplexOptConfig& opt) {
  require_dims(rho, dims, "discord_upper");
  const StateObjective objective = [&](const DensityMatrix& s) {
    return c_distance(s, distance, opt).value;
  };
  return unitary_minimize(objective, rho, budget, rng, UnitaryStructure::product_of(dims));
}

IMaxCheck i_max_check(const DensityMatrix& rho, Bipartition dims, const UnitaryBudget& budget,
                      RandomStream& rng) {
  require_dims(rho, dims, "i_max_check");
  if (dims.dim_a != dims.dim_b) {
    throw ValidationError(ValidationError::Kind::kDimension, 0.0,
                          "i_max_check: subsystems must have equal dimension");
  }
  IMaxCheck out;
  out.search = unitary_maximize([dims](const DensityMatrix& s) { return mutual_information(s, dims); },
                                rho, budget, rng);
  out.i_max_lower = out.search.best_value;
  out.p_r = p_rel_entropy(rho);
  out.gap = out.p_r - out.i_max_lower;
  return out;
}

HierarchyReport hierarchy_report(const DensityMatrix& rho, Bipartition dims,
                                 const Distance& distance, const UnitaryBudget& budget,
                                 RandomStream& rng, const SimplexOptConfig& opt) {
  require_dims(rho, dims, "hierarchy_report");
  HierarchyReport r;
  r.distance = distance.name();
  r.purity = p_distance(rho, distance);
  const SimplexResult cn = c_N(rho, dims, distance, opt);
  r.coherence_N = cn.value;
  r.coherence_witness = cn.argmin;
  const OptResult disc = discord_upper(rho, dims, distance, budget, rng, opt);
  // Identity is a candidate of the discord search, so its value never exceeds c_N.
  r.discord_upper = std::min(disc.best_value, r.coherence_N);
  r.discord_witness = disc.best_unitary;
  r.holds = r.purity >= r.coherence_N - 1e-9 && r.coherence_N - 1e-9 >= r.discord_upper - 2e-9;
  return r;
}

MaxHierarchyReport max_hierarchy_check(const DensityMatrix& rho, Bipartition dims,
                                       const Distance& distance, const UnitaryBudget& outer,
                                       const UnitaryBudget& inner, RandomStream& rng,
                                       const SimplexOptConfig& opt) {
  require_dims(rho, dims, "max_hierarchy_check");
  MaxHierarchyReport r;
  r.distance = distance.name();
  r.purity = p_distance(rho, distance);
  const std::vector<ComplexMatrix> seeds{optimal_unitary(rho)};

  RandomStream c_rng = rng.split();
  const OptResult cmax = unitary_maximize(
      [&](const DensityMatrix& s) { return c_distance(s, distance, opt).value; }, rho, outer, c_rng,
      UnitaryStructure::global(), seeds);
  r.c_max_lower = cmax.best_value;
  r.c_max_unitary = cmax.best_unitary;

  // Each inner search restarts from the same seed, so D_max does not depend on
  // the order in which the outer search evaluates candidates.
  RandomStream d_rng = rng.split();
  const std::uint64_t inner_seed = rng.split().seed();
  const OptResult dmax = unitary_maximize(
      [&](const DensityMatrix& s) {
        RandomStream local(inner_seed);
        return discord_upper(s, dims, distance, inner, local, opt).best_value;
      },
      rho, outer, d_rng, UnitaryStructure::global(), seeds);
  r.d_max_lower = dmax.best_value;
  r.d_max_unitary = dmax.best_unitary;
  r.optimizer_gap = r.purity - r.c_max_lower;
  r.holds = r.c_max_lower <= r.purity + 1e-9 && r.d_max_lower <= r.purity + 1e-9;
  return r;
}

}  // namespace cohpure
