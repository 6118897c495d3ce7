#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cohpure/coherence.hpp"
#include "cohpure/distance.hpp"
#include "cohpure/random.hpp"
#include "cohpure/simplex.hpp"
#include "cohpure/states.hpp"

namespace cohpure {

struct UnitaryBudget {
  int restarts = 64;       // Haar candidates besides the identity
  int refine_iters = 200;  // max hill-climbing sweeps
};

/// Search space: all d x d unitaries, or U_A (x) U_B for the given split.
struct UnitaryStructure {
  bool product = false;
  Bipartition dims{};

  static UnitaryStructure global() { return {}; }
  static UnitaryStructure product_of(Bipartition d) { return {true, d}; }
};

struct OptResult {
  double best_value = 0.0;
  ComplexMatrix best_unitary;
  int restarts = 0;
  long evals = 0;
  double improved_by_refinement = 0.0;  // always >= 0
};

using StateObjective = std::function<double(const DensityMatrix&)>;

/// sup_U objective(U rho U^dagger) over {identity} u Haar draws u `extra`
/// candidates, the best one refined by hill-climbing U exp(+-i eps H_k) over an
/// orthonormal Hermitian generator basis with eps halved from 0.3 down to 1e-6.
/// The result is attained at best_unitary, hence a lower bound on the sup.
OptResult unitary_maximize(const StateObjective& objective, const DensityMatrix& rho,
                           const UnitaryBudget& budget, RandomStream& rng,
                           const UnitaryStructure& structure = UnitaryStructure::global(),
                           const std::vector<ComplexMatrix>& extra = {});

// Same search for the infimum; the result is an upper bound.
OptResult unitary_minimize(const StateObjective& objective, const DensityMatrix& rho,
                           const UnitaryBudget& budget, RandomStream& rng,
                           const UnitaryStructure& structure = UnitaryStructure::global(),
                           const std::vector<ComplexMatrix>& extra = {});

// Orthonormal (Tr H_j H_k = delta_jk) traceless Hermitian basis of size d^2 - 1.
std::vector<ComplexMatrix> hermitian_generators(std::size_t d);

// Sum of |negative eigenvalues| of the partial transpose on B.
double negativity(const DensityMatrix& rho, Bipartition dims);

ComplexMatrix cnot();  // A is the control and the most significant factor

struct CnotActivation {
  DensityMatrix out;
  double negativity = 0.0;
  double c_l1_over_2 = 0.0;
};

// rho_A (x) |0><0| through the CNOT.
CnotActivation cnot_activation(const DensityMatrix& rho_a);

struct NegativityBound {
  double lhs = 0.0;   // N(rho_out)
  double rhs = 0.0;   // sqrt(1 - (1 - 2 P_g)^2)
  double c_l1 = 0.0;  // C_l1(rho_A), for the tightness check against rhs
  bool holds = true;  // lhs <= rhs + 1e-10
};

NegativityBound negativity_purity_bound(const DensityMatrix& rho_a);

// Coherence in the product basis of the composite: c_distance on the full space.
SimplexResult c_N(const DensityMatrix& rho, Bipartition dims, const Distance& distance,
                  const SimplexOptConfig& opt = {});

/// min over {identity} u product unitaries of c_N(U rho U^dagger): an upper
/// bound on the discord, never above c_N(rho).
OptResult discord_upper(const DensityMatrix& rho, Bipartition dims, const Distance& distance,
                        const UnitaryBudget& budget, RandomStream& rng,
                        const SimplexOptConfig& opt = {});

struct IMaxCheck {
  double i_max_lower = 0.0;
  double p_r = 0.0;
  double gap = 0.0;  // p_r - i_max_lower
  OptResult search;
};

// Needs d_A == d_B.
IMaxCheck i_max_check(const DensityMatrix& rho, Bipartition dims, const UnitaryBudget& budget,
                      RandomStream& rng);

struct HierarchyReport {
  double purity = 0.0;
  double coherence_N = 0.0;
  double discord_upper = 0.0;
  std::string distance;
  std::vector<double> coherence_witness;  // incoherent sigma attaining coherence_N
  ComplexMatrix discord_witness;          // product unitary attaining discord_upper
  bool holds = true;  // purity >= coherence_N - 1e-9 >= discord_upper - 2e-9
};

HierarchyReport hierarchy_report(const DensityMatrix& rho, Bipartition dims,
                                 const Distance& distance, const UnitaryBudget& budget,
                                 RandomStream& rng, const SimplexOptConfig& opt = {});

struct MaxHierarchyReport {
  double purity = 0.0;
  double c_max_lower = 0.0;
  double d_max_lower = 0.0;
  double optimizer_gap = 0.0;  // purity - c_max_lower
  std::string distance;
  ComplexMatrix c_max_unitary;
  ComplexMatrix d_max_unitary;
  bool holds = true;  // c_max_lower <= purity + 1e-9 and d_max_lower <= purity + 1e-9
};

/// P = D(rho, 1/d) exactly, C_max and D_max as global-unitary lower bounds.
/// optimal_unitary(rho) is injected as a candidate of both outer searches;
/// `inner` budgets the product-unitary minimization inside D_max.
MaxHierarchyReport max_hierarchy_check(const DensityMatrix& rho, Bipartition dims,
                                       const Distance& distance, const UnitaryBudget& outer,
                                       const UnitaryBudget& inner, RandomStream& rng,
                                       const SimplexOptConfig& opt = {});

}  // namespace cohpure
