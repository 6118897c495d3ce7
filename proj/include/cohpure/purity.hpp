#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohpure/coherence.hpp"
#include "cohpure/distance.hpp"
#include "cohpure/random.hpp"
#include "cohpure/states.hpp"

namespace cohpure {

// log2 d - S_alpha(rho); alpha >= 0 or kInfinity. Result clipped to [0, log2 d].
double p_alpha(const DensityMatrix& rho, double alpha);
double p_rel_entropy(const DensityMatrix& rho);

// Tr rho^2 and log2(d Tr rho^2).
double p_linear(const DensityMatrix& rho);
double p_2(const DensityMatrix& rho);

// 1 - (Tr sqrt(rho))^2 / d from the spectrum; the fidelity variant evaluates
// 1 - F(rho, 1/d) directly. Both agree within 1e-9.
double p_geometric(const DensityMatrix& rho);
double p_geometric_fidelity(const DensityMatrix& rho);

// D(rho, 1/d).
double p_distance(const DensityMatrix& rho, const Distance& distance);

/// C(rho_max) for the maximally coherent mixed state with rho's spectrum: the
/// largest value C reaches under unital operations when C is an MIO monotone.
double p_coherence_based(const DensityMatrix& rho, const CoherenceQuantifier& quantifier);

/// Mixture of k Haar unitaries with Dirichlet weights; Kraus sqrt(p_i) U_i.
Channel random_unital(std::size_t d, std::size_t k, RandomStream& rng);

inline constexpr std::array<double, 5> kReportAlphas = {0.0, 0.5, 1.0, 2.0, kInfinity};

struct PurityReport {
  std::array<double, 5> p_alpha{};  // at kReportAlphas
  double p_geometric = 0.0;
  double p_linear = 0.0;
  int distillable_1shot = 0;
  int cost_1shot = 0;
};

PurityReport purity_report(const DensityMatrix& rho);

struct PurityQuantifier {
  std::string name;
  std::function<double(const DensityMatrix&)> evaluate;
};

// "p_alpha_<a>" (a may be "inf"), "p_rel_entropy", "p_linear", "p_2",
// "p_geometric", "p_<distance name>".
PurityQuantifier purity_quantifier(std::string_view name);

struct AxiomCheck {
  std::string axiom;  // P1, P2, P3, P4, convexity
  bool passed = true;
  int trials = 0;
  double worst = 0.0;  // largest violation seen (0 when none)
  std::optional<ComplexMatrix> counterexample;
  std::string detail;
};

struct AxiomReport {
  std::string quantifier;
  std::size_t dim = 0;
  std::vector<AxiomCheck> checks;

  bool passed() const;
  const AxiomCheck* find(std::string_view axiom) const;
};

struct AxiomSuiteOptions {
  double tolerance = 1e-9;
  bool check_convexity = false;
};

/// Empirical test of P1-P4 (plus convexity when requested) on seeded states in
/// dimension d. P2 uses random_unital channels; P3 pairs d with every d2 >= 2
/// such that d * d2 <= 16.
AxiomReport axiom_suite(const PurityQuantifier& quantifier, std::size_t d, int trials,
                        RandomStream& rng, const AxiomSuiteOptions& options = {});

}  // namespace cohpure
