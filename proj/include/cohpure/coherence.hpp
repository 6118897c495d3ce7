#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cohpure/distance.hpp"
#include "cohpure/random.hpp"
#include "cohpure/simplex.hpp"
#include "cohpure/states.hpp"

// Coherence is measured in the computational basis throughout.
namespace cohpure {

DensityMatrix dephase(const DensityMatrix& rho);

// S(Delta[rho]) - S(rho), the closed form of min over incoherent sigma of S(rho||sigma).
double c_rel_entropy(const DensityMatrix& rho);

// Sum of |rho_ij| over i != j.
double c_l1(const DensityMatrix& rho);

/// inf over incoherent sigma = diag(q) of D(rho, sigma). rel_entropy uses the
/// closed form; the other distances go through the simplex optimizer, seeded
/// with Delta[rho] and the uniform distribution. The returned value is
/// attained at `argmin` and never exceeds D(rho, 1/d).
SimplexResult c_distance(const DensityMatrix& rho, const Distance& distance,
                         const SimplexOptConfig& opt = {});

/// Renyi coherence: Petz divergence for alpha in (0,1), sandwiched for alpha > 1,
/// c_rel_entropy at alpha == 1.
SimplexResult c_alpha(const DensityMatrix& rho, double alpha, const SimplexOptConfig& opt = {});

/// 1 - max over incoherent sigma of F(rho, sigma).
SimplexResult c_geometric(const DensityMatrix& rho, const SimplexOptConfig& opt = {});

// Qubit relation C_l1 = sqrt(1 - (1 - 2 C_g)^2), in both directions.
double qubit_c_geometric_from_l1(double l1);
double qubit_c_l1_from_geometric(double cg);

/// Objective f(q) = D(rho, diag(q)) with analytic gradient, as handed to the
/// simplex optimizer. `alpha` selects the Renyi divergences when nonzero.
SimplexObjective incoherent_distance_objective(const DensityMatrix& rho, const Distance& distance);
SimplexObjective incoherent_renyi_objective(const DensityMatrix& rho, double alpha);

struct MubBasis {
  std::size_t dim = 0;
  ComplexMatrix columns;  // column n is |n_+>
};

// <i|n_+> = omega^(i n) / sqrt(d), omega = exp(2 pi i / d).
MubBasis fourier_basis(std::size_t d);

/// sum_n p_n |n_+><n_+| with p sorted descending and zero-padded to d.
DensityMatrix mcms(std::span<const double> spectrum, std::size_t d);

/// V = sum_n |n_+><psi_n| with psi_n ordered by descending eigenvalue, so that
/// V rho V^dagger = mcms(spectrum(rho)).
ComplexMatrix optimal_unitary(const DensityMatrix& rho);

/// Kraus representation of a channel; trace preserving within 1e-9.
class Channel {
 public:
  explicit Channel(std::vector<ComplexMatrix> kraus);

  std::size_t dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  double trace_residual() const;  // max-abs of sum K^dagger K - I

 private:
  std::vector<ComplexMatrix> kraus_;
  std::size_t dim_;
};

DensityMatrix apply_channel(const Channel& channel, const DensityMatrix& rho);

// K_n = U |n_+><n_+|; maps every incoherent state to 1/d.
Channel mio_channel_from_unitary(const ComplexMatrix& u);

// K_{i,n} = sqrt(q_i) U_i |n_+><n_+|.
Channel mio_channel_from_mixture(std::span<const double> weights,
                                 const std::vector<ComplexMatrix>& unitaries);

// D(rho, 1/d): the maximum of the distance-based coherence over all unitaries.
double c_max_closed(const DensityMatrix& rho, const Distance& distance);

enum class FreeChannelKind { kIncoherentUnitary, kDephasingMixture, kMioConstruction };

std::string to_string(FreeChannelKind kind);

/// Random channel inside the free sets: mixtures of permutation-times-phase
/// unitaries and dephasing mixtures are incoherent operations; the third kind
/// is the mixture MIO construction with Haar unitaries.
Channel random_free_channel(FreeChannelKind kind, std::size_t d, RandomStream& rng);

/// A named scalar coherence quantifier, used by reports and the CLI.
struct CoherenceQuantifier {
  std::string name;
  std::function<double(const DensityMatrix&)> evaluate;
  bool mio_monotone = true;
};

// "c_rel_entropy", "c_l1", "c_geometric", "c_alpha_<a>", "c_<distance name>".
CoherenceQuantifier coherence_quantifier(std::string_view name, const SimplexOptConfig& opt = {});

}  // namespace cohpure
