#pragma once

#include "cohpure/states.hpp"

namespace cohpure {

/// Eigenvalues at or below this are outside the support.
inline constexpr double kSupportTolerance = 1e-10;

// F(rho, sigma) = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, in [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// S(rho || sigma) in bits; kInfinity when supp(rho) is not inside supp(sigma).
double rel_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// Petz form (1/(alpha-1)) log2 Tr[rho^alpha sigma^(1-alpha)],
// alpha in (0,1) u (1,2]; alpha == 1 gives rel_entropy.
double renyi_divergence(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);

// Sandwiched form, alpha in [1/2,1) u (1,inf); alpha == 1 gives rel_entropy.
double sandwiched_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha);

}  // namespace cohpure
