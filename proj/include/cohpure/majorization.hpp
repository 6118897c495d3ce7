#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cohpure/states.hpp"

namespace cohpure {

inline constexpr double kMajorizationSlack = 1e-12;

struct PrefixCheck {
  std::size_t k;
  double lhs;
  double rhs;
};

/// Record of a single-shot conversion test between rho (x) 1/d2 and
/// psi^(x)m (x) 1/d1, with d * d2 == 2^m * d1.
struct ConversionCertificate {
  bool feasible = false;
  int m = 0;
  std::uint64_t d1 = 0;
  std::uint64_t d2 = 0;
  std::vector<PrefixCheck> checked_prefix_sums;
};

// p majorizes q: every descending prefix sum of p dominates that of q within
// 1e-12. Inputs must be distributions (sum 1 within 1e-9); shorter input is
// zero-padded.
bool majorizes(std::span<const double> p, std::span<const double> q);
bool majorizes(std::span<const double> p, std::span<const double> q,
               std::vector<PrefixCheck>* record);

// Unital convertibility: rho -> sigma iff the spectrum of rho majorizes that of sigma.
bool convertible_unital(const DensityMatrix& rho, const DensityMatrix& sigma);

// floor(log2(d/r)) when log2(d/r) >= 1, else 0.
int distillable_purity_1shot(const DensityMatrix& rho);

// ceil(log2(d * lambda_max)).
int purity_cost_1shot(const DensityMatrix& rho);

/// Explicit-spectrum oracle for distillation with the given ancilla dimensions
/// (defaults: d1 = d, d2 = 2^m). Returns infeasible when d * d2 != 2^m * d1.
ConversionCertificate brute_force_distill(const DensityMatrix& rho, int m);
ConversionCertificate brute_force_distill(const DensityMatrix& rho, int m, std::uint64_t d1,
                                          std::uint64_t d2);

/// Oracle for the cost direction: feasibility from lambda_max / d2 <= 1 / d1;
/// the certificate also carries the full majorization check.
ConversionCertificate brute_force_cost(const DensityMatrix& rho, int m);
ConversionCertificate brute_force_cost(const DensityMatrix& rho, int m, std::uint64_t d1,
                                       std::uint64_t d2);

/// Tries every admissible (d1, d2) pair with d1 * d2 <= product_cap and reports
/// the first feasible one (or an infeasible certificate).
ConversionCertificate scan_distill(const DensityMatrix& rho, int m,
                                   std::uint64_t product_cap = std::uint64_t{1} << 20);
ConversionCertificate scan_cost(const DensityMatrix& rho, int m,
                                std::uint64_t product_cap = std::uint64_t{1} << 20);

// max m with a feasible distill oracle / min m with a feasible cost oracle,
// searched over 0 <= m <= ceil(log2 d) + 1.
int brute_force_distillable(const DensityMatrix& rho, bool exhaustive);
int brute_force_cost_min(const DensityMatrix& rho, bool exhaustive);

}  // namespace cohpure
