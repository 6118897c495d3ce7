#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "cohpure/linalg.hpp"
#include "cohpure/random.hpp"

namespace cohpure {

/// Descending eigenvalue list of a state, clipped to [0, 1] (values below
/// 64 eps * lambda_max snapped to zero) and renormalized
/// when the sum is within 1e-9 of one.
struct Spectrum {
  std::vector<double> values;
  std::size_t rank = 0;  // count of values > 1e-9 * lambda_max

  static Spectrum from_values(std::vector<double> values);

  double max() const { return values.empty() ? 0.0 : values.front(); }
  double rank_tolerance() const { return 1e-9 * max(); }
  std::size_t size() const { return values.size(); }
};

inline constexpr double kStateTolerance = 1e-9;

/// A validated quantum state: Hermitian and unit trace within 1e-9, smallest
/// eigenvalue >= -1e-10. The eigendecomposition is computed once and shared
/// between copies.
class DensityMatrix {
 public:
  std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }
  const ComplexMatrix& matrix() const { return mat_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return mat_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  const EigenSystem& eigensystem() const;
  const Spectrum& spectrum() const;

  // U rho U^dagger; U must be unitary.
  DensityMatrix conjugated(const ComplexMatrix& u) const;

  // For matrices that are states by construction (channel outputs,
  // conjugations, tensor products). Hermitizes and fixes the trace without
  // re-running validation.
  static DensityMatrix trusted(ComplexMatrix m);

  friend DensityMatrix validate(const ComplexMatrix& m);

 private:
  struct Cache {
    std::once_flag once;
    EigenSystem eig;
    Spectrum spectrum;
  };

  explicit DensityMatrix(ComplexMatrix m);
  void ensure_cache() const;

  ComplexMatrix mat_;
  std::shared_ptr<Cache> cache_;
};

// Throws ValidationError naming the violated invariant and its magnitude.
DensityMatrix validate(const ComplexMatrix& m);

DensityMatrix pure(const ComplexVector& v);
DensityMatrix pure(std::span<const Complex> v);
DensityMatrix maximally_mixed(std::size_t d);
DensityMatrix diagonal(std::span<const double> p);
DensityMatrix from_bloch(double x, double y, double z);
DensityMatrix random_density(std::size_t d, std::size_t rank, RandomStream& rng);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix reduced(const DensityMatrix& rho, int keep, Bipartition dims);

double von_neumann(const DensityMatrix& rho);
double von_neumann(std::span<const double> probabilities);

// alpha >= 0 or kInfinity; 0 -> log2 rank, 1 -> von Neumann, inf -> -log2 lambda_max.
double renyi_entropy(const DensityMatrix& rho, double alpha);
double renyi_entropy(const Spectrum& spectrum, double alpha);

double mutual_information(const DensityMatrix& rho, Bipartition dims);

}  // namespace cohpure
