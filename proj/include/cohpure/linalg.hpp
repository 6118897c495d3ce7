#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cohpure {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;

/// Sentinel for divergences that legitimately take the value +infinity.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Eigenvalues in [-kPsdTolerance, 0) are treated as round-off and clipped.
inline constexpr double kPsdTolerance = 1e-10;

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are orthonormal eigenvectors
};

struct JacobiOptions {
  double tol = 1e-12;
  int max_sweeps = 100;
};

// Cyclic Jacobi with 2x2 unitary rotations. Input must be Hermitian within
// 1e-9 (max-abs). Eigenvalues ascending, ties kept in rotation order; each
// eigenvector's first component with modulus > 1e-8 is made real >= 0.
EigenSystem hermitian_eig(const ComplexMatrix& m, const JacobiOptions& opts = {});

double max_abs(const ComplexMatrix& m);
double hermiticity_defect(const ComplexMatrix& m);
ComplexMatrix hermitize(const ComplexMatrix& m);
ComplexMatrix identity(std::size_t d);
bool is_unitary(const ComplexMatrix& u, double tol = 1e-9);

// Applies f to the spectrum of a Hermitian matrix: V diag(f(lambda)) V^dagger.
// With clip_negative, eigenvalues in [-1e-10, 0) become 0, anything more
// negative raises DomainError, and eigenvalues within round-off of zero are
// snapped to zero. Components whose f-value is not finite (log 0, 0^-x) are
// dropped, i.e. the function acts on the support.
ComplexMatrix mat_func(const ComplexMatrix& m, const std::function<double(double)>& f,
                       bool clip_negative);
ComplexMatrix mat_func(const EigenSystem& eig, const std::function<double(double)>& f,
                       bool clip_negative);

ComplexMatrix mat_sqrt(const ComplexMatrix& m);
ComplexMatrix mat_pow(const ComplexMatrix& m, double exponent);
ComplexMatrix mat_log2(const ComplexMatrix& m);

// exp(i * t * H) for Hermitian H.
ComplexMatrix expi_hermitian(const ComplexMatrix& h, double t);

// p >= 1, or kInfinity for the operator norm.
double schatten_norm(const ComplexMatrix& m, double p);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct Bipartition {
  std::size_t dim_a;
  std::size_t dim_b;
  std::size_t total() const { return dim_a * dim_b; }
};

// Subsystem 0 is A (most significant tensor factor), 1 is B.
ComplexMatrix partial_trace(const ComplexMatrix& rho, int keep, Bipartition dims);
ComplexMatrix partial_transpose(const ComplexMatrix& rho, int sub, Bipartition dims);

// x log2 x with 0 log 0 = 0.
double xlog2x(double x);

}  // namespace cohpure
