#include "cohpure/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "cohpure/errors.hpp"

namespace cohpure {

Spectrum Spectrum::from_values(std::vector<double> values) {
  for (double& x : values) x = std::clamp(x, 0.0, 1.0);
  std::sort(values.begin(), values.end(), std::greater<>());
  // Eigenvalues within round-off of zero are zero; sqrt(1e-17) is not negligible.
  if (!values.empty()) {
    const double snap = 64.0 * std::numeric_limits<double>::epsilon() * values.front();
    for (double& x : values) {
      if (x <= snap) x = 0.0;
    }
  }
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  if (sum > 0.0 && std::abs(sum - 1.0) <= 1e-9) {
    for (double& x : values) x /= sum;
  }
  Spectrum s;
  s.values = std::move(values);
  const double tol = s.rank_tolerance();
  s.rank = static_cast<std::size_t>(
      std::count_if(s.values.begin(), s.values.end(), [tol](double x) { return x > tol; }));
  return s;
}

DensityMatrix::DensityMatrix(ComplexMatrix m)
    : mat_(std::move(m)), cache_(std::make_shared<Cache>()) {}

void DensityMatrix::ensure_cache() const {
  std::call_once(cache_->once, [this] {
    cache_->eig = hermitian_eig(mat_);
    cache_->spectrum = Spectrum::from_values(cache_->eig.values);
  });
}

const EigenSystem& DensityMatrix::eigensystem() const {
  ensure_cache();
  return cache_->eig;
}

const Spectrum& DensityMatrix::spectrum() const {
  ensure_cache();
  return cache_->spectrum;
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) {
  ComplexMatrix h = hermitize(m);
  const double tr = h.trace().real();
  if (tr > 0.0) h /= tr;
  return DensityMatrix(std::move(h));
}

DensityMatrix DensityMatrix::conjugated(const ComplexMatrix& u) const {
  return trusted(u * mat_ * u.adjoint());
}

DensityMatrix validate(const ComplexMatrix& m) {
  using Kind = ValidationError::Kind;
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << "state matrix is " << m.rows() << "x" << m.cols() << ", expected non-empty square";
    throw ValidationError(Kind::kNotSquare, 0.0, os.str());
  }
  if (!m.allFinite()) {
    throw ValidationError(Kind::kNonFinite, 0.0, "state matrix has non-finite entries");
  }
  const double herm = max_abs(m - m.adjoint());
  if (herm > kStateTolerance) {
    std::ostringstream os;
    os << "hermiticity violated: max |rho - rho^dagger| = " << herm;
    throw ValidationError(Kind::kHermiticity, herm, os.str());
  }
  const double deficit = m.trace().real() - 1.0;
  if (std::abs(deficit) > kStateTolerance) {
    std::ostringstream os;
    os << "trace violated: Tr(rho) - 1 = " << deficit;
    throw ValidationError(Kind::kTrace, std::abs(deficit), os.str());
  }
  DensityMatrix rho(hermitize(m));
  const double lowest = rho.eigensystem().values.front();
  if (lowest < -kPsdTolerance) {
    std::ostringstream os;
    os << "positivity violated: smallest eigenvalue " << lowest;
    throw ValidationError(Kind::kPositivity, lowest, os.str());
  }
  return rho;
}

DensityMatrix pure(const ComplexVector& v) {
  const double norm = v.norm();
  if (v.size() == 0 || norm == 0.0 || !std::isfinite(norm)) {
    throw ValidationError(ValidationError::Kind::kArgument, norm,
                          "pure: state vector must be nonzero and finite");
  }
  const ComplexVector u = v / norm;
  return DensityMatrix::trusted(u * u.adjoint());
}

DensityMatrix pure(std::span<const Complex> v) {
  ComplexVector vec(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) vec(static_cast<Eigen::Index>(i)) = v[i];
  return pure(vec);
}

DensityMatrix maximally_mixed(std::size_t d) {
  if (d == 0) {
    throw ValidationError(ValidationError::Kind::kArgument, 0.0, "maximally_mixed: d must be >= 1");
  }
  return DensityMatrix::trusted(identity(d) / static_cast<double>(d));
}

DensityMatrix diagonal(std::span<const double> p) {
  if (p.empty()) {
    throw ValidationError(ValidationError::Kind::kArgument, 0.0, "diagonal: empty distribution");
  }
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw ValidationError(ValidationError::Kind::kArgument, x,
                            "diagonal: probabilities must be finite and nonnegative");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kStateTolerance) {
    std::ostringstream os;
    os << "diagonal: probabilities sum to " << sum;
    throw ValidationError(ValidationError::Kind::kTrace, std::abs(sum - 1.0), os.str());
  }
  const auto n = static_cast<Eigen::Index>(p.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = p[static_cast<std::size_t>(i)];
  return DensityMatrix::trusted(std::move(m));
}

DensityMatrix from_bloch(double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  if (!(r <= 1.0 + 1e-9)) {
    std::ostringstream os;
    os << "from_bloch: |r| = " << r << " exceeds 1";
    throw ValidationError(ValidationError::Kind::kArgument, r, os.str());
  }
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + z);
  m(1, 1) = 0.5 * (1.0 - z);
  m(0, 1) = Complex(0.5 * x, -0.5 * y);
  m(1, 0) = Complex(0.5 * x, 0.5 * y);
  return DensityMatrix::trusted(std::move(m));
}

DensityMatrix random_density(std::size_t d, std::size_t rank, RandomStream& rng) {
  if (rank < 1 || rank > d) {
    std::ostringstream os;
    os << "random_density: rank " << rank << " outside [1, " << d << "]";
    throw ValidationError(ValidationError::Kind::kArgument, static_cast<double>(rank), os.str());
  }
  std::vector<double> w;
  // Resample the rare draws whose smallest weight would sit near the rank cutoff.
  do {
    w = dirichlet_uniform(rank, rng);
  } while (*std::min_element(w.begin(), w.end()) < 1e-6 * *std::max_element(w.begin(), w.end()));
  const ComplexMatrix u = haar_unitary(d, rng);
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < rank; ++k) {
    const auto col = u.col(static_cast<Eigen::Index>(k));
    m += w[k] * (col * col.adjoint());
  }
  return DensityMatrix::trusted(std::move(m));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(kron(a.matrix(), b.matrix()));
}

DensityMatrix reduced(const DensityMatrix& rho, int keep, Bipartition dims) {
  return DensityMatrix::trusted(partial_trace(rho.matrix(), keep, dims));
}

double von_neumann(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) s -= xlog2x(p);
  return std::max(0.0, s);
}

double von_neumann(const DensityMatrix& rho) { return von_neumann(rho.spectrum().values); }

double renyi_entropy(const Spectrum& spectrum, double alpha) {
  if (!(alpha >= 0.0)) {
    std::ostringstream os;
    os << "renyi_entropy: alpha = " << alpha << " must be >= 0";
    throw DomainError(os.str());
  }
  if (alpha == 0.0) return std::log2(static_cast<double>(spectrum.rank));
  if (alpha == 1.0) return von_neumann(spectrum.values);
  if (std::isinf(alpha)) return -std::log2(spectrum.max());
  // Below alpha = 1 round-off eigenvalues would be amplified by x^alpha; sum
  // over the numerical support only.
  const double cutoff = alpha < 1.0 ? spectrum.rank_tolerance() : 0.0;
  double acc = 0.0;
  for (double x : spectrum.values) {
    if (x > cutoff) acc += std::pow(x, alpha);
  }
  return std::max(0.0, std::log2(acc) / (1.0 - alpha));
}

double renyi_entropy(const DensityMatrix& rho, double alpha) {
  return renyi_entropy(rho.spectrum(), alpha);
}

double mutual_information(const DensityMatrix& rho, Bipartition dims) {
  const double sa = von_neumann(reduced(rho, 0, dims));
  const double sb = von_neumann(reduced(rho, 1, dims));
  return sa + sb - von_neumann(rho);
}

}  // namespace cohpure
