#include "cohpure/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cohpure/errors.hpp"

namespace cohpure {

namespace {

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma, const char* who) {
  if (rho.dim() != sigma.dim()) {
    std::ostringstream os;
    os << who << ": dimension mismatch " << rho.dim() << " vs " << sigma.dim();
    throw ValidationError(ValidationError::Kind::kDimension, 0.0, os.str());
  }
}

// |<a_i|b_j>|^2 for the eigenbases of two states.
Eigen::MatrixXd overlaps(const EigenSystem& a, const EigenSystem& b) {
  const ComplexMatrix g = a.vectors.adjoint() * b.vectors;
  return g.cwiseAbs2();
}

// True when rho has weight outside the support of sigma.
bool leaks_support(const DensityMatrix& rho, const EigenSystem& sigma) {
  for (std::size_t j = 0; j < sigma.values.size(); ++j) {
    if (sigma.values[j] > kSupportTolerance) continue;
    const auto b = sigma.vectors.col(static_cast<Eigen::Index>(j));
    const double weight = (b.adjoint() * rho.matrix() * b)(0, 0).real();
    if (weight > kSupportTolerance) return true;
  }
  return false;
}

// sigma^s restricted to the support of sigma.
ComplexMatrix support_power(const EigenSystem& eig, double s) {
  ComplexMatrix scaled = eig.vectors;
  for (Eigen::Index k = 0; k < scaled.cols(); ++k) {
    const double lambda = eig.values[static_cast<std::size_t>(k)];
    scaled.col(k) *= lambda > kSupportTolerance ? std::pow(lambda, s) : 0.0;
  }
  return scaled * eig.vectors.adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "fidelity");
  const auto sqrt_fn = [](double x) { return std::sqrt(x); };
  const ComplexMatrix a = mat_func(rho.eigensystem(), sqrt_fn, true);
  const ComplexMatrix b = mat_func(sigma.eigensystem(), sqrt_fn, true);
  const Eigen::MatrixXcd prod = a * b;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(prod);
  const double root = svd.singularValues().sum();
  return std::clamp(root * root, 0.0, 1.0);
}

double rel_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "rel_entropy");
  const EigenSystem& es = sigma.eigensystem();
  if (leaks_support(rho, es)) return kInfinity;
  double value = -von_neumann(rho);
  for (std::size_t j = 0; j < es.values.size(); ++j) {
    if (es.values[j] <= kSupportTolerance) continue;
    const auto b = es.vectors.col(static_cast<Eigen::Index>(j));
    const double weight = (b.adjoint() * rho.matrix() * b)(0, 0).real();
    value -= weight * std::log2(es.values[j]);
  }
  return std::max(0.0, value);
}

double renyi_divergence(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  require_same_dim(rho, sigma, "renyi_divergence");
  if (alpha == 1.0) return rel_entropy(rho, sigma);
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    std::ostringstream os;
    os << "renyi_divergence: alpha = " << alpha
       << " outside the contractive range (0,1) u (1,2]";
    throw DomainError(os.str());
  }
  const EigenSystem& er = rho.eigensystem();
  const EigenSystem& es = sigma.eigensystem();
  if (alpha > 1.0 && leaks_support(rho, es)) return kInfinity;
  const Eigen::MatrixXd w = overlaps(er, es);
  double q = 0.0;
  for (std::size_t i = 0; i < er.values.size(); ++i) {
    if (er.values[i] <= kSupportTolerance) continue;
    const double ri = std::pow(er.values[i], alpha);
    for (std::size_t j = 0; j < es.values.size(); ++j) {
      if (es.values[j] <= kSupportTolerance) continue;
      q += ri * std::pow(es.values[j], 1.0 - alpha) *
           w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  if (q <= 0.0) return kInfinity;
  return std::max(0.0, std::log2(q) / (alpha - 1.0));
}

double sandwiched_renyi(const DensityMatrix& rho, const DensityMatrix& sigma, double alpha) {
  require_same_dim(rho, sigma, "sandwiched_renyi");
  if (alpha == 1.0) return rel_entropy(rho, sigma);
  if (!(alpha >= 0.5) || std::isinf(alpha)) {
    std::ostringstream os;
    os << "sandwiched_renyi: alpha = " << alpha
       << " outside the contractive range [1/2,1) u (1,inf)";
    throw DomainError(os.str());
  }
  const EigenSystem& es = sigma.eigensystem();
  if (alpha > 1.0 && leaks_support(rho, es)) return kInfinity;
  const ComplexMatrix side = support_power(es, (1.0 - alpha) / (2.0 * alpha));
  const ComplexMatrix m = hermitize(side * rho.matrix() * side);
  const std::vector<double> mus = hermitian_eig(m).values;
  const double cutoff = 64.0 * std::numeric_limits<double>::epsilon() * std::max(mus.back(), 0.0);
  double q = 0.0;
  for (double mu : mus) {
    if (mu > cutoff) q += std::pow(mu, alpha);
  }
  if (q <= 0.0) return kInfinity;
  return std::max(0.0, std::log2(q) / (alpha - 1.0));
}

}  // namespace cohpure
