#include "cohpure/distance.hpp"

#include <cmath>
#include <sstream>

#include "cohpure/divergences.hpp"
#include "cohpure/errors.hpp"

namespace cohpure {

Distance Distance::schatten(double p) {
  if (!(p >= 1.0)) {
    std::ostringstream os;
    os << "schatten distance needs p >= 1, got " << p;
    throw DomainError(os.str());
  }
  if (p == 1.0) return trace_norm();
  return {DistanceKind::kSchatten, p};
}

Distance Distance::parse(std::string_view name) {
  if (name == "rel_entropy") return rel_entropy();
  if (name == "trace_norm") return trace_norm();
  if (name == "one_minus_fidelity") return one_minus_fidelity();
  constexpr std::string_view prefix = "schatten_";
  if (name.substr(0, prefix.size()) == prefix) {
    const std::string rest(name.substr(prefix.size()));
    if (rest == "inf") return {DistanceKind::kSchatten, kInfinity};
    try {
      std::size_t used = 0;
      const double p = std::stod(rest, &used);
      if (used == rest.size()) return schatten(p);
    } catch (const std::logic_error&) {
    }
  }
  throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                        "unknown distance '" + std::string(name) +
                            "' (expected rel_entropy, trace_norm, schatten_<p>, one_minus_fidelity)");
}

std::string Distance::name() const {
  switch (kind) {
    case DistanceKind::kRelEntropy: return "rel_entropy";
    case DistanceKind::kTraceNorm: return "trace_norm";
    case DistanceKind::kOneMinusFidelity: return "one_minus_fidelity";
    case DistanceKind::kSchatten: {
      if (std::isinf(p)) return "schatten_inf";
      std::ostringstream os;
      os << "schatten_" << p;
      return os.str();
    }
  }
  return "unknown";
}

std::vector<Distance> menu_distances() {
  return {Distance::rel_entropy(), Distance::trace_norm(), Distance::schatten(2.0),
          Distance::one_minus_fidelity()};
}

double distance_value(const DensityMatrix& rho, const DensityMatrix& sigma, const Distance& d) {
  if (rho.dim() != sigma.dim()) {
    throw ValidationError(ValidationError::Kind::kDimension, 0.0,
                          "distance_value: dimension mismatch");
  }
  switch (d.kind) {
    case DistanceKind::kRelEntropy: return rel_entropy(rho, sigma);
    case DistanceKind::kTraceNorm: return schatten_norm(hermitize(rho.matrix() - sigma.matrix()), 1.0);
    case DistanceKind::kSchatten: return schatten_norm(hermitize(rho.matrix() - sigma.matrix()), d.p);
    case DistanceKind::kOneMinusFidelity: return 1.0 - fidelity(rho, sigma);
  }
  return 0.0;
}

}  // namespace cohpure
