#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cohpure/states.hpp"

namespace cohpure {

enum class DistanceKind { kRelEntropy, kTraceNorm, kSchatten, kOneMinusFidelity };

/// The closed menu of contractive distances used by every distance-based
/// quantifier. Schatten distances are contractive under unital channels.
struct Distance {
  DistanceKind kind = DistanceKind::kRelEntropy;
  double p = 1.0;  // Schatten exponent (kSchatten only)

  static Distance rel_entropy() { return {DistanceKind::kRelEntropy, 1.0}; }
  static Distance trace_norm() { return {DistanceKind::kTraceNorm, 1.0}; }
  static Distance schatten(double p);
  static Distance one_minus_fidelity() { return {DistanceKind::kOneMinusFidelity, 1.0}; }

  // "rel_entropy", "trace_norm", "schatten_<p>", "one_minus_fidelity".
  static Distance parse(std::string_view name);
  std::string name() const;

  friend bool operator==(const Distance&, const Distance&) = default;
};

// rel_entropy, trace_norm, schatten_2, one_minus_fidelity.
std::vector<Distance> menu_distances();

double distance_value(const DensityMatrix& rho, const DensityMatrix& sigma, const Distance& d);

}  // namespace cohpure
