#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohpure/correlations.hpp"
#include "cohpure/linalg.hpp"
#include "cohpure/simplex.hpp"

namespace cohpure {

/// Outcome of one property over all trials of a suite. A known negative is a
/// property the quantifier is expected to violate (p_linear on P1, P3, P4;
/// p_geometric on P3, P4); it counts as passing when it does fail.
struct PropertyResult {
  std::string name;
  bool holds = true;  // raw outcome: worst <= tolerance
  bool known_negative = false;
  int trials = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
  std::optional<ComplexMatrix> counterexample;

  bool passed() const { return holds != known_negative; }
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<PropertyResult> properties;

  bool passed() const;
  const PropertyResult* find(std::string_view name) const;
};

struct SuiteOptions {
  int haar_per_state = 20;             // theorem1: unitaries per spectrum
  UnitaryBudget search{2, 1};          // theorem2: unitary_maximize budget
  SimplexOptConfig search_simplex{2, 2000, 1e-10, 1.0, 1e-12, 0x5eed};  // inside that search
  SimplexOptConfig simplex{4, 5000, 1e-10, 1.0, 1e-12, 0x5eed};
  bool exhaustive_scan = true;         // majorization: scan all (d1, d2)
  std::vector<std::string> quantifiers;  // axioms: empty means the default set
};

// "theorem1", "theorem2", "axioms", "majorization", "appendixG".
const std::vector<std::string>& suite_names();

/// Runs a named suite. Trials are independent and drawn from child streams of
/// `seed`, so the report depends only on (suite, seed, trials, options).
SuiteReport run_suite(std::string_view suite, std::uint64_t seed, int trials,
                      const SuiteOptions& options = {});

// Spectrum of dimension d with exact ranks or lambda_max at powers of two
// over d, the cases where the single-shot formulas switch value.
std::vector<double> structured_spectrum(std::size_t d, RandomStream& rng);

// Haar-rotated state with the given spectrum.
DensityMatrix state_with_spectrum(std::span<const double> p, RandomStream& rng);

}  // namespace cohpure
