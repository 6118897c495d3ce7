#include "cohpure/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "cohpure/errors.hpp"

namespace cohpure {

namespace {

void require_distribution(std::span<const double> p, const char* who) {
  long double total = 0.0L;
  for (double x : p) {
    if (!std::isfinite(x) || x < -kMajorizationSlack) {
      throw ValidationError(ValidationError::Kind::kArgument, x,
                            std::string(who) + ": entries must be finite and nonnegative");
    }
    total += x;
  }
  const double deficit = static_cast<double>(total) - 1.0;
  if (std::abs(deficit) > kStateTolerance) {
    std::ostringstream os;
    os << who << ": distribution sums to " << static_cast<double>(total);
    throw ValidationError(ValidationError::Kind::kTrace, std::abs(deficit), os.str());
  }
}

std::uint64_t pow2(int m) { return std::uint64_t{1} << m; }

int search_horizon(std::size_t d) {
  int bits = 0;
  while (pow2(bits) < d) ++bits;
  return bits + 1;
}

// rho (x) 1/d2: every eigenvalue repeated d2 times, scaled by 1/d2.
std::vector<double> padded_state(const Spectrum& s, std::uint64_t d2) {
  std::vector<double> out;
  out.reserve(s.size() * d2);
  for (double x : s.values) out.insert(out.end(), d2, x / static_cast<double>(d2));
  return out;
}

// psi^(x)m (x) 1/d1: d1 entries of 1/d1, zero-padded to 2^m * d1.
std::vector<double> resource_state(int m, std::uint64_t d1) {
  std::vector<double> out(pow2(m) * d1, 0.0);
  std::fill_n(out.begin(), d1, 1.0 / static_cast<double>(d1));
  return out;
}

bool admissible(std::size_t d, int m, std::uint64_t d1, std::uint64_t d2) {
  return m >= 0 && m < 48 && d1 >= 1 && d2 >= 1 && d * d2 == pow2(m) * d1;
}

}  // namespace

bool majorizes(std::span<const double> p, std::span<const double> q,
               std::vector<PrefixCheck>* record) {
  require_distribution(p, "majorizes");
  require_distribution(q, "majorizes");
  const std::size_t n = std::max(p.size(), q.size());
  std::vector<double> a(p.begin(), p.end());
  std::vector<double> b(q.begin(), q.end());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  long double lhs = 0.0L;
  long double rhs = 0.0L;
  bool ok = true;
  for (std::size_t k = 0; k < n; ++k) {
    lhs += a[k];
    rhs += b[k];
    if (record) record->push_back({k + 1, static_cast<double>(lhs), static_cast<double>(rhs)});
    if (static_cast<double>(lhs) < static_cast<double>(rhs) - kMajorizationSlack) {
      ok = false;
      if (!record) break;
    }
  }
  return ok;
}

bool majorizes(std::span<const double> p, std::span<const double> q) {
  return majorizes(p, q, nullptr);
}

bool convertible_unital(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw ValidationError(ValidationError::Kind::kDimension, 0.0,
                          "convertible_unital: states have different dimensions");
  }
  return majorizes(rho.spectrum().values, sigma.spectrum().values);
}

int distillable_purity_1shot(const DensityMatrix& rho) {
  // Largest m with 2^m * r <= d, i.e. floor(log2(d / r)) in integer arithmetic.
  const std::size_t d = rho.dim();
  const std::size_t r = rho.spectrum().rank;
  int m = 0;
  while (pow2(m + 1) * r <= d) ++m;
  return m;
}

int purity_cost_1shot(const DensityMatrix& rho) {
  const double d = static_cast<double>(rho.dim());
  const double top = rho.spectrum().max();
  int m = std::max(0, static_cast<int>(std::ceil(std::log2(d * top))));
  // Round-off near a power of two: lambda_max / 2^(m-1) <= 1/d within slack.
  while (m > 0 && top / static_cast<double>(pow2(m - 1)) <= 1.0 / d + kMajorizationSlack) --m;
  return m;
}

namespace {

ConversionCertificate distill_oracle(const DensityMatrix& rho, int m, std::uint64_t d1,
                                     std::uint64_t d2, bool record) {
  ConversionCertificate cert{false, m, d1, d2, {}};
  if (!admissible(rho.dim(), m, d1, d2)) return cert;
  const std::vector<double> left = padded_state(rho.spectrum(), d2);
  const std::vector<double> right = resource_state(m, d1);
  cert.feasible = majorizes(left, right, record ? &cert.checked_prefix_sums : nullptr);
  return cert;
}

ConversionCertificate cost_oracle(const DensityMatrix& rho, int m, std::uint64_t d1,
                                  std::uint64_t d2, bool record) {
  ConversionCertificate cert{false, m, d1, d2, {}};
  if (!admissible(rho.dim(), m, d1, d2)) return cert;
  const double top = rho.spectrum().max();
  cert.feasible =
      top / static_cast<double>(d2) <= 1.0 / static_cast<double>(d1) + kMajorizationSlack;
  if (record) {
    const std::vector<double> target = padded_state(rho.spectrum(), d2);
    const std::vector<double> resource = resource_state(m, d1);
    majorizes(resource, target, &cert.checked_prefix_sums);
  }
  return cert;
}

}  // namespace

ConversionCertificate brute_force_distill(const DensityMatrix& rho, int m, std::uint64_t d1,
                                          std::uint64_t d2) {
  return distill_oracle(rho, m, d1, d2, true);
}

ConversionCertificate brute_force_distill(const DensityMatrix& rho, int m) {
  if (m < 0) throw DomainError("brute_force_distill: m must be >= 0");
  return brute_force_distill(rho, m, rho.dim(), pow2(m));
}

ConversionCertificate brute_force_cost(const DensityMatrix& rho, int m, std::uint64_t d1,
                                       std::uint64_t d2) {
  return cost_oracle(rho, m, d1, d2, true);
}

ConversionCertificate brute_force_cost(const DensityMatrix& rho, int m) {
  if (m < 0) throw DomainError("brute_force_cost: m must be >= 0");
  return brute_force_cost(rho, m, rho.dim(), pow2(m));
}

namespace {

template <typename Oracle>
ConversionCertificate scan(const DensityMatrix& rho, int m, std::uint64_t cap, Oracle oracle) {
  if (m < 0 || m >= 48) throw DomainError("scan: m out of range");
  const std::uint64_t d = rho.dim();
  const std::uint64_t step = pow2(m) / std::gcd(pow2(m), d);  // smallest d2 with integer d1
  ConversionCertificate last{false, m, 0, 0, {}};
  for (std::uint64_t d2 = step;; d2 += step) {
    const std::uint64_t d1 = d * d2 / pow2(m);
    if (d1 * d2 > cap) break;
    ConversionCertificate c = oracle(rho, m, d1, d2, false);
    if (c.feasible) return oracle(rho, m, d1, d2, true);
    last = std::move(c);
  }
  return last;
}

}  // namespace

ConversionCertificate scan_distill(const DensityMatrix& rho, int m, std::uint64_t product_cap) {
  return scan(rho, m, product_cap, distill_oracle);
}

ConversionCertificate scan_cost(const DensityMatrix& rho, int m, std::uint64_t product_cap) {
  return scan(rho, m, product_cap, cost_oracle);
}

int brute_force_distillable(const DensityMatrix& rho, bool exhaustive) {
  int best = 0;
  for (int m = 0; m <= search_horizon(rho.dim()); ++m) {
    const bool ok = exhaustive ? scan_distill(rho, m).feasible : brute_force_distill(rho, m).feasible;
    if (ok) best = m;
  }
  return best;
}

int brute_force_cost_min(const DensityMatrix& rho, bool exhaustive) {
  const int horizon = search_horizon(rho.dim());
  for (int m = 0; m <= horizon; ++m) {
    const bool ok = exhaustive ? scan_cost(rho, m).feasible : brute_force_cost(rho, m).feasible;
    if (ok) return m;
  }
  return horizon + 1;
}

}  // namespace cohpure
