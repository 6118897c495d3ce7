#include "cohpure/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "cohpure/divergences.hpp"
#include "cohpure/errors.hpp"

namespace cohpure {

namespace {

constexpr double kLn2 = std::numbers::ln2;

std::vector<double> diagonal_of(const DensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::max(0.0, rho(i, i).real());
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

std::vector<double> uniform_distribution(std::size_t d) {
  return std::vector<double>(d, 1.0 / static_cast<double>(d));
}

double snap_cutoff(std::span<const double> values) {
  double top = 0.0;
  for (double x : values) top = std::max(top, std::abs(x));
  return 64.0 * std::numeric_limits<double>::epsilon() * top;
}

SimplexObjective schatten_objective(const DensityMatrix& rho, double p) {
  const ComplexMatrix base = rho.matrix();
  return [base, p](std::span<const double> q, std::span<double> grad) {
    ComplexMatrix a = base;
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, i) -= q[static_cast<std::size_t>(i)];
    const EigenSystem eig = hermitian_eig(a);
    const auto& v = eig.vectors;
    const std::size_t n = eig.values.size();
    double f = 0.0;
    std::vector<double> weight(n, 0.0);  // df/da_k
    if (std::isinf(p)) {
      std::size_t top = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(eig.values[k]) > std::abs(eig.values[top])) top = k;
      }
      f = std::abs(eig.values[top]);
      weight[top] = eig.values[top] >= 0.0 ? 1.0 : -1.0;
    } else if (p == 1.0) {
      for (std::size_t k = 0; k < n; ++k) {
        f += std::abs(eig.values[k]);
        weight[k] = eig.values[k] > 0.0 ? 1.0 : (eig.values[k] < 0.0 ? -1.0 : 0.0);
      }
    } else {
      double acc = 0.0;
      for (double a_k : eig.values) acc += std::pow(std::abs(a_k), p);
      f = std::pow(acc, 1.0 / p);
      if (f > 0.0) {
        for (std::size_t k = 0; k < n; ++k) {
          const double a_k = eig.values[k];
          const double sgn = a_k > 0.0 ? 1.0 : (a_k < 0.0 ? -1.0 : 0.0);
          weight[k] = sgn * std::pow(std::abs(a_k) / f, p - 1.0);
        }
      }
    }
    if (!grad.empty()) {
      for (std::size_t i = 0; i < n; ++i) {
        double g = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          g -= weight[k] * std::norm(v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
        }
        grad[i] = g;
      }
    }
    return f;
  };
}

// Uses Tr sqrt(sqrt(sigma) rho sqrt(sigma)) with sigma = diag(q), whose
// derivative in q_i is (N^{1/2})_ii / (2 q_i) for N = sqrt(sigma) rho sqrt(sigma).
SimplexObjective fidelity_objective(const DensityMatrix& rho) {
  const ComplexMatrix base = rho.matrix();
  return [base](std::span<const double> q, std::span<double> grad) {
    const auto n = base.rows();
    ComplexMatrix m(n, n);
    std::vector<double> root_q(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) root_q[static_cast<std::size_t>(i)] = std::sqrt(q[static_cast<std::size_t>(i)]);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        m(i, j) = root_q[static_cast<std::size_t>(i)] * root_q[static_cast<std::size_t>(j)] * base(i, j);
    const EigenSystem eig = hermitian_eig(hermitize(m));
    const double cut = snap_cutoff(eig.values);
    std::vector<double> roots(eig.values.size());
    double g = 0.0;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      roots[k] = eig.values[k] > cut ? std::sqrt(eig.values[k]) : 0.0;
      g += roots[k];
    }
    if (!grad.empty()) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double qi = q[static_cast<std::size_t>(i)];
        if (qi <= 0.0) {
          grad[static_cast<std::size_t>(i)] = 0.0;
          continue;
        }
        double diag = 0.0;
        for (std::size_t k = 0; k < roots.size(); ++k) {
          diag += roots[k] * std::norm(eig.vectors(i, static_cast<Eigen::Index>(k)));
        }
        grad[static_cast<std::size_t>(i)] = -2.0 * g * diag / (2.0 * qi);
      }
    }
    return 1.0 - g * g;
  };
}

SimplexObjective rel_entropy_objective(const DensityMatrix& rho) {
  const std::vector<double> p = diagonal_of(rho);
  const double entropy = von_neumann(rho);
  return [p, entropy](std::span<const double> q, std::span<double> grad) {
    double f = -entropy;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= kSupportTolerance) {
        if (!grad.empty()) grad[i] = 0.0;
        continue;
      }
      if (q[i] <= 0.0) return kInfinity;
      f -= p[i] * std::log2(q[i]);
      if (!grad.empty()) grad[i] = -p[i] / (q[i] * kLn2);
    }
    return f;
  };
}

SimplexObjective petz_objective(const DensityMatrix& rho, double alpha) {
  const ComplexMatrix powered =
      mat_func(rho.eigensystem(), [alpha](double x) { return std::pow(x, alpha); }, true);
  std::vector<double> a(rho.dim());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = std::max(0.0, powered(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real());
  }
  return [a, alpha](std::span<const double> q, std::span<double> grad) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (q[i] > 0.0) total += std::pow(q[i], 1.0 - alpha) * a[i];
    }
    if (total <= 0.0) return kInfinity;
    if (!grad.empty()) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        grad[i] = q[i] > 0.0 ? -std::pow(q[i], -alpha) * a[i] / (total * kLn2) : 0.0;
      }
    }
    return std::log2(total) / (alpha - 1.0);
  };
}

SimplexObjective sandwiched_objective(const DensityMatrix& rho, double alpha) {
  const ComplexMatrix base = rho.matrix();
  const double s = (1.0 - alpha) / (2.0 * alpha);
  return [base, alpha, s](std::span<const double> q, std::span<double> grad) {
    const auto n = base.rows();
    std::vector<double> side(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      const double qi = q[static_cast<std::size_t>(i)];
      if (qi <= kSupportTolerance) {
        if (base(i, i).real() > kSupportTolerance) return kInfinity;
        side[static_cast<std::size_t>(i)] = 0.0;
      } else {
        side[static_cast<std::size_t>(i)] = std::pow(qi, s);
      }
    }
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        m(i, j) = side[static_cast<std::size_t>(i)] * side[static_cast<std::size_t>(j)] * base(i, j);
    const EigenSystem eig = hermitian_eig(hermitize(m));
    const double cut = snap_cutoff(eig.values);
    std::vector<double> powered(eig.values.size());
    double total = 0.0;
    for (std::size_t k = 0; k < powered.size(); ++k) {
      powered[k] = eig.values[k] > cut ? std::pow(eig.values[k], alpha) : 0.0;
      total += powered[k];
    }
    if (total <= 0.0) return kInfinity;
    if (!grad.empty()) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double qi = q[static_cast<std::size_t>(i)];
        if (qi <= kSupportTolerance) {
          grad[static_cast<std::size_t>(i)] = 0.0;
          continue;
        }
        double diag = 0.0;
        for (std::size_t k = 0; k < powered.size(); ++k) {
          diag += powered[k] * std::norm(eig.vectors(i, static_cast<Eigen::Index>(k)));
        }
        grad[static_cast<std::size_t>(i)] = -diag / (qi * total * kLn2);
      }
    }
    return std::log2(total) / (alpha - 1.0);
  };
}

std::vector<std::vector<double>> default_seeds(const DensityMatrix& rho) {
  return {diagonal_of(rho), uniform_distribution(rho.dim())};
}

}  // namespace

DensityMatrix dephase(const DensityMatrix& rho) {
  const auto n = static_cast<Eigen::Index>(rho.dim());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = rho.matrix()(i, i).real();
  return DensityMatrix::trusted(std::move(m));
}

double c_rel_entropy(const DensityMatrix& rho) {
  return std::max(0.0, von_neumann(diagonal_of(rho)) - von_neumann(rho));
}

double c_l1(const DensityMatrix& rho) {
  double total = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j)
      if (i != j) total += std::abs(rho(i, j));
  return total;
}

SimplexObjective incoherent_distance_objective(const DensityMatrix& rho, const Distance& distance) {
  switch (distance.kind) {
    case DistanceKind::kRelEntropy: return rel_entropy_objective(rho);
    case DistanceKind::kTraceNorm: return schatten_objective(rho, 1.0);
    case DistanceKind::kSchatten: return schatten_objective(rho, distance.p);
    case DistanceKind::kOneMinusFidelity: return fidelity_objective(rho);
  }
  throw DomainError("incoherent_distance_objective: unknown distance");
}

SimplexObjective incoherent_renyi_objective(const DensityMatrix& rho, double alpha) {
  if (alpha > 0.0 && alpha < 1.0) return petz_objective(rho, alpha);
  if (alpha > 1.0 && std::isfinite(alpha)) return sandwiched_objective(rho, alpha);
  if (alpha == 1.0) return rel_entropy_objective(rho);
  std::ostringstream os;
  os << "c_alpha: alpha = " << alpha << " outside (0,1) u (1,inf)";
  throw DomainError(os.str());
}

SimplexResult c_distance(const DensityMatrix& rho, const Distance& distance,
                         const SimplexOptConfig& opt) {
  if (distance.kind == DistanceKind::kRelEntropy) {
    SimplexResult r;
    r.value = c_rel_entropy(rho);
    r.argmin = diagonal_of(rho);
    return r;
  }
  SimplexResult r = minimize_on_simplex(incoherent_distance_objective(rho, distance), rho.dim(),
                                        default_seeds(rho), opt);
  r.value = std::max(0.0, r.value);
  return r;
}

SimplexResult c_alpha(const DensityMatrix& rho, double alpha, const SimplexOptConfig& opt) {
  if (alpha == 1.0) return c_distance(rho, Distance::rel_entropy(), opt);
  SimplexResult r = minimize_on_simplex(incoherent_renyi_objective(rho, alpha), rho.dim(),
                                        default_seeds(rho), opt);
  r.value = std::max(0.0, r.value);
  return r;
}

SimplexResult c_geometric(const DensityMatrix& rho, const SimplexOptConfig& opt) {
  return c_distance(rho, Distance::one_minus_fidelity(), opt);
}

double qubit_c_geometric_from_l1(double l1) {
  return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - l1 * l1)));
}

double qubit_c_l1_from_geometric(double cg) {
  const double t = 1.0 - 2.0 * cg;
  return std::sqrt(std::max(0.0, 1.0 - t * t));
}

MubBasis fourier_basis(std::size_t d) {
  if (d == 0) throw DomainError("fourier_basis: d must be >= 1");
  const auto n = static_cast<Eigen::Index>(d);
  MubBasis basis{d, ComplexMatrix(n, n)};
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      // Reduce the exponent mod d first to keep the angle small.
      const auto e = static_cast<double>((i * k) % n);
      basis.columns(i, k) = std::polar(norm, 2.0 * std::numbers::pi * e / static_cast<double>(d));
    }
  }
  return basis;
}

DensityMatrix mcms(std::span<const double> spectrum, std::size_t d) {
  if (spectrum.empty() || spectrum.size() > d) {
    std::ostringstream os;
    os << "mcms: spectrum of length " << spectrum.size() << " does not fit dimension " << d;
    throw ValidationError(ValidationError::Kind::kDimension, 0.0, os.str());
  }
  double total = 0.0;
  for (double x : spectrum) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw ValidationError(ValidationError::Kind::kArgument, x,
                            "mcms: spectrum entries must be finite and nonnegative");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kStateTolerance) {
    std::ostringstream os;
    os << "mcms: spectrum sums to " << total;
    throw ValidationError(ValidationError::Kind::kTrace, std::abs(total - 1.0), os.str());
  }
  std::vector<double> p(spectrum.begin(), spectrum.end());
  p.resize(d, 0.0);
  std::sort(p.begin(), p.end(), std::greater<>());
  const MubBasis f = fourier_basis(d);
  ComplexMatrix scaled = f.columns;
  for (std::size_t k = 0; k < d; ++k) scaled.col(static_cast<Eigen::Index>(k)) *= p[k];
  return DensityMatrix::trusted(scaled * f.columns.adjoint());
}

ComplexMatrix optimal_unitary(const DensityMatrix& rho) {
  const EigenSystem& eig = rho.eigensystem();
  const auto n = static_cast<Eigen::Index>(rho.dim());
  ComplexMatrix descending(n, n);
  for (Eigen::Index k = 0; k < n; ++k) descending.col(k) = eig.vectors.col(n - 1 - k);
  return fourier_basis(rho.dim()).columns * descending.adjoint();
}

Channel::Channel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)), dim_(0) {
  if (kraus_.empty()) {
    throw ValidationError(ValidationError::Kind::kArgument, 0.0, "Channel: no Kraus operators");
  }
  dim_ = static_cast<std::size_t>(kraus_.front().rows());
  for (const auto& k : kraus_) {
    if (static_cast<std::size_t>(k.rows()) != dim_ || static_cast<std::size_t>(k.cols()) != dim_) {
      throw ValidationError(ValidationError::Kind::kDimension, 0.0,
                            "Channel: Kraus operators must share one square shape");
    }
  }
  const double residual = trace_residual();
  if (residual > 1e-9) {
    std::ostringstream os;
    os << "Channel: not trace preserving, max |sum K^dagger K - I| = " << residual;
    throw ValidationError(ValidationError::Kind::kTrace, residual, os.str());
  }
}

double Channel::trace_residual() const {
  ComplexMatrix acc = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  for (const auto& k : kraus_) acc += k.adjoint() * k;
  return max_abs(acc - identity(dim_));
}

DensityMatrix apply_channel(const Channel& channel, const DensityMatrix& rho) {
  if (channel.dim() != rho.dim()) {
    std::ostringstream os;
    os << "apply_channel: channel dimension " << channel.dim() << " vs state dimension "
       << rho.dim();
    throw ValidationError(ValidationError::Kind::kDimension, 0.0, os.str());
  }
  const auto n = static_cast<Eigen::Index>(rho.dim());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& k : channel.kraus()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix::trusted(std::move(out));
}

Channel mio_channel_from_unitary(const ComplexMatrix& u) {
  const double weight = 1.0;
  return mio_channel_from_mixture(std::span<const double>(&weight, 1), {u});
}

Channel mio_channel_from_mixture(std::span<const double> weights,
                                 const std::vector<ComplexMatrix>& unitaries) {
  if (weights.size() != unitaries.size() || weights.empty()) {
    throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                          "mio_channel_from_mixture: need one weight per unitary");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw ValidationError(ValidationError::Kind::kArgument, w,
                            "mio_channel_from_mixture: negative weight");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kStateTolerance) {
    throw ValidationError(ValidationError::Kind::kTrace, std::abs(total - 1.0),
                          "mio_channel_from_mixture: weights must sum to 1");
  }
  const std::size_t d = static_cast<std::size_t>(unitaries.front().rows());
  const MubBasis f = fourier_basis(d);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    const auto& u = unitaries[i];
    if (static_cast<std::size_t>(u.rows()) != d || !is_unitary(u, 1e-9)) {
      throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                            "mio_channel_from_mixture: operator is not a unitary of matching size");
    }
    for (std::size_t n = 0; n < d; ++n) {
      const auto col = f.columns.col(static_cast<Eigen::Index>(n));
      kraus.push_back(std::sqrt(weights[i]) * (u * col * col.adjoint()));
    }
  }
  return Channel(std::move(kraus));
}

double c_max_closed(const DensityMatrix& rho, const Distance& distance) {
  return distance_value(rho, maximally_mixed(rho.dim()), distance);
}

std::string to_string(FreeChannelKind kind) {
  switch (kind) {
    case FreeChannelKind::kIncoherentUnitary: return "incoherent_unitary";
    case FreeChannelKind::kDephasingMixture: return "dephasing_mixture";
    case FreeChannelKind::kMioConstruction: return "mio_construction";
  }
  return "unknown";
}

Channel random_free_channel(FreeChannelKind kind, std::size_t d, RandomStream& rng) {
  if (d < 2) throw DomainError("random_free_channel: d must be >= 2");
  const auto n = static_cast<Eigen::Index>(d);
  switch (kind) {
    case FreeChannelKind::kIncoherentUnitary: {
      const std::size_t count = 1 + rng.uniform_index(3);
      const std::vector<double> w = dirichlet_uniform(count, rng);
      std::vector<ComplexMatrix> kraus;
      for (std::size_t c = 0; c < count; ++c) {
        std::vector<Eigen::Index> perm(d);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng.engine());
        ComplexMatrix k = ComplexMatrix::Zero(n, n);
        for (Eigen::Index j = 0; j < n; ++j) {
          k(perm[static_cast<std::size_t>(j)], j) =
              std::polar(std::sqrt(w[c]), 2.0 * std::numbers::pi * rng.uniform());
        }
        kraus.push_back(std::move(k));
      }
      return Channel(std::move(kraus));
    }
    case FreeChannelKind::kDephasingMixture: {
      const double w = rng.uniform();
      std::vector<ComplexMatrix> kraus{std::sqrt(1.0 - w) * identity(d)};
      for (Eigen::Index i = 0; i < n; ++i) {
        ComplexMatrix k = ComplexMatrix::Zero(n, n);
        k(i, i) = std::sqrt(w);
        kraus.push_back(std::move(k));
      }
      return Channel(std::move(kraus));
    }
    case FreeChannelKind::kMioConstruction: {
      const std::size_t count = 1 + rng.uniform_index(3);
      const std::vector<double> w = dirichlet_uniform(count, rng);
      std::vector<ComplexMatrix> unitaries;
      for (std::size_t c = 0; c < count; ++c) unitaries.push_back(haar_unitary(d, rng));
      return mio_channel_from_mixture(w, unitaries);
    }
  }
  throw DomainError("random_free_channel: unknown kind");
}

CoherenceQuantifier coherence_quantifier(std::string_view name, const SimplexOptConfig& opt) {
  const std::string key(name);
  if (key == "c_rel_entropy") {
    return {key, [](const DensityMatrix& r) { return c_rel_entropy(r); }, true};
  }
  if (key == "c_l1") return {key, [](const DensityMatrix& r) { return c_l1(r); }, false};
  if (key == "c_geometric") {
    return {key, [opt](const DensityMatrix& r) { return c_geometric(r, opt).value; }, true};
  }
  constexpr std::string_view alpha_prefix = "c_alpha_";
  if (name.substr(0, alpha_prefix.size()) == alpha_prefix) {
    const std::string rest(name.substr(alpha_prefix.size()));
    double alpha = 0.0;
    try {
      std::size_t used = 0;
      alpha = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(rest);
    } catch (const std::logic_error&) {
      throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                            "coherence quantifier '" + key + "': bad alpha");
    }
    incoherent_renyi_objective(maximally_mixed(2), alpha);  // range check
    return {key, [alpha, opt](const DensityMatrix& r) { return c_alpha(r, alpha, opt).value; }, true};
  }
  if (name.substr(0, 2) == "c_") {
    const Distance dist = Distance::parse(name.substr(2));
    return {key, [dist, opt](const DensityMatrix& r) { return c_distance(r, dist, opt).value; }, true};
  }
  throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                        "unknown coherence quantifier '" + key + "'");
}

}  // namespace cohpure
