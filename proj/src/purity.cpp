#include "cohpure/purity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cohpure/divergences.hpp"
#include "cohpure/errors.hpp"
#include "cohpure/majorization.hpp"
#include "cohpure/parallel.hpp"

namespace cohpure {

double p_alpha(const DensityMatrix& rho, double alpha) {
  if (!(alpha >= 0.0)) {
    std::ostringstream os;
    os << "p_alpha: alpha must be >= 0, got " << alpha;
    throw DomainError(os.str());
  }
  const double top = std::log2(static_cast<double>(rho.dim()));
  return std::clamp(top - renyi_entropy(rho.spectrum(), alpha), 0.0, top);
}

double p_rel_entropy(const DensityMatrix& rho) { return p_alpha(rho, 1.0); }

double p_linear(const DensityMatrix& rho) {
  double s = 0.0;
  for (double x : rho.spectrum().values) s += x * x;
  return s;
}

double p_2(const DensityMatrix& rho) {
  return std::max(0.0, std::log2(static_cast<double>(rho.dim()) * p_linear(rho)));
}

double p_geometric(const DensityMatrix& rho) {
  double root = 0.0;
  for (double x : rho.spectrum().values) root += std::sqrt(x);
  return std::max(0.0, 1.0 - root * root / static_cast<double>(rho.dim()));
}

double p_geometric_fidelity(const DensityMatrix& rho) {
  return std::max(0.0, 1.0 - fidelity(rho, maximally_mixed(rho.dim())));
}

double p_distance(const DensityMatrix& rho, const Distance& distance) {
  return distance_value(rho, maximally_mixed(rho.dim()), distance);
}

double p_coherence_based(const DensityMatrix& rho, const CoherenceQuantifier& quantifier) {
  return quantifier.evaluate(mcms(rho.spectrum().values, rho.dim()));
}

Channel random_unital(std::size_t d, std::size_t k, RandomStream& rng) {
  if (k < 1) {
    throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                          "random_unital: need at least one unitary");
  }
  const std::vector<double> w = dirichlet_uniform(k, rng);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(k);
  for (std::size_t i = 0; i < k; ++i) kraus.push_back(std::sqrt(w[i]) * haar_unitary(d, rng));
  return Channel(std::move(kraus));
}

PurityReport purity_report(const DensityMatrix& rho) {
  PurityReport r;
  for (std::size_t i = 0; i < kReportAlphas.size(); ++i) r.p_alpha[i] = p_alpha(rho, kReportAlphas[i]);
  r.p_geometric = p_geometric(rho);
  r.p_linear = p_linear(rho);
  r.distillable_1shot = distillable_purity_1shot(rho);
  r.cost_1shot = purity_cost_1shot(rho);
  return r;
}

PurityQuantifier purity_quantifier(std::string_view name) {
  const std::string key(name);
  if (key == "p_rel_entropy") return {key, [](const DensityMatrix& r) { return p_rel_entropy(r); }};
  if (key == "p_linear") return {key, [](const DensityMatrix& r) { return p_linear(r); }};
  if (key == "p_2") return {key, [](const DensityMatrix& r) { return p_2(r); }};
  if (key == "p_geometric") return {key, [](const DensityMatrix& r) { return p_geometric(r); }};
  constexpr std::string_view alpha_prefix = "p_alpha_";
  if (name.substr(0, alpha_prefix.size()) == alpha_prefix) {
    const std::string rest(name.substr(alpha_prefix.size()));
    double alpha = 0.0;
    if (rest == "inf") {
      alpha = kInfinity;
    } else {
      std::size_t used = 0;
      try {
        alpha = std::stod(rest, &used);
      } catch (const std::logic_error&) {
        used = 0;
      }
      if (used == 0 || used != rest.size() || alpha < 0.0) {
        throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                              "bad alpha in purity quantifier '" + key + "'");
      }
    }
    return {key, [alpha](const DensityMatrix& r) { return p_alpha(r, alpha); }};
  }
  if (name.substr(0, 2) == "p_") {
    const Distance distance = Distance::parse(name.substr(2));
    return {key, [distance](const DensityMatrix& r) { return p_distance(r, distance); }};
  }
  throw ValidationError(ValidationError::Kind::kArgument, 0.0, "unknown purity quantifier '" + key + "'");
}

bool AxiomReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck* AxiomReport::find(std::string_view axiom) const {
  for (const auto& c : checks) {
    if (c.axiom == axiom) return &c;
  }
  return nullptr;
}

namespace {

struct Trial {
  double violation = 0.0;
  ComplexMatrix witness;
};

// Reduces per-trial violations in index order; the first worst trial is kept.
AxiomCheck summarize(std::string axiom, const std::vector<Trial>& trials, double tol,
                     std::string detail) {
  AxiomCheck check;
  check.axiom = std::move(axiom);
  check.trials = static_cast<int>(trials.size());
  check.detail = std::move(detail);
  const Trial* worst = nullptr;
  for (const Trial& t : trials) {
    if (t.violation > check.worst) {
      check.worst = t.violation;
      worst = &t;
    }
  }
  check.passed = check.worst <= tol;
  if (!check.passed) check.counterexample = worst->witness;
  return check;
}

std::size_t random_rank(std::size_t d, RandomStream& rng) { return 1 + rng.uniform_index(d); }

}  // namespace

AxiomReport axiom_suite(const PurityQuantifier& quantifier, std::size_t d, int trials,
                        RandomStream& rng, const AxiomSuiteOptions& options) {
  if (d < 2 || trials < 1) {
    throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                          "axiom_suite: need d >= 2 and at least one trial");
  }
  const auto& f = quantifier.evaluate;
  const auto n = static_cast<std::size_t>(trials);
  const double tol = options.tolerance;
  AxiomReport report{quantifier.name, d, {}};

  RandomStream p1_rng = rng.split();
  RandomStream p2_rng = rng.split();
  RandomStream p3_rng = rng.split();
  RandomStream p4_rng = rng.split();
  RandomStream cv_rng = rng.split();

  {
    std::vector<Trial> out(n + 1);
    out[n] = {std::abs(f(maximally_mixed(d))), maximally_mixed(d).matrix()};
    parallel_for(n, [&](std::size_t t) {
      RandomStream r = p1_rng.child(t);
      const DensityMatrix rho = random_density(d, random_rank(d, r), r);
      out[t] = {-f(rho), rho.matrix()};
    });
    report.checks.push_back(summarize("P1", out, tol, "P >= 0, P(1/d) = 0"));
  }
  {
    std::vector<Trial> out(n);
    parallel_for(n, [&](std::size_t t) {
      RandomStream r = p2_rng.child(t);
      const DensityMatrix rho = random_density(d, random_rank(d, r), r);
      const Channel channel = random_unital(d, 1 + r.uniform_index(4), r);
      out[t] = {f(apply_channel(channel, rho)) - f(rho), rho.matrix()};
    });
    report.checks.push_back(summarize("P2", out, tol, "P(Lambda[rho]) <= P(rho) for unital Lambda"));
  }
  {
    std::vector<std::size_t> partners;
    for (std::size_t d2 = 2; d * d2 <= 16; ++d2) partners.push_back(d2);
    if (partners.empty()) partners.push_back(2);
    std::vector<Trial> out(n);
    parallel_for(n, [&](std::size_t t) {
      RandomStream r = p3_rng.child(t);
      const std::size_t d2 = partners[t % partners.size()];
      const DensityMatrix a = random_density(d, random_rank(d, r), r);
      const DensityMatrix b = random_density(d2, random_rank(d2, r), r);
      const DensityMatrix ab = tensor(a, b);
      out[t] = {std::abs(f(ab) - f(a) - f(b)), ab.matrix()};
    });
    report.checks.push_back(summarize("P3", out, tol, "P(rho x sigma) = P(rho) + P(sigma)"));
  }
  {
    std::vector<Trial> out(n);
    const double target = std::log2(static_cast<double>(d));
    parallel_for(n, [&](std::size_t t) {
      RandomStream r = p4_rng.child(t);
      const DensityMatrix psi = random_density(d, 1, r);
      out[t] = {std::abs(f(psi) - target), psi.matrix()};
    });
    report.checks.push_back(summarize("P4", out, tol, "P(pure state in dim d) = log2 d"));
  }
  if (options.check_convexity) {
    std::vector<Trial> out(n);
    parallel_for(n, [&](std::size_t t) {
      RandomStream r = cv_rng.child(t);
      const DensityMatrix a = random_density(d, random_rank(d, r), r);
      const DensityMatrix b = random_density(d, random_rank(d, r), r);
      const double w = r.uniform();
      const DensityMatrix mix = DensityMatrix::trusted(w * a.matrix() + (1.0 - w) * b.matrix());
      out[t] = {f(mix) - (w * f(a) + (1.0 - w) * f(b)), mix.matrix()};
    });
    report.checks.push_back(summarize("convexity", out, tol, "P(w a + (1-w) b) <= w P(a) + (1-w) P(b)"));
  }
  return report;
}

}  // namespace cohpure
