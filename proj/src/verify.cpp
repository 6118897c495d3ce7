#include "cohpure/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "cohpure/coherence.hpp"
#include "cohpure/errors.hpp"
#include "cohpure/majorization.hpp"
#include "cohpure/parallel.hpp"
#include "cohpure/purity.hpp"

namespace cohpure {

bool SuiteReport::passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed(); });
}

const PropertyResult* SuiteReport::find(std::string_view name) const {
  for (const auto& p : properties) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"theorem1", "theorem2", "axioms", "majorization",
                                              "appendixG"};
  return names;
}

std::vector<double> structured_spectrum(std::size_t d, RandomStream& rng) {
  std::vector<double> p(d, 0.0);
  switch (rng.uniform_index(4)) {
    case 0: {  // uniform on a random support
      const std::size_t r = 1 + rng.uniform_index(d);
      std::fill_n(p.begin(), r, 1.0 / static_cast<double>(r));
      break;
    }
    case 1: {  // lambda_max = 2^k / d
      const int k = static_cast<int>(rng.uniform_index(4));
      const double top = std::min(1.0, std::ldexp(1.0, k) / static_cast<double>(d));
      double rest = 1.0;
      for (std::size_t i = 0; i < d && rest > 0.0; ++i) {
        p[i] = std::min(top, rest);
        rest -= p[i];
      }
      break;
    }
    default: {
      const std::size_t r = 1 + rng.uniform_index(d);
      const std::vector<double> w = dirichlet_uniform(r, rng);
      std::copy(w.begin(), w.end(), p.begin());
    }
  }
  return p;
}

DensityMatrix state_with_spectrum(std::span<const double> p, RandomStream& rng) {
  const std::size_t d = p.size();
  const ComplexMatrix u = haar_unitary(d, rng);
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < d; ++k) {
    const auto c = u.col(static_cast<Eigen::Index>(k));
    m += p[k] * (c * c.adjoint());
  }
  return DensityMatrix::trusted(std::move(m));
}

namespace {

// Per-property, per-trial worst violation. A violation is the amount by which
// a quantity exceeds what the property allows; 0 means none. Each trial writes
// only its own slots, so trials may run concurrently.
class Collector {
 public:
  Collector(int trials) : trials_(static_cast<std::size_t>(trials)) {}

  std::size_t add(std::string name, double tol, std::string detail, bool known_negative = false) {
    props_.push_back({std::move(name), tol, std::move(detail), known_negative,
                      std::vector<Slot>(trials_)});
    return props_.size() - 1;
  }

  void record(std::size_t prop, std::size_t trial, double violation, const ComplexMatrix& witness) {
    Slot& s = props_[prop].slots[trial];
    if (std::isnan(violation)) violation = kInfinity;
    if (violation > s.violation) {
      s.violation = violation;
      s.witness = witness;
    }
  }

  void finish(SuiteReport& report) const {
    for (const auto& p : props_) {
      PropertyResult r;
      r.name = p.name;
      r.tolerance = p.tol;
      r.detail = p.detail;
      r.known_negative = p.known_negative;
      r.trials = static_cast<int>(trials_);
      const Slot* worst = nullptr;
      for (const Slot& s : p.slots) {
        if (s.violation > r.worst) {
          r.worst = s.violation;
          worst = &s;
        }
      }
      r.holds = r.worst <= p.tol;
      if (!r.holds) r.counterexample = worst->witness;
      report.properties.push_back(std::move(r));
    }
  }

 private:
  struct Slot {
    double violation = 0.0;
    ComplexMatrix witness;
  };
  struct Prop {
    std::string name;
    double tol;
    std::string detail;
    bool known_negative;
    std::vector<Slot> slots;
  };
  std::size_t trials_;
  std::vector<Prop> props_;
};

// FNV-1a, so child streams do not depend on the standard library's hash.
std::uint64_t name_key(std::string_view s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ULL;
  return h;
}

// Axioms the non-Renyi purities are not meant to satisfy: Tr rho^2 is 1/d at
// the maximally mixed state, multiplicative and 1 on pure states; P_g is
// 1 - 1/d on pure states and not additive.
bool is_known_negative(std::string_view quantifier, std::string_view axiom) {
  if (quantifier == "p_linear") return axiom == "P1" || axiom == "P3" || axiom == "P4";
  if (quantifier == "p_geometric") return axiom == "P3" || axiom == "P4";
  return false;
}

struct NamedMonotone {
  std::string name;
  bool optimizer;
  std::function<double(const DensityMatrix&)> eval;
};

std::vector<NamedMonotone> mio_monotones(const SimplexOptConfig& opt) {
  std::vector<NamedMonotone> out;
  out.push_back({"c_rel_entropy", false, [](const DensityMatrix& r) { return c_rel_entropy(r); }});
  for (double a : {0.5, 2.0}) {
    out.push_back({a == 0.5 ? "c_alpha_0.5" : "c_alpha_2", true,
                   [a, opt](const DensityMatrix& r) { return c_alpha(r, a, opt).value; }});
  }
  for (const Distance& dist : menu_distances()) {
    if (dist.kind == DistanceKind::kRelEntropy) continue;  // same as c_rel_entropy
    out.push_back({"c_" + dist.name(), true,
                   [dist, opt](const DensityMatrix& r) { return c_distance(r, dist, opt).value; }});
  }
  return out;
}

void theorem1(SuiteReport& report, RandomStream& base, int trials, const SuiteOptions& o) {
  Collector c(trials);
  const auto monotones = mio_monotones(o.simplex);
  std::vector<std::size_t> ids;
  for (const auto& m : monotones) {
    ids.push_back(c.add("universality_" + m.name, m.optimizer ? 1e-4 : 1e-9,
                        "C(U rho_max U^dagger) <= C(rho_max) over Haar U"));
  }
  const std::size_t spectrum_id = c.add("rho_max_spectrum", 1e-10, "rho_max has the spectrum of rho");
  const std::size_t dephased_id = c.add("rho_max_dephased_uniform", 1e-12, "Delta[rho_max] = 1/d");
  const std::size_t kraus_inc = c.add("mio_kraus_incoherent_to_mixed", 1e-9,
                                      "both MIO Kraus constructions send incoherent states to 1/d");
  const std::size_t kraus_rm = c.add("mio_kraus_on_rho_max", 1e-9,
                                     "constructions reproduce U rho_max U^dagger and the unitary mixture");
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    RandomStream rng = base.child(t);
    const std::size_t d = 2 + t % 4;
    const DensityMatrix rho = random_density(d, 1 + rng.uniform_index(d), rng);
    const DensityMatrix rm = mcms(rho.spectrum().values, d);
    const auto& want = rho.spectrum().values;
    const auto& got = rm.spectrum().values;
    for (std::size_t k = 0; k < d; ++k) c.record(spectrum_id, t, std::abs(want[k] - got[k]), rho.matrix());
    c.record(dephased_id, t, max_abs(dephase(rm).matrix() - maximally_mixed(d).matrix()), rm.matrix());

    std::vector<double> at_max;
    for (const auto& m : monotones) at_max.push_back(m.eval(rm));
    for (int h = 0; h < o.haar_per_state; ++h) {
      const DensityMatrix moved = rm.conjugated(haar_unitary(d, rng));
      for (std::size_t i = 0; i < monotones.size(); ++i) {
        c.record(ids[i], t, monotones[i].eval(moved) - at_max[i], moved.matrix());
      }
    }

    const ComplexMatrix u = haar_unitary(d, rng);
    const std::vector<double> w = dirichlet_uniform(2, rng);
    const std::vector<ComplexMatrix> us{haar_unitary(d, rng), haar_unitary(d, rng)};
    const Channel single = mio_channel_from_unitary(u);
    const Channel mix = mio_channel_from_mixture(w, us);
    for (int k = 0; k < 50; ++k) {
      const DensityMatrix inc = diagonal(dirichlet_uniform(d, rng));
      const ComplexMatrix mixed = maximally_mixed(d).matrix();
      c.record(kraus_inc, t, max_abs(apply_channel(single, inc).matrix() - mixed), inc.matrix());
      c.record(kraus_inc, t, max_abs(apply_channel(mix, inc).matrix() - mixed), inc.matrix());
    }
    c.record(kraus_rm, t, max_abs(apply_channel(single, rm).matrix() - rm.conjugated(u).matrix()), rm.matrix());
    const ComplexMatrix expect = w[0] * rm.conjugated(us[0]).matrix() + w[1] * rm.conjugated(us[1]).matrix();
    c.record(kraus_rm, t, max_abs(apply_channel(mix, rm).matrix() - expect), rm.matrix());
  });
  c.finish(report);
}

void theorem2(SuiteReport& report, RandomStream& base, int trials, const SuiteOptions& o) {
  Collector c(trials);
  const std::vector<Distance> menu = menu_distances();
  std::vector<std::size_t> exact;
  std::vector<std::size_t> ceiling;
  for (const Distance& dist : menu) {
    const bool closed = dist.kind == DistanceKind::kRelEntropy;
    exact.push_back(c.add("c_max_equals_distance_to_mixed_" + dist.name(), closed ? 1e-6 : 1e-4,
                          "c(V rho V^dagger) = D(rho, 1/d) for the optimal unitary V"));
    ceiling.push_back(c.add("search_below_ceiling_" + dist.name(), 1e-9,
                            "unitary_maximize of c never exceeds D(rho, 1/d)"));
  }
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    RandomStream rng = base.child(t);
    const std::size_t d = 2 + t % 5;
    const DensityMatrix rho = random_density(d, 1 + rng.uniform_index(d), rng);
    const DensityMatrix rm = rho.conjugated(optimal_unitary(rho));
    for (std::size_t i = 0; i < menu.size(); ++i) {
      const double target = c_max_closed(rho, menu[i]);
      c.record(exact[i], t, std::abs(c_distance(rm, menu[i], o.simplex).value - target), rho.matrix());
      RandomStream search_rng = rng.split();
      const OptResult best = unitary_maximize(
          [&](const DensityMatrix& s) { return c_distance(s, menu[i], o.search_simplex).value; }, rho, o.search,
          search_rng);
      c.record(ceiling[i], t, best.best_value - target, rho.matrix());
    }
  });
  c.finish(report);
}

void axioms(SuiteReport& report, RandomStream& base, int trials, const SuiteOptions& o) {
  std::vector<std::string> names = o.quantifiers;
  if (names.empty()) {
    names = {"p_alpha_0", "p_alpha_0.5", "p_alpha_1", "p_alpha_2", "p_alpha_inf", "p_linear", "p_geometric"};
  }
  for (const auto& name : names) {
    const PurityQuantifier q = purity_quantifier(name);
    const bool renyi = name.rfind("p_alpha_", 0) == 0;
    bool convex = false;
    if (renyi && name != "p_alpha_inf") convex = std::stod(name.substr(8)) <= 1.0;
    if (name == "p_rel_entropy") convex = true;
    std::map<std::string, PropertyResult> merged;
    std::vector<std::string> order;
    for (std::size_t d : {2u, 3u, 4u}) {
      RandomStream rng = base.child(name_key(name) ^ d);
      const AxiomReport r = axiom_suite(q, d, trials, rng, {1e-9, convex});
      for (const auto& chk : r.checks) {
        const std::string key = name + "_" + chk.axiom;
        auto [it, fresh] = merged.try_emplace(key);
        PropertyResult& p = it->second;
        if (fresh) {
          order.push_back(key);
          p.name = key;
          p.tolerance = 1e-9;
          p.detail = chk.detail + " (d = 2, 3, 4)";
          p.known_negative = is_known_negative(name, chk.axiom);
        }
        p.trials += chk.trials;
        if (chk.worst > p.worst) {
          p.worst = chk.worst;
          p.counterexample = chk.counterexample;
        }
      }
    }
    for (const auto& key : order) {
      PropertyResult p = merged[key];
      p.holds = p.worst <= p.tolerance;
      if (p.holds) p.counterexample.reset();
      report.properties.push_back(std::move(p));
    }
  }
}

void majorization_suite(SuiteReport& report, RandomStream& base, int trials, const SuiteOptions& o) {
  Collector c(trials);
  const std::size_t distill = c.add("distill_formula_matches_oracle", 0.0,
                                    "floor(log2(d/r)) = max m with a feasible distillation oracle");
  const std::size_t cost = c.add("cost_formula_matches_oracle", 0.0,
                                 "ceil(log2(d lambda_max)) = min m with a feasible cost oracle");
  const std::size_t order = c.add("distill_at_most_cost", 0.0, "distillable <= cost");
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    RandomStream rng = base.child(t);
    const std::size_t d = 2 + t % 15;
    const std::vector<double> p = structured_spectrum(d, rng);
    const DensityMatrix rho = state_with_spectrum(p, rng);
    const int m_d = distillable_purity_1shot(rho);
    const int m_c = purity_cost_1shot(rho);
    const auto diff = [](int a, int b) { return static_cast<double>(std::abs(a - b)); };
    c.record(distill, t, diff(m_d, brute_force_distillable(rho, false)), rho.matrix());
    c.record(cost, t, diff(m_c, brute_force_cost_min(rho, false)), rho.matrix());
    if (o.exhaustive_scan) {
      c.record(distill, t, diff(m_d, brute_force_distillable(rho, true)), rho.matrix());
      c.record(cost, t, diff(m_c, brute_force_cost_min(rho, true)), rho.matrix());
    }
    c.record(order, t, std::max(0, m_d - m_c), rho.matrix());
  });
  c.finish(report);
}

void appendix_g(SuiteReport& report, RandomStream& base, int trials, const SuiteOptions& o) {
  Collector c(trials);
  const std::size_t identity_id = c.add("cnot_negativity_equals_half_l1", 1e-10,
                                        "N(CNOT (rho_A x |0><0|) CNOT) = C_l1(rho_A) / 2");
  const std::size_t bound_id = c.add("printed_bound", 1e-10, "N(rho_out) <= sqrt(1 - (1 - 2 P_g)^2)");
  const std::size_t tight_id = c.add("pm_basis_equality_at_l1", 1e-9,
                                     "C_l1 = sqrt(1 - (1 - 2 P_g)^2) when rho_A is diagonal in the +- basis");
  const std::size_t l1_bound_id = c.add("l1_below_bound", 1e-10, "C_l1 <= sqrt(1 - (1 - 2 P_g)^2)");
  const std::size_t qubit_id = c.add("qubit_l1_geometric_relation", 1e-4,
                                     "C_l1 = sqrt(1 - (1 - 2 C_g)^2) with C_g from the optimizer");
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    RandomStream rng = base.child(t);
    const DensityMatrix rho = random_density(2, 1 + rng.uniform_index(2), rng);
    const NegativityBound b = negativity_purity_bound(rho);
    c.record(identity_id, t, std::abs(cnot_activation(rho).negativity - c_l1(rho) / 2.0), rho.matrix());
    c.record(bound_id, t, b.lhs - b.rhs, rho.matrix());
    c.record(l1_bound_id, t, b.c_l1 - b.rhs, rho.matrix());
    // Eigenbasis {|+>, |->} up to a relative phase on |1>.
    const double p = rng.uniform();
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const double r = 2.0 * p - 1.0;
    const DensityMatrix pm = from_bloch(r * std::cos(phi), r * std::sin(phi), 0.0);
    const NegativityBound e = negativity_purity_bound(pm);
    c.record(tight_id, t, std::abs(e.c_l1 - e.rhs), pm.matrix());
    const double cg = c_geometric(rho, o.simplex).value;
    c.record(qubit_id, t, std::abs(c_l1(rho) - qubit_c_l1_from_geometric(cg)), rho.matrix());
  });
  c.finish(report);
}

}  // namespace

SuiteReport run_suite(std::string_view suite, std::uint64_t seed, int trials, const SuiteOptions& options) {
  if (trials < 1) {
    throw ValidationError(ValidationError::Kind::kArgument, trials, "verify: trials must be >= 1");
  }
  SuiteReport report;
  report.suite = std::string(suite);
  report.seed = seed;
  report.trials = trials;
  RandomStream base(seed);
  if (suite == "theorem1") {
    theorem1(report, base, trials, options);
  } else if (suite == "theorem2") {
    theorem2(report, base, trials, options);
  } else if (suite == "axioms") {
    axioms(report, base, trials, options);
  } else if (suite == "majorization") {
    majorization_suite(report, base, trials, options);
  } else if (suite == "appendixG") {
    appendix_g(report, base, trials, options);
  } else {
    throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                          "unknown suite '" + std::string(suite) +
                              "' (expected theorem1, theorem2, axioms, majorization, appendixG)");
  }
  return report;
}

}  // namespace cohpure
