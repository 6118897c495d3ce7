#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cohpure/errors.hpp"
#include "cohpure/majorization.hpp"
#include "cohpure/purity.hpp"
#include "oracles.hpp"

using namespace cohpure;

namespace {

const std::vector<double> kSkewed{0.9, 0.1};

DensityMatrix bell() {
  const double r = 1.0 / std::sqrt(2.0);
  return pure(ComplexVector{{r, 0.0, 0.0, r}});
}

}  // namespace

TEST_CASE("Renyi purities on diag(0.9, 0.1)") {
  const DensityMatrix rho = diagonal(kSkewed);
  const double h = -(0.9 * std::log2(0.9) + 0.1 * std::log2(0.1));
  CHECK(p_alpha(rho, 0.0) == doctest::Approx(0.0).scale(1.0));
  CHECK(p_alpha(rho, 1.0) == doctest::Approx(1.0 - h).epsilon(1e-12));
  CHECK(p_alpha(rho, 1.0) == doctest::Approx(0.531004).epsilon(1e-6));
  CHECK(p_alpha(rho, 2.0) == doctest::Approx(std::log2(2 * 0.82)).epsilon(1e-12));
  CHECK(p_alpha(rho, 2.0) == doctest::Approx(0.713695).epsilon(1e-6));
  CHECK(p_alpha(rho, kInfinity) == doctest::Approx(1.0 + std::log2(0.9)).epsilon(1e-12));
  CHECK(p_alpha(rho, kInfinity) == doctest::Approx(0.847997).epsilon(1e-6));
  CHECK(p_rel_entropy(rho) == p_alpha(rho, 1.0));
  CHECK(p_linear(rho) == doctest::Approx(0.82).epsilon(1e-12));
  CHECK(p_2(rho) == doctest::Approx(p_alpha(rho, 2.0)).epsilon(1e-12));
  CHECK(p_geometric(rho) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(p_geometric_fidelity(rho) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_THROWS_AS(p_alpha(rho, -0.5), DomainError);
}

TEST_CASE("extremal states") {
  for (std::size_t d = 2; d <= 6; ++d) {
    const DensityMatrix mixed = maximally_mixed(d);
    RandomStream rng(40 + d);
    const DensityMatrix psi = random_density(d, 1, rng);
    for (double a : {0.0, 0.5, 1.0, 2.0, kInfinity}) {
      CHECK(p_alpha(mixed, a) == doctest::Approx(0.0).scale(1.0));
      CHECK(p_alpha(psi, a) == doctest::Approx(std::log2(d)).epsilon(1e-12));
    }
    CHECK(p_linear(mixed) == doctest::Approx(1.0 / d));
    CHECK(p_linear(psi) == doctest::Approx(1.0));
    CHECK(p_2(mixed) == doctest::Approx(0.0).scale(1.0));
    CHECK(p_geometric(mixed) == doctest::Approx(0.0).scale(1.0));
    CHECK(p_geometric(psi) == doctest::Approx(1.0 - 1.0 / d));
    for (const Distance& dist : menu_distances()) CHECK(p_distance(mixed, dist) <= 1e-12);
  }
  CHECK(p_rel_entropy(bell()) == doctest::Approx(2.0));
  CHECK(p_distance(from_bloch(0, 0, 0.8), Distance::trace_norm()) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("p_alpha matches scalar evaluation and is nondecreasing in alpha") {
  RandomStream rng(41);
  for (int t = 0; t < 60; ++t) {
    const std::size_t d = 2 + t % 5;
    const DensityMatrix rho = random_density(d, 1 + rng.uniform_index(d), rng);
    const std::vector<double> ref = oracle::spectrum(oracle::to_mat(rho.matrix()));
    double prev = -1.0;
    for (double a = 0.0; a <= 4.0; a += 0.25) {
      const double v = p_alpha(rho, a);
      CHECK(v == doctest::Approx(std::log2(d) - oracle::renyi(ref, a)).epsilon(1e-9).scale(1.0));
      CHECK(v >= prev - 1e-9);
      prev = v;
    }
    CHECK(p_alpha(rho, kInfinity) >= prev - 1e-9);
    CHECK(p_alpha(rho, kInfinity) <= std::log2(d) + 1e-12);
  }
}

TEST_CASE("distance-based purity consistency") {
  RandomStream rng(42);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 2 + t % 5;
    const DensityMatrix rho = random_density(d, 1 + rng.uniform_index(d), rng);
    CHECK(p_distance(rho, Distance::rel_entropy()) == doctest::Approx(p_rel_entropy(rho)).epsilon(1e-12).scale(1.0));
    CHECK(p_distance(rho, Distance::one_minus_fidelity()) == doctest::Approx(p_geometric(rho)).epsilon(1e-9).scale(1.0));
    CHECK(std::abs(p_geometric_fidelity(rho) - p_geometric(rho)) <= 1e-9);
    for (const Distance& dist : menu_distances()) {
      CHECK(p_distance(rho, dist) == c_max_closed(rho, dist));
    }
    // Squared Schatten-2 purity is Tr rho^2 - 1/d.
    const double s2 = p_distance(rho, Distance::schatten(2.0));
    CHECK(s2 * s2 == doctest::Approx(p_linear(rho) - 1.0 / d).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("coherence-based purity") {
  const DensityMatrix rho = diagonal(kSkewed);
  CHECK(p_coherence_based(rho, coherence_quantifier("c_rel_entropy")) ==
        doctest::Approx(p_rel_entropy(rho)).epsilon(1e-9));
  CHECK(p_coherence_based(rho, coherence_quantifier("c_l1")) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(p_coherence_based(maximally_mixed(3), coherence_quantifier("c_alpha_0.5")) <= 1e-9);

  // C(rho_max) dominates C after any sampled unital channel.
  RandomStream rng(43);
  const CoherenceQuantifier cr = coherence_quantifier("c_rel_entropy");
  const CoherenceQuantifier cg = coherence_quantifier("c_geometric");
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 2 + t % 3;
    const DensityMatrix s = random_density(d, 1 + rng.uniform_index(d), rng);
    const DensityMatrix out = apply_channel(random_unital(d, 1 + rng.uniform_index(3), rng), s);
    CHECK(cr.evaluate(out) <= p_coherence_based(s, cr) + 1e-9);
    CHECK(cg.evaluate(out) <= p_coherence_based(s, cg) + 1e-4);
  }
}

TEST_CASE("random unital channels") {
  RandomStream rng(44);
  for (std::size_t k : {1u, 2u, 5u}) {
    const Channel ch = random_unital(3, k, rng);
    CHECK(ch.kraus().size() == k);
    CHECK(ch.trace_residual() <= 1e-12);
    CHECK(max_abs(apply_channel(ch, maximally_mixed(3)).matrix() - maximally_mixed(3).matrix()) <= 1e-12);
  }
  const DensityMatrix rho = random_density(3, 2, rng);
  const DensityMatrix out = apply_channel(random_unital(3, 1, rng), rho);
  for (double a : kReportAlphas) CHECK(p_alpha(out, a) == doctest::Approx(p_alpha(rho, a)).epsilon(1e-9).scale(1.0));
  CHECK_THROWS_AS(random_unital(3, 0, rng), ValidationError);
}

TEST_CASE("purity report") {
  const PurityReport r = purity_report(diagonal(kSkewed));
  CHECK(r.p_alpha[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(r.p_alpha[2] == doctest::Approx(0.531004).epsilon(1e-6));
  CHECK(r.p_geometric == doctest::Approx(0.2));
  CHECK(r.p_linear == doctest::Approx(0.82));
  CHECK(r.distillable_1shot == 0);
  CHECK(r.cost_1shot == 1);
  RandomStream rng(45);
  for (int t = 0; t < 30; ++t) {
    const PurityReport s = purity_report(random_density(4, 1 + rng.uniform_index(4), rng));
    for (std::size_t i = 1; i < s.p_alpha.size(); ++i) CHECK(s.p_alpha[i] >= s.p_alpha[i - 1] - 1e-9);
    CHECK(s.distillable_1shot <= s.cost_1shot);
  }
}

TEST_CASE("axiom suite: Renyi purities pass, known negatives fail where expected") {
  RandomStream rng(46);
  for (const char* name : {"p_alpha_0", "p_alpha_0.5", "p_alpha_1", "p_alpha_2", "p_alpha_inf"}) {
    CAPTURE(name);
    const bool convex = std::string(name) == "p_alpha_0" || std::string(name) == "p_alpha_0.5" ||
                        std::string(name) == "p_alpha_1";
    const AxiomReport r = axiom_suite(purity_quantifier(name), 3, 100, rng, {1e-9, convex});
    for (const auto& c : r.checks) {
      CAPTURE(c.axiom);
      CAPTURE(c.worst);
      CHECK(c.passed);
    }
  }
  const AxiomReport g = axiom_suite(purity_quantifier("p_geometric"), 2, 60, rng);
  CHECK(g.find("P1")->passed);
  CHECK(g.find("P2")->passed);
  CHECK_FALSE(g.find("P3")->passed);
  CHECK(g.find("P3")->counterexample.has_value());
  // Two pure qubits: P_g = 0.75, not 0.5 + 0.5.
  RandomStream r2(47);
  const DensityMatrix a = random_density(2, 1, r2);
  CHECK(p_geometric(tensor(a, a)) == doctest::Approx(0.75));

  const AxiomReport lin = axiom_suite(purity_quantifier("p_linear"), 3, 20, rng);
  CHECK_FALSE(lin.find("P4")->passed);
  CHECK(lin.find("P4")->worst == doctest::Approx(std::log2(3.0) - 1.0).epsilon(1e-9));
  CHECK_FALSE(lin.passed());
}

TEST_CASE("axiom suite is deterministic and validates its arguments") {
  RandomStream a(48);
  RandomStream b(48);
  const AxiomReport ra = axiom_suite(purity_quantifier("p_2"), 3, 30, a);
  const AxiomReport rb = axiom_suite(purity_quantifier("p_2"), 3, 30, b);
  REQUIRE(ra.checks.size() == rb.checks.size());
  for (std::size_t i = 0; i < ra.checks.size(); ++i) CHECK(ra.checks[i].worst == rb.checks[i].worst);
  CHECK_THROWS_AS(axiom_suite(purity_quantifier("p_2"), 1, 30, a), ValidationError);
  CHECK_THROWS_AS(purity_quantifier("p_alpha_-1"), ValidationError);
  CHECK_THROWS_AS(purity_quantifier("q_2"), ValidationError);
  CHECK(purity_quantifier("p_trace_norm").evaluate(from_bloch(0.8, 0, 0)) == doctest::Approx(0.8));
}
