// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli_golden.hpp"
#include "cohpure/coherence.hpp"
#include "cohpure/correlations.hpp"
#include "cohpure/purity.hpp"
#include "cohpure/state_file.hpp"
#include "cohpure/verify.hpp"

using namespace cohpure;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Worst {
  double value = 0.0;
  void see(double v) { value = std::max(value, v); }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Pass iff every property passes; the detail names the failures or the
// largest worst/tolerance ratio among the selected properties.
Outcome suite_outcome(const SuiteReport& rep, const std::function<bool(const std::string&)>& select) {
  Outcome o;
  std::string failed;
  double ratio = 0.0;
  int used = 0;
  for (const PropertyResult& p : rep.properties) {
    if (!select(p.name)) continue;
    ++used;
    if (!p.passed()) {
      o.pass = false;
      failed += " " + p.name + "(worst " + fmt(p.worst) + ")";
    } else if (!p.known_negative && p.tolerance > 0.0) {
      ratio = std::max(ratio, p.worst / p.tolerance);
    }
  }
  if (used == 0) return {false, "no properties selected"};
  o.detail = std::to_string(used) + " properties, " + std::to_string(rep.trials) + " trials";
  o.detail += o.pass ? ", max worst/tolerance " + fmt(ratio) : ", failed:" + failed;
  return o;
}

bool starts(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

Outcome criterion1() {
  return suite_outcome(run_suite("theorem2", 101, 200), [](const std::string&) { return true; });
}

// Universality and the MIO constructions come from the same suite run.
const SuiteReport& theorem1_report() {
  static const SuiteReport rep = [] {
    SuiteOptions o;
    o.haar_per_state = 100;
    return run_suite("theorem1", 102, 40, o);
  }();
  return rep;
}

Outcome criterion2() {
  return suite_outcome(theorem1_report(),
                       [](const std::string& n) { return starts(n, "universality_") || starts(n, "rho_max_"); });
}

Outcome criterion3() {
  return suite_outcome(theorem1_report(), [](const std::string& n) { return starts(n, "mio_kraus_"); });
}

Outcome criterion4() {
  // Recorded witness: d = 4, seed 2, input diagonal in the Fourier basis.
  RandomStream rng(2);
  const std::vector<double> p = dirichlet_uniform(4, rng);
  const ComplexMatrix f = fourier_basis(4).columns;
  ComplexMatrix dm = ComplexMatrix::Zero(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i) dm(i, i) = p[static_cast<std::size_t>(i)];
  const DensityMatrix rho = DensityMatrix::trusted(f * dm * f.adjoint());
  const Channel mio = mio_channel_from_unitary(haar_unitary(4, rng));
  const double before = c_l1(rho), after = c_l1(apply_channel(mio, rho));

  RandomStream io(404);
  Worst w;
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2 + t % 5;
    const DensityMatrix s = random_density(d, 1 + io.uniform_index(d), io);
    const auto kind = t % 2 == 0 ? FreeChannelKind::kIncoherentUnitary : FreeChannelKind::kDephasingMixture;
    const Channel ch = random_free_channel(kind, d, io);
    w.see(c_l1(apply_channel(ch, s)) - c_l1(s));
  }
  Outcome o;
  o.pass = after - before >= 1e-3 && w.value <= 1e-9;
  o.detail = "witness c_l1 " + fmt(before) + " -> " + fmt(after) + "; 200 IO trials, max increase " + fmt(w.value);
  return o;
}

Outcome criterion5() {
  SuiteOptions o;
  o.exhaustive_scan = true;
  return suite_outcome(run_suite("majorization", 105, 150, o), [](const std::string&) { return true; });
}

Outcome criterion6() {
  return suite_outcome(run_suite("axioms", 106, 300), [](const std::string&) { return true; });
}

Outcome criterion7() {
  return suite_outcome(run_suite("appendixG", 107, 100), [](const std::string&) { return true; });
}

Outcome criterion8() {
  const Bipartition qubits{2, 2};
  const SimplexOptConfig opt{4, 3000, 1e-10, 1.0, 1e-12, 0x5eed};
  Outcome o;
  RandomStream base(108);
  int states = 0;
  double worst_gap = 0.0;
  for (const Distance& dist : menu_distances()) {
    RandomStream rng = base.child(static_cast<std::uint64_t>(dist.kind) * 16 + static_cast<std::uint64_t>(dist.p));
    for (int t = 0; t < 100; ++t) {
      const DensityMatrix rho = random_density(4, 1 + t % 4, rng);
      const HierarchyReport h = hierarchy_report(rho, qubits, dist, {2, 1}, rng, opt);
      const MaxHierarchyReport m = max_hierarchy_check(rho, qubits, dist, {2, 0}, {1, 0}, rng, opt);
      ++states;
      if (!h.holds || !m.holds) {
        o.pass = false;
        o.detail += " violation(" + dist.name() + ", state " + std::to_string(t) + ")";
      }
    }
  }
  RandomStream irng(1108);
  int imax = 0;
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_density(4, 1 + t % 2, irng);
    const IMaxCheck c = i_max_check(rho, qubits, {128, 300}, irng);
    ++imax;
    worst_gap = std::max(worst_gap, c.gap);
    if (c.i_max_lower > c.p_r + 1e-9 || c.gap > 5e-3) {
      o.pass = false;
      o.detail += " i_max(state " + std::to_string(t) + ", gap " + fmt(c.gap) + ")";
    }
  }
  o.detail = std::to_string(states) + " chain checks, " + std::to_string(imax) + " i_max checks, max gap " +
             fmt(worst_gap) + o.detail;
  return o;
}

Outcome criterion9() {
  RandomStream rng(109);
  Worst recon, ortho, limit;
  for (int t = 0; t < 1000; ++t) {
    const auto n = static_cast<Eigen::Index>(1 + t % 12);
    ComplexMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
    }
    const ComplexMatrix h = 0.5 * (g + g.adjoint());
    const EigenSystem e = hermitian_eig(h);
    ComplexMatrix lam = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) lam(k, k) = e.values[static_cast<std::size_t>(k)];
    recon.see(max_abs(e.vectors * lam * e.vectors.adjoint() - h));
    ortho.see(max_abs(e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(n, n)));
  }
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2 + t % 6;
    const DensityMatrix rho = random_density(d, 1 + rng.uniform_index(d), rng);
    const double s = von_neumann(rho);
    limit.see(std::abs(renyi_entropy(rho, 1.0 - 1e-3) - s));
    limit.see(std::abs(renyi_entropy(rho, 1.0 + 1e-3) - s));
  }
  Outcome o;
  o.pass = recon.value <= 1e-9 && ortho.value <= 1e-10 && limit.value <= 5e-3;
  o.detail = "1000 matrices: reconstruction " + fmt(recon.value) + ", orthonormality " + fmt(ortho.value) +
             "; 200 states: alpha->1 gap " + fmt(limit.value);
  return o;
}

Outcome criterion10() {
  using golden::input;
  using golden::invoke;
  Outcome o;
  int goldens = 0, codes = 0, repeats = 0;
  auto fail = [&](const std::string& what) {
    o.pass = false;
    o.detail += " [" + what + "]";
  };

  const std::string r4 = (golden::scratch() / "acceptance_r4.json").string();
  if (invoke({"random", "--dim", "4", "--seed", "21", "--out", r4}).code != 0) fail("random for hierarchy input");

  struct Golden {
    std::string name;
    std::vector<std::string> args;
    double tol;
  };
  const std::vector<Golden> json_cases = {
      {"quantify_mixed_qubit", {"quantify", "--state", input("mixed_qubit.json")}, 1e-9},
      {"quantify_plus", {"quantify", "--state", input("plus.json")}, 1e-9},
      {"quantify_diag", {"quantify", "--state", input("diag_09_01.json")}, 1e-9},
      {"mcms_pure4", {"mcms", "--spectrum", "1", "--dim", "4"}, 1e-9},
      {"mcms_09_01", {"mcms", "--spectrum", "0.9,0.1", "--dim", "2"}, 1e-9},
      {"convert_pure_to_mixed", {"convert", "--from", input("zero.json"), "--to", input("diag_09_01.json")}, 1e-9},
      {"distill_pure8", {"distill", "--state", input("pure8.json")}, 1e-9},
      {"cost_diag", {"cost", "--state", input("diag_09_01.json")}, 1e-9},
      {"hierarchy_bell", {"hierarchy", "--state", input("bell.json"), "--seed", "1"}, 1e-9},
      {"hierarchy_random_schatten2",
       {"hierarchy", "--state", r4, "--dims", "2,2", "--seed", "5", "--distance", "schatten_2", "--restarts", "2",
        "--refine", "1"},
       1e-6},
      {"verify_axioms_p_linear",
       {"verify", "--suite", "axioms", "--seed", "1", "--trials", "10", "--quantifier", "p_linear"},
       1e-9},
      {"random_dim4_seed6", {"random", "--dim", "4", "--seed", "6"}, 1e-9},
  };
  for (const Golden& g : json_cases) {
    const golden::CliRun first = invoke(g.args), second = invoke(g.args);
    ++goldens;
    ++repeats;
    if (first.code != 0) fail(g.name + " exit " + std::to_string(first.code));
    const std::string d = golden::compare_json(g.name, first.out, g.tol);
    if (!d.empty()) fail(d);
    if (first.out != second.out) fail(g.name + " not deterministic");
  }
  const std::vector<Golden> csv_cases = {
      {"quantify_plus.csv",
       {"quantify", "--state", input("plus.json"), "--format", "csv", "--distance", "trace_norm", "--alpha", "2"},
       1e-9},
      {"bloch_grid3_p_rel_entropy.csv", {"bloch", "--grid", "3", "--quantifier", "p_rel_entropy"}, 1e-9},
  };
  for (const Golden& g : csv_cases) {
    const golden::CliRun r = invoke(g.args);
    ++goldens;
    if (r.code != 0) fail(g.name + " exit " + std::to_string(r.code));
    const std::string d = golden::compare_csv(g.name, r.out, g.tol);
    if (!d.empty()) fail(d);
  }

  // Worked examples without a golden file.
  if (invoke({"verify", "--suite", "theorem2", "--seed", "1", "--trials", "50"}).code != 0) fail("theorem2 seed 1");
  if (invoke({"verify", "--suite", "appendixG", "--seed", "1", "--trials", "20"}).code != 0) fail("appendixG");
  {
    const std::string out = (golden::scratch() / "acceptance_bloch.csv").string();
    if (invoke({"bloch", "--grid", "11", "--quantifier", "p_trace_norm", "--out", out}).code != 0) fail("bloch");
    const auto rows = golden::csv_cells(golden::slurp(out));
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double x = std::stod(rows[i][0]), y = std::stod(rows[i][1]), z = std::stod(rows[i][2]);
      if (std::abs(std::stod(rows[i][3]) - std::sqrt(x * x + y * y + z * z)) > 1e-9) {
        fail("bloch row " + std::to_string(i));
        break;
      }
    }
  }

  struct Code {
    std::vector<std::string> args;
    int want;
  };
  const std::vector<Code> code_cases = {
      {{"quantify", "--state", input("not_psd.json")}, 2},
      {{"quantify", "--state", input("not_hermitian.json")}, 2},
      {{"quantify", "--state", input("malformed.json")}, 2},
      {{"quantify", "--state", input("missing.json")}, 2},
      {{"quantify", "--state", r4, "--distance", "trace_norm", "--max-iters", "1"}, 3},
      {{"mcms", "--spectrum", "0.5,0.4", "--dim", "2"}, 2},
      {{"verify", "--suite", "theorem9", "--seed", "1"}, 2},
      {{"hierarchy", "--state", input("bell.json"), "--dims", "3,2", "--seed", "1"}, 2},
      {{"hierarchy", "--state", input("bell.json")}, 2},
      {{"random", "--dim", "3"}, 2},
      {{"bloch", "--grid", "1", "--quantifier", "p_linear"}, 2},
      {{"frobnicate"}, 2},
      {{}, 2},
  };
  for (const Code& c : code_cases) {
    ++codes;
    const int got = invoke(c.args).code;
    if (got != c.want) {
      std::string line;
      for (const auto& a : c.args) line += " " + a;
      fail("exit " + std::to_string(got) + " != " + std::to_string(c.want) + " for" + line);
    }
  }
  o.detail = std::to_string(goldens) + " golden files, " + std::to_string(repeats) + " determinism repeats, " +
             std::to_string(codes) + " exit-code cases" + o.detail;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* title;
    Outcome (*run)();
  };
  const std::vector<Criterion> all = {
      {1, "maximal coherence equals distance to 1/d", criterion1},
      {2, "universality of the maximally coherent mixed state", criterion2},
      {3, "MIO channel certification", criterion3},
      {4, "l1 coherence is not an MIO monotone", criterion4},
      {5, "single-shot majorization formulas", criterion5},
      {6, "purity axioms", criterion6},
      {7, "CNOT negativity identities", criterion7},
      {8, "purity, coherence and discord hierarchies", criterion8},
      {9, "numerical kernel", criterion9},
      {10, "command-line contract", criterion10},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::stoi(argv[i]));

  bool all_pass = true;
  for (const Criterion& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all_pass = all_pass && o.pass;
    std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
