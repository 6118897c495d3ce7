#include "cohpure/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cohpure/coherence.hpp"
#include "cohpure/correlations.hpp"
#include "cohpure/errors.hpp"
#include "cohpure/majorization.hpp"
#include "cohpure/parallel.hpp"
#include "cohpure/purity.hpp"
#include "cohpure/state_file.hpp"
#include "cohpure/verify.hpp"
#include <nlohmann/json.hpp>

namespace cohpure::cli {

namespace {

using json = nlohmann::ordered_json;

// Shortest decimal that reads back to the same double.
std::string num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string alpha_key(double a) { return std::isinf(a) ? "inf" : num(a); }

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

json certificate_json(const ConversionCertificate& c) {
  json sums = json::array();
  for (const PrefixCheck& p : c.checked_prefix_sums) sums.push_back({{"k", p.k}, {"lhs", p.lhs}, {"rhs", p.rhs}});
  return {{"feasible", c.feasible}, {"m", c.m}, {"d1", c.d1}, {"d2", c.d2}, {"prefix_sums", std::move(sums)}};
}

json header(const std::string& command) {
  return {{"schema_version", kOutputSchemaVersion}, {"command", command}};
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

// Writes to `path`, or to `out` when the path is empty.
void emit_text(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_atomic(path, text);
  }
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item == "inf") {
      values.push_back(kInfinity);
      continue;
    }
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                            what + ": cannot parse '" + item + "' as a number");
    }
    values.push_back(v);
  }
  if (values.empty()) throw ValidationError(ValidationError::Kind::kArgument, 0.0, what + ": empty list");
  return values;
}

Bipartition resolve_dims(const std::string& flag, const StateFile& file) {
  Bipartition dims{};
  if (!flag.empty()) {
    const std::vector<double> v = parse_list(flag, "--dims");
    if (v.size() != 2 || v[0] < 1 || v[1] < 1 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) {
      throw ValidationError(ValidationError::Kind::kArgument, 0.0, "--dims must be two positive integers a,b");
    }
    dims = {static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1])};
  } else if (file.dims) {
    dims = *file.dims;
  } else {
    throw ValidationError(ValidationError::Kind::kArgument, 0.0, "bipartite command needs --dims or dims in the state file");
  }
  if (dims.total() != file.state.dim()) {
    throw ValidationError(ValidationError::Kind::kDimension, 0.0,
                          "--dims " + std::to_string(dims.dim_a) + "," + std::to_string(dims.dim_b) +
                              " does not match state dimension " + std::to_string(file.state.dim()));
  }
  return dims;
}

std::vector<Distance> resolve_distances(const std::vector<std::string>& names) {
  if (names.empty()) return menu_distances();
  std::vector<Distance> out;
  for (const std::string& n : names) out.push_back(Distance::parse(n));
  return out;
}

struct QuantifyArgs {
  std::string state;
  std::vector<std::string> distances;
  std::string alphas = "0.5,2";
  std::string format = "json";
  int max_iters = 5000;
};

int cmd_quantify(const QuantifyArgs& a, std::ostream& out) {
  const StateFile file = read_state_file(a.state);
  const DensityMatrix& rho = file.state;
  const std::vector<Distance> distances = resolve_distances(a.distances);
  const std::vector<double> alphas = parse_list(a.alphas, "--alpha");
  if (a.max_iters < 1) throw ValidationError(ValidationError::Kind::kArgument, a.max_iters, "--max-iters must be positive");
  SimplexOptConfig opt;
  opt.max_iters = a.max_iters;

  struct Row {
    std::string name;
    double value;
    bool converged;
  };
  std::vector<Row> rows;
  const PurityReport pr = purity_report(rho);
  for (std::size_t i = 0; i < kReportAlphas.size(); ++i) {
    rows.push_back({"p_alpha_" + alpha_key(kReportAlphas[i]), pr.p_alpha[i], true});
  }
  for (double al : alphas) {
    if (std::find(kReportAlphas.begin(), kReportAlphas.end(), al) == kReportAlphas.end()) {
      rows.push_back({"p_alpha_" + alpha_key(al), p_alpha(rho, al), true});
    }
  }
  rows.push_back({"p_rel_entropy", p_rel_entropy(rho), true});
  rows.push_back({"p_geometric", pr.p_geometric, true});
  rows.push_back({"p_linear", pr.p_linear, true});
  rows.push_back({"p_2", p_2(rho), true});
  rows.push_back({"distillable_1shot", static_cast<double>(pr.distillable_1shot), true});
  rows.push_back({"cost_1shot", static_cast<double>(pr.cost_1shot), true});
  for (const Distance& d : distances) {
    if (d.kind != DistanceKind::kRelEntropy) rows.push_back({"p_" + d.name(), p_distance(rho, d), true});
  }
  const std::size_t purity_rows = rows.size();

  rows.push_back({"c_rel_entropy", c_rel_entropy(rho), true});
  rows.push_back({"c_l1", c_l1(rho), true});
  for (const Distance& d : distances) {
    if (d.kind == DistanceKind::kRelEntropy) continue;
    const SimplexResult r = c_distance(rho, d, opt);
    rows.push_back({"c_" + d.name(), r.value, r.converged});
  }
  for (double al : alphas) {
    if (al == 1.0) continue;
    const SimplexResult r = c_alpha(rho, al, opt);
    rows.push_back({"c_alpha_" + alpha_key(al), r.value, r.converged});
  }
  const bool converged = std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.converged; });

  if (a.format == "csv") {
    out << "quantity,value,converged\n";
    for (const Row& r : rows) out << r.name << "," << num(r.value) << "," << (r.converged ? 1 : 0) << "\n";
  } else {
    json doc = header("quantify");
    doc["dim"] = rho.dim();
    if (file.label) doc["label"] = *file.label;
    json purity = json::object(), coherence = json::object();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      if (i < purity_rows) {
        if (r.name == "distillable_1shot" || r.name == "cost_1shot") {
          purity[r.name] = static_cast<int>(r.value);
        } else {
          purity[r.name] = r.value;
        }
      } else {
        coherence[r.name] = {{"value", r.value}, {"converged", r.converged}};
      }
    }
    doc["purity"] = std::move(purity);
    doc["coherence"] = std::move(coherence);
    doc["converged"] = converged;
    emit(out, doc);
  }
  return converged ? kExitOk : kExitOptimizer;
}

int cmd_mcms(const std::string& spectrum, std::size_t dim, const std::string& path, std::ostream& out) {
  std::vector<double> p = parse_list(spectrum, "--spectrum");
  const DensityMatrix rm = mcms(p, dim);
  p.resize(dim, 0.0);
  std::sort(p.begin(), p.end(), std::greater<>());
  const double c = c_rel_entropy(rm);
  const double pr = p_rel_entropy(rm);
  const bool agree = std::abs(c - pr) <= 1e-9;
  if (!path.empty()) write_state_file(path, rm.matrix(), std::string("rho_max"));
  json doc = header("mcms");
  doc["dim"] = dim;
  doc["spectrum"] = p;
  doc["c_rel_entropy"] = c;
  doc["p_rel_entropy"] = pr;
  doc["difference"] = c - pr;
  doc["agree"] = agree;
  doc["c_l1"] = c_l1(rm);
  if (path.empty()) {
    doc["matrix"] = matrix_json(rm.matrix());
  } else {
    doc["out"] = path;
  }
  emit(out, doc);
  return agree ? kExitOk : kExitInvariant;
}

int cmd_convert(const std::string& from, const std::string& to, std::ostream& out) {
  const StateFile a = read_state_file(from);
  const StateFile b = read_state_file(to);
  if (a.state.dim() != b.state.dim()) {
    throw ValidationError(ValidationError::Kind::kDimension, 0.0,
                          "convert: states have dimensions " + std::to_string(a.state.dim()) + " and " +
                              std::to_string(b.state.dim()));
  }
  std::vector<PrefixCheck> record;
  const bool ok = majorizes(a.state.spectrum().values, b.state.spectrum().values, &record);
  json sums = json::array();
  for (const PrefixCheck& p : record) sums.push_back({{"k", p.k}, {"lhs", p.lhs}, {"rhs", p.rhs}});
  json doc = header("convert");
  doc["dim"] = a.state.dim();
  doc["convertible"] = ok;
  doc["from_spectrum"] = a.state.spectrum().values;
  doc["to_spectrum"] = b.state.spectrum().values;
  doc["prefix_sums"] = std::move(sums);
  emit(out, doc);
  return ok == convertible_unital(a.state, b.state) ? kExitOk : kExitInvariant;
}

int cmd_distill(const std::string& path, std::ostream& out) {
  const DensityMatrix rho = read_state_file(path).state;
  const int m = distillable_purity_1shot(rho);
  const ConversionCertificate at = brute_force_distill(rho, m);
  const ConversionCertificate next = brute_force_distill(rho, m + 1);
  json doc = header("distill");
  doc["dim"] = rho.dim();
  doc["spectrum"] = rho.spectrum().values;
  doc["distillable_1shot"] = m;
  doc["certificate"] = certificate_json(at);
  doc["next_certificate"] = certificate_json(next);
  emit(out, doc);
  return at.feasible && !next.feasible ? kExitOk : kExitInvariant;
}

int cmd_cost(const std::string& path, std::ostream& out) {
  const DensityMatrix rho = read_state_file(path).state;
  const int m = purity_cost_1shot(rho);
  const ConversionCertificate at = brute_force_cost(rho, m);
  json doc = header("cost");
  doc["dim"] = rho.dim();
  doc["spectrum"] = rho.spectrum().values;
  doc["cost_1shot"] = m;
  doc["certificate"] = certificate_json(at);
  bool ok = at.feasible;
  if (m > 0) {
    const ConversionCertificate prev = brute_force_cost(rho, m - 1);
    doc["previous_certificate"] = certificate_json(prev);
    ok = ok && !prev.feasible;
  }
  emit(out, doc);
  return ok ? kExitOk : kExitInvariant;
}

struct HierarchyArgs {
  std::string state;
  std::string dims;
  std::string distance = "rel_entropy";
  std::uint64_t seed = 0;
  int restarts = 4;
  int refine = 3;
  int inner_restarts = 1;
  int inner_refine = 1;
};

int cmd_hierarchy(const HierarchyArgs& a, std::ostream& out) {
  const StateFile file = read_state_file(a.state);
  const Bipartition dims = resolve_dims(a.dims, file);
  const Distance dist = Distance::parse(a.distance);
  if (a.restarts < 0 || a.refine < 0 || a.inner_restarts < 0 || a.inner_refine < 0) {
    throw ValidationError(ValidationError::Kind::kArgument, 0.0, "search budgets must be nonnegative");
  }
  const UnitaryBudget outer{a.restarts, a.refine};
  const UnitaryBudget inner{a.inner_restarts, a.inner_refine};
  RandomStream root(a.seed);
  RandomStream rng_h = root.child(0), rng_m = root.child(1);
  // Nested searches multiply costs, so the inner simplex runs are kept short.
  const SimplexOptConfig opt{4, 3000, 1e-10, 1.0, 1e-12, 0x5eed};
  const HierarchyReport h = hierarchy_report(file.state, dims, dist, outer, rng_h, opt);
  const MaxHierarchyReport mh = max_hierarchy_check(file.state, dims, dist, outer, inner, rng_m, opt);
  json doc = header("hierarchy");
  doc["dims"] = {dims.dim_a, dims.dim_b};
  doc["distance"] = dist.name();
  doc["seed"] = a.seed;
  doc["hierarchy"] = {{"purity", h.purity},
                      {"coherence_N", h.coherence_N},
                      {"discord_upper", h.discord_upper},
                      {"coherence_witness", h.coherence_witness},
                      {"holds", h.holds}};
  doc["max_hierarchy"] = {{"purity", mh.purity},
                          {"c_max_lower", mh.c_max_lower},
                          {"d_max_lower", mh.d_max_lower},
                          {"optimizer_gap", mh.optimizer_gap},
                          {"holds", mh.holds}};
  doc["holds"] = h.holds && mh.holds;
  emit(out, doc);
  return h.holds && mh.holds ? kExitOk : kExitInvariant;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials, const std::vector<std::string>& quantifiers,
               int haar, std::ostream& out) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw ValidationError(ValidationError::Kind::kArgument, 0.0, "unknown suite '" + suite + "'");
  }
  SuiteOptions opt;
  opt.quantifiers = quantifiers;
  if (haar > 0) opt.haar_per_state = haar;
  const SuiteReport rep = run_suite(suite, seed, trials, opt);
  json props = json::array();
  for (const PropertyResult& p : rep.properties) {
    json j = {{"name", p.name},
              {"status", !p.passed() ? "FAIL" : (p.known_negative ? "EXPECTED_FAIL" : "PASS")},
              {"known_negative", p.known_negative},
              {"holds", p.holds},
              {"trials", p.trials},
              {"worst", p.worst},
              {"tolerance", p.tolerance}};
    if (!p.detail.empty()) j["detail"] = p.detail;
    if (!p.passed() && p.counterexample) j["counterexample"] = matrix_json(*p.counterexample);
    props.push_back(std::move(j));
  }
  json doc = header("verify");
  doc["suite"] = rep.suite;
  doc["seed"] = rep.seed;
  doc["trials"] = rep.trials;
  doc["passed"] = rep.passed();
  doc["properties"] = std::move(props);
  emit(out, doc);
  return rep.passed() ? kExitOk : kExitInvariant;
}

int cmd_bloch(int grid, const std::string& quantifier, const std::string& path, std::ostream& out) {
  if (grid < 2) throw ValidationError(ValidationError::Kind::kArgument, grid, "--grid must be at least 2");
  std::function<double(const DensityMatrix&)> f;
  if (quantifier.rfind("c_", 0) == 0) {
    f = coherence_quantifier(quantifier).evaluate;
  } else if (quantifier.rfind("p_", 0) == 0) {
    f = purity_quantifier(quantifier).evaluate;
  } else {
    throw ValidationError(ValidationError::Kind::kArgument, 0.0,
                          "unknown quantifier '" + quantifier + "' (expected a c_ or p_ name)");
  }
  std::vector<std::array<double, 3>> points;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      for (int k = 0; k < grid; ++k) {
        auto coord = [grid](int n) { return -1.0 + 2.0 * n / (grid - 1); };
        const std::array<double, 3> r{coord(i), coord(j), coord(k)};
        if (r[0] * r[0] + r[1] * r[1] + r[2] * r[2] <= 1.0 + 1e-12) points.push_back(r);
      }
    }
  }
  std::vector<double> values(points.size());
  parallel_for(points.size(), [&](std::size_t n) {
    values[n] = f(from_bloch(points[n][0], points[n][1], points[n][2]));
  });
  std::string csv = "x,y,z,value\n";
  for (std::size_t n = 0; n < points.size(); ++n) {
    csv += num(points[n][0]) + "," + num(points[n][1]) + "," + num(points[n][2]) + "," + num(values[n]) + "\n";
  }
  emit_text(out, path, csv);
  if (!path.empty()) {
    json doc = header("bloch");
    doc["quantifier"] = quantifier;
    doc["grid"] = grid;
    doc["points"] = points.size();
    doc["out"] = path;
    emit(out, doc);
  }
  return kExitOk;
}

int cmd_random(std::size_t dim, std::size_t rank, std::uint64_t seed, const std::string& path, std::ostream& out) {
  if (dim < 1) throw ValidationError(ValidationError::Kind::kArgument, 0.0, "--dim must be at least 1");
  if (rank == 0) rank = dim;
  if (rank > dim) {
    throw ValidationError(ValidationError::Kind::kArgument, static_cast<double>(rank), "--rank exceeds --dim");
  }
  RandomStream rng(seed);
  const DensityMatrix rho = random_density(dim, rank, rng);
  const std::string label =
      "random dim=" + std::to_string(dim) + " rank=" + std::to_string(rank) + " seed=" + std::to_string(seed);
  emit_text(out, path, state_json(rho.matrix(), label));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherence, purity and correlation quantifiers for density matrices", "cohpure"};
  app.require_subcommand(1);

  QuantifyArgs q;
  auto* quantify = app.add_subcommand("quantify", "Purity and coherence report for a state file");
  quantify->add_option("--state", q.state, "State file (JSON)")->required();
  quantify->add_option("--distance", q.distances, "Distance name(s); default: the full menu")->delimiter(',');
  quantify->add_option("--alpha", q.alphas, "Comma-separated alphas for c_alpha and extra p_alpha");
  quantify->add_option("--max-iters", q.max_iters, "Iteration cap per simplex descent");
  quantify->add_option("--format", q.format)->check(CLI::IsMember({"json", "csv"}));

  std::string spectrum, out_path;
  std::size_t dim = 0;
  auto* mcms_cmd = app.add_subcommand("mcms", "Maximally coherent mixed state for a spectrum");
  mcms_cmd->add_option("--spectrum", spectrum, "Comma-separated eigenvalues")->required();
  mcms_cmd->add_option("--dim", dim)->required();
  mcms_cmd->add_option("--out", out_path, "Write the state here");

  std::string from, to, state;
  auto* convert = app.add_subcommand("convert", "Unital convertibility test via majorization");
  convert->add_option("--from", from)->required();
  convert->add_option("--to", to)->required();
  auto* distill = app.add_subcommand("distill", "Single-shot distillable purity");
  distill->add_option("--state", state)->required();
  auto* cost = app.add_subcommand("cost", "Single-shot purity cost");
  cost->add_option("--state", state)->required();

  HierarchyArgs h;
  auto* hier = app.add_subcommand("hierarchy", "Purity >= coherence >= discord chains for a bipartite state");
  hier->add_option("--state", h.state)->required();
  hier->add_option("--dims", h.dims, "a,b (default: dims in the state file)");
  hier->add_option("--distance", h.distance);
  hier->add_option("--seed", h.seed)->required();
  hier->add_option("--restarts", h.restarts, "Haar candidates per unitary search");
  hier->add_option("--refine", h.refine, "Hill-climbing sweeps per unitary search");
  hier->add_option("--inner-restarts", h.inner_restarts);
  hier->add_option("--inner-refine", h.inner_refine);

  std::string suite;
  std::uint64_t seed = 0;
  int trials = 20, haar = 0;
  std::vector<std::string> quantifiers;
  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", suite)->required();
  verify->add_option("--seed", seed)->required();
  verify->add_option("--trials", trials);
  verify->add_option("--quantifier", quantifiers, "Purity quantifiers for the axioms suite")->delimiter(',');
  verify->add_option("--haar", haar, "Unitaries per spectrum (theorem1)");

  int grid = 0;
  std::string quantifier;
  auto* bloch = app.add_subcommand("bloch", "Quantifier values on a Bloch-ball grid (CSV)");
  bloch->add_option("--grid", grid)->required();
  bloch->add_option("--quantifier", quantifier)->required();
  bloch->add_option("--out", out_path);

  std::size_t rank = 0;
  auto* random = app.add_subcommand("random", "Seeded random density matrix");
  random->add_option("--dim", dim)->required();
  random->add_option("--rank", rank, "default: dim");
  random->add_option("--seed", seed)->required();
  random->add_option("--out", out_path);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*quantify) return cmd_quantify(q, out);
    if (*mcms_cmd) return cmd_mcms(spectrum, dim, out_path, out);
    if (*convert) return cmd_convert(from, to, out);
    if (*distill) return cmd_distill(state, out);
    if (*cost) return cmd_cost(state, out);
    if (*hier) return cmd_hierarchy(h, out);
    if (*verify) return cmd_verify(suite, seed, trials, quantifiers, haar, out);
    if (*bloch) return cmd_bloch(grid, quantifier, out_path, out);
    if (*random) return cmd_random(dim, rank, seed, out_path, out);
  } catch (const ValidationError& e) {
    err << "error: invalid input (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: invalid input (domain): " << e.what() << "\n";
    return kExitInput;
  } catch (const ConvergenceError& e) {
    err << "error: optimizer did not converge (residual " << e.residual() << "): " << e.what() << "\n";
    return kExitOptimizer;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace cohpure::cli
