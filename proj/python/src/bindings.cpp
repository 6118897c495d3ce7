#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cohpure/cli.hpp"
#include "cohpure/coherence.hpp"
#include "cohpure/correlations.hpp"
#include "cohpure/errors.hpp"
#include "cohpure/majorization.hpp"
#include "cohpure/purity.hpp"
#include "cohpure/verify.hpp"

namespace py = pybind11;
using namespace cohpure;

namespace {

// Python side passes plain complex arrays; every call validates its input.
DensityMatrix state(const ComplexMatrix& m) { return validate(m); }

Bipartition split(const std::pair<std::size_t, std::size_t>& d) { return {d.first, d.second}; }

SimplexOptConfig simplex_config(int restarts, int max_iters) {
  SimplexOptConfig c;
  c.restarts = restarts;
  c.max_iters = max_iters;
  return c;
}

py::dict suite_dict(const SuiteReport& r) {
  py::list props;
  for (const PropertyResult& p : r.properties) {
    py::dict d;
    d["name"] = p.name;
    d["passed"] = p.passed();
    d["holds"] = p.holds;
    d["known_negative"] = p.known_negative;
    d["trials"] = p.trials;
    d["worst"] = p.worst;
    d["tolerance"] = p.tolerance;
    d["detail"] = p.detail;
    props.append(d);
  }
  py::dict out;
  out["suite"] = r.suite;
  out["seed"] = r.seed;
  out["trials"] = r.trials;
  out["passed"] = r.passed();
  out["properties"] = props;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coherence, purity and correlation quantifiers for finite-dimensional density matrices";

  auto base = py::register_exception<Error>(m, "CohpureError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

  m.def("validate", [](const ComplexMatrix& a) { return state(a).matrix(); }, py::arg("rho"),
        "Check that rho is a density matrix; returns the Hermitized matrix.");
  m.def("spectrum", [](const ComplexMatrix& a) { return state(a).spectrum().values; }, py::arg("rho"));
  m.def("von_neumann", [](const ComplexMatrix& a) { return von_neumann(state(a)); }, py::arg("rho"));
  m.def("renyi_entropy", [](const ComplexMatrix& a, double alpha) { return renyi_entropy(state(a), alpha); },
        py::arg("rho"), py::arg("alpha"));
  m.def("random_density",
        [](std::size_t d, std::size_t rank, std::uint64_t seed) {
          RandomStream rng(seed);
          return random_density(d, rank == 0 ? d : rank, rng).matrix();
        },
        py::arg("d"), py::arg("rank") = 0, py::arg("seed"));
  m.def("haar_unitary",
        [](std::size_t d, std::uint64_t seed) {
          RandomStream rng(seed);
          return haar_unitary(d, rng);
        },
        py::arg("d"), py::arg("seed"));
  m.def("from_bloch", [](double x, double y, double z) { return from_bloch(x, y, z).matrix(); });

  // coherence
  m.def("dephase", [](const ComplexMatrix& a) { return dephase(state(a)).matrix(); }, py::arg("rho"));
  m.def("c_rel_entropy", [](const ComplexMatrix& a) { return c_rel_entropy(state(a)); }, py::arg("rho"));
  m.def("c_l1", [](const ComplexMatrix& a) { return c_l1(state(a)); }, py::arg("rho"));
  m.def("c_distance",
        [](const ComplexMatrix& a, const std::string& distance, int restarts, int max_iters) {
          const SimplexResult r = c_distance(state(a), Distance::parse(distance), simplex_config(restarts, max_iters));
          return py::make_tuple(r.value, r.converged);
        },
        py::arg("rho"), py::arg("distance"), py::arg("restarts") = 20, py::arg("max_iters") = 5000,
        "(value, converged) of min over incoherent sigma of D(rho, sigma).");
  m.def("c_alpha",
        [](const ComplexMatrix& a, double alpha, int restarts, int max_iters) {
          const SimplexResult r = c_alpha(state(a), alpha, simplex_config(restarts, max_iters));
          return py::make_tuple(r.value, r.converged);
        },
        py::arg("rho"), py::arg("alpha"), py::arg("restarts") = 20, py::arg("max_iters") = 5000);
  m.def("c_max_closed", [](const ComplexMatrix& a, const std::string& distance) {
    return c_max_closed(state(a), Distance::parse(distance));
  });
  m.def("mcms", [](const std::vector<double>& p, std::size_t d) { return mcms(p, d).matrix(); }, py::arg("spectrum"),
        py::arg("d"), "Maximally coherent mixed state with the given spectrum.");
  m.def("optimal_unitary", [](const ComplexMatrix& a) { return optimal_unitary(state(a)); }, py::arg("rho"));
  m.def("mio_channel_from_unitary", [](const ComplexMatrix& u) { return mio_channel_from_unitary(u).kraus(); },
        py::arg("u"), "Kraus operators of the MIO channel built from u.");
  m.def("distance_value", [](const ComplexMatrix& a, const ComplexMatrix& b, const std::string& distance) {
    return distance_value(state(a), state(b), Distance::parse(distance));
  });

  // purity
  m.def("p_alpha", [](const ComplexMatrix& a, double alpha) { return p_alpha(state(a), alpha); }, py::arg("rho"),
        py::arg("alpha"));
  m.def("p_rel_entropy", [](const ComplexMatrix& a) { return p_rel_entropy(state(a)); }, py::arg("rho"));
  m.def("p_linear", [](const ComplexMatrix& a) { return p_linear(state(a)); }, py::arg("rho"));
  m.def("p_2", [](const ComplexMatrix& a) { return p_2(state(a)); }, py::arg("rho"));
  m.def("p_geometric", [](const ComplexMatrix& a) { return p_geometric(state(a)); }, py::arg("rho"));
  m.def("p_distance", [](const ComplexMatrix& a, const std::string& distance) {
    return p_distance(state(a), Distance::parse(distance));
  });
  m.def("purity_report", [](const ComplexMatrix& a) {
    const PurityReport r = purity_report(state(a));
    py::dict alphas;
    for (std::size_t i = 0; i < kReportAlphas.size(); ++i) alphas[py::float_(kReportAlphas[i])] = r.p_alpha[i];
    py::dict d;
    d["p_alpha"] = alphas;
    d["p_geometric"] = r.p_geometric;
    d["p_linear"] = r.p_linear;
    d["distillable_1shot"] = r.distillable_1shot;
    d["cost_1shot"] = r.cost_1shot;
    return d;
  });

  // majorization
  m.def("majorizes", [](const std::vector<double>& p, const std::vector<double>& q) { return majorizes(p, q); });
  m.def("convertible_unital", [](const ComplexMatrix& a, const ComplexMatrix& b) {
    return convertible_unital(state(a), state(b));
  });
  m.def("distillable_purity_1shot", [](const ComplexMatrix& a) { return distillable_purity_1shot(state(a)); });
  m.def("purity_cost_1shot", [](const ComplexMatrix& a) { return purity_cost_1shot(state(a)); });

  // correlations
  m.def("negativity", [](const ComplexMatrix& a, std::pair<std::size_t, std::size_t> dims) {
    return negativity(state(a), split(dims));
  });
  m.def("hierarchy_report",
        [](const ComplexMatrix& a, std::pair<std::size_t, std::size_t> dims, const std::string& distance,
           std::uint64_t seed, int restarts, int refine) {
          RandomStream rng(seed);
          const HierarchyReport r =
              hierarchy_report(state(a), split(dims), Distance::parse(distance), {restarts, refine}, rng);
          py::dict d;
          d["purity"] = r.purity;
          d["coherence_N"] = r.coherence_N;
          d["discord_upper"] = r.discord_upper;
          d["holds"] = r.holds;
          return d;
        },
        py::arg("rho"), py::arg("dims"), py::arg("distance") = "rel_entropy", py::arg("seed"),
        py::arg("restarts") = 8, py::arg("refine") = 20);

  // suites and CLI
  m.def("suite_names", &suite_names);
  m.def("run_suite",
        [](const std::string& suite, std::uint64_t seed, int trials) {
          SuiteReport r;
          {
            py::gil_scoped_release release;
            r = run_suite(suite, seed, trials);
          }
          return suite_dict(r);
        },
        py::arg("suite"), py::arg("seed"), py::arg("trials"));
  m.def("cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a cohpure command in-process; returns (exit_code, stdout, stderr).");
}
