#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ergocert/analytic.hpp"
#include "ergocert/certify.hpp"
#include "ergocert/ergotropy.hpp"
#include "ergocert/measurement.hpp"
#include "ergocert/models.hpp"
#include "ergocert/pauli.hpp"
#include "ergocert/sdp.hpp"
#include "ergocert/version.hpp"

namespace py = pybind11;
using namespace ergocert;

namespace {

FeasibleSetSpec spec_from_constraints(
    int dim,
    const std::vector<std::tuple<std::string, double, double>>& constraints) {
  FeasibleSetSpec spec;
  spec.dim = dim;
  for (const auto& [label, target, epsilon] : constraints) {
    spec.add_pauli(parse_pauli(label), target, epsilon);
    if (epsilon > 0) spec.provenance = Provenance::Estimated;
  }
  return spec;
}

CertifyOptions options_from_objective(const std::string& objective,
                                      const HamiltonianData& H) {
  CertifyOptions options;
  if (objective == "energy") {
    options.objective = StepOneObjective::linear_functional(H.matrix);
  } else if (objective != "purity") {
    throw Error(ErrorKind::InvalidArgument,
                "objective must be 'purity' or 'energy'");
  }
  return options;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "certified ergotropy lower bounds from partial information";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "ErgocertError");

  py::class_<HamiltonianData>(m, "Hamiltonian")
      .def_readonly("matrix", &HamiltonianData::matrix)
      .def_readonly("energies", &HamiltonianData::energies)
      .def_readonly("eigenvectors", &HamiltonianData::eigenvectors)
      .def_static("from_matrix", &HamiltonianData::from_matrix)
      .def("__repr__", [](const HamiltonianData& h) {
        return "<Hamiltonian dim=" + std::to_string(h.dim()) + ">";
      });

  py::class_<ErgotropyReport>(m, "ErgotropyReport")
      .def_readonly("value", &ErgotropyReport::value)
      .def_readonly("optimal_unitary", &ErgotropyReport::optimal_unitary)
      .def_property_readonly("passive_state",
                             [](const ErgotropyReport& r) {
                               return r.passive_state.matrix;
                             })
      .def_readonly("state_spectrum", &ErgotropyReport::state_spectrum);

  m.def("pauli_matrix",
        [](const std::string& label) {
          return pauli_matrix(parse_pauli(label));
        },
        py::arg("label"));
  m.def("pauli_weight",
        [](const std::string& label) { return parse_pauli(label).weight(); },
        py::arg("label"));
  m.def("hierarchical_order",
        [](int n, std::uint64_t seed) {
          std::vector<std::string> labels;
          for (const auto& p : hierarchical_order(n, seed)) {
            labels.push_back(p.label());
          }
          return labels;
        },
        py::arg("n"), py::arg("seed"));
  m.def("expectation",
        [](const Eigen::MatrixXcd& rho, const std::string& label) {
          return expectation(rho, parse_pauli(label));
        },
        py::arg("rho"), py::arg("pauli"));

  m.def("build_spin_chain",
        [](int n, double j1, double j2, double b, double g, double jy,
           double dz) {
          return build_spin_chain({n, j1, j2, b, g, jy, dz});
        },
        py::arg("n"), py::arg("j1") = 0.0, py::arg("j2") = 0.0,
        py::arg("b") = 0.0, py::arg("g") = 0.0, py::arg("jy") = 0.0,
        py::arg("dz") = 0.0);

  m.def("reference_state",
        [](const std::string& kind, int n, const HamiltonianData* H,
           double param) {
          return make_reference_state(parse_state_kind(kind), n, H, param)
              .matrix;
        },
        py::arg("kind"), py::arg("n"), py::arg("hamiltonian") = nullptr,
        py::arg("param") = 0.0);

  m.def("ergotropy",
        [](const Eigen::MatrixXcd& rho, const HamiltonianData& H) {
          return exact_ergotropy(DensityMatrix::from_matrix(rho), H);
        },
        py::arg("rho"), py::arg("hamiltonian"));
  m.def("extraction_value",
        [](const Eigen::MatrixXcd& rho, const HamiltonianData& H,
           const Eigen::MatrixXcd& U) {
          return extraction_value(DensityMatrix::from_matrix(rho), H, U);
        },
        py::arg("rho"), py::arg("hamiltonian"), py::arg("unitary"));
  m.def("incoherent_ergotropy",
        [](const Eigen::MatrixXcd& rho, const HamiltonianData& H) {
          return dephase_incoherent(DensityMatrix::from_matrix(rho), H).second;
        },
        py::arg("rho"), py::arg("hamiltonian"));

  m.def("certify",
        [](const HamiltonianData& H,
           const std::vector<std::tuple<std::string, double, double>>&
               constraints,
           const std::string& objective) {
          const FeasibleSetSpec spec =
              spec_from_constraints(static_cast<int>(H.dim()), constraints);
          const CertificationResult result =
              certify(spec, H, options_from_objective(objective, H));
          py::dict out;
          out["bound"] = result.bound;
          out["raw_min"] = result.raw_min;
          out["unitary"] = result.unitary;
          out["step1_state"] = result.step1_state.matrix;
          out["step1_iterations"] = result.step1.iterations;
          out["step2_iterations"] = result.step2.iterations;
          return out;
        },
        py::arg("hamiltonian"), py::arg("constraints"),
        py::arg("objective") = "purity",
        "Certify a lower bound from (pauli_label, target, epsilon) triples.");

  m.def("min_purity_state",
        [](int dim,
           const std::vector<std::tuple<std::string, double, double>>&
               constraints) {
          const FeasibleSetSpec spec = spec_from_constraints(dim, constraints);
          return step_one_select_state(spec, StepOneObjective::min_purity())
              .matrix;
        },
        py::arg("dim"), py::arg("constraints"));

  m.def("hoeffding_epsilon", &hoeffding_epsilon, py::arg("shots"),
        py::arg("observable_count"), py::arg("delta"));
  m.def("simulate_shots",
        [](const Eigen::MatrixXcd& rho, const std::string& label,
           long long shots, std::uint64_t seed) {
          return simulate_shots(DensityMatrix::from_matrix(rho),
                                parse_pauli(label), shots, seed)
              .estimate;
        },
        py::arg("rho"), py::arg("pauli"), py::arg("shots"), py::arg("seed"));

  m.def("energy_basis_bound", &energy_basis_bound, py::arg("populations"),
        py::arg("energies"));
  m.def("qubit_xz_bound",
        [](double x_star, double z_star, double e0, double e1) {
          const QubitXZBound out = qubit_xz_bound({x_star, z_star, e0, e1});
          return py::make_tuple(out.bound, out.coherent_gain);
        },
        py::arg("x_star"), py::arg("z_star"), py::arg("e0"), py::arg("e1"));

  m.def("load_records",
        [](const std::string& path) {
          const ExperimentPlan plan = load_records(path);
          py::list records;
          for (const auto& r : plan.records) {
            records.append(
                py::make_tuple(r.pauli.label(), r.estimate, r.shots));
          }
          py::dict out;
          out["records"] = records;
          out["delta"] = plan.delta.has_value() ? py::cast(*plan.delta)
                                                : py::none();
          out["warnings"] = plan.warnings;
          return out;
        },
        py::arg("path"));
}
