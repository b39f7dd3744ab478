#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ptlab/boundary.hpp"
#include "ptlab/eigen.hpp"
#include "ptlab/metric.hpp"
#include "ptlab/model_io.hpp"
#include "ptlab/presets.hpp"
#include "ptlab/sweep.hpp"

namespace py = pybind11;
using namespace ptlab;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

py::array_t<Complex> to_numpy(const CMatrix& m) {
  py::array_t<Complex> out({m.rows(), m.cols()});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = m(i, j);
  return out;
}

CMatrix from_numpy(const ComplexArray& a) {
  if (a.ndim() != 2) throw Error(ErrorKind::invalid_dimension, "expected a two-dimensional array");
  auto v = a.unchecked<2>();
  CMatrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = v(i, j);
  return m;
}

py::dict certificate_dict(const MetricCertificate& c) {
  py::dict d;
  d["theta"] = to_numpy(c.theta);
  d["residual"] = c.dieudonne_residual;
  d["min_eigenvalue"] = c.min_eigenvalue;
  d["classification"] = std::string(to_string(c.classification));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectra, exceptional points and metrics of PT-symmetric lattice Hamiltonians";

  py::register_exception<Error>(m, "PtlabError", PyExc_ValueError);

  m.def("presets", [] {
    std::vector<std::string> names;
    for (const auto& p : list_presets()) names.push_back(p.name);
    return names;
  });

  m.def(
      "hamiltonian",
      [](const std::string& preset, double parameter, std::size_t n) {
        return to_numpy(build_endpoint_hamiltonian(preset_model(preset, parameter, n)));
      },
      py::arg("preset"), py::arg("parameter"), py::arg("n") = 0);

  m.def(
      "hamiltonian_from_json",
      [](const std::string& text) { return to_numpy(build_endpoint_hamiltonian(parse_model_json(text))); },
      py::arg("text"));

  m.def(
      "eigenvalues",
      [](const ComplexArray& h, double tol) {
        const auto s = eigenvalues(from_numpy(h), tol);
        return py::make_tuple(py::array_t<Complex>(s.eigenvalues.size(), s.eigenvalues.data()), s.all_real);
      },
      py::arg("h"), py::arg("tol") = 1e-8);

  m.def(
      "kep_locate",
      [](const std::string& preset, double lo, double hi, double tol) {
        return kep_locate(preset_family(preset), lo, hi, tol);
      },
      py::arg("preset"), py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-10);

  m.def(
      "defectiveness_at",
      [](const ComplexArray& h, Complex lambda, double tol) {
        const auto d = defectiveness_at(from_numpy(h), lambda, tol);
        return py::make_tuple(d.algebraic_multiplicity, d.geometric_multiplicity);
      },
      py::arg("h"), py::arg("eigenvalue"), py::arg("tol") = 1e-6);

  m.def(
      "bound_states",
      [](const std::string& preset, double parameter, std::size_t steps, double tol) {
        const auto model = preset_model(preset, parameter);
        std::vector<Complex> energies;
        for (const auto& s : bound_states(model, default_energy_window(model, steps), tol).states)
          energies.push_back(s.energy);
        return energies;
      },
      py::arg("preset"), py::arg("parameter"), py::arg("steps") = 4001, py::arg("tol") = 1e-9);

  m.def(
      "metric_spectral",
      [](const ComplexArray& h, std::vector<double> kappa) { return certificate_dict(metric_spectral(from_numpy(h), kappa)); },
      py::arg("h"), py::arg("kappa") = std::vector<double>{});

  m.def(
      "recurrent_metric",
      [](const ComplexArray& h, std::vector<double> params) {
        const CMatrix hm = from_numpy(h);
        return certificate_dict(certify(hm, recurrent_metric_family(hm).instantiate(params)));
      },
      py::arg("h"), py::arg("params"));

  m.def(
      "dieudonne_residual",
      [](const ComplexArray& h, const ComplexArray& theta) { return dieudonne_residual(from_numpy(h), from_numpy(theta)); },
      py::arg("h"), py::arg("theta"));

  m.def("sylvester_nullspace_dimension",
        [](const ComplexArray& h) { return sylvester_nullspace(from_numpy(h)).size(); }, py::arg("h"));

  m.def("critical_w", &critical_w, py::arg("tol") = 1e-6, py::arg("eps") = 1e-6);

  m.def(
      "pseudometric_tau",
      [](double r, double xi) {
        const std::vector<double> grid{xi};
        return pseudometric_scan(r, grid).front().tau;
      },
      py::arg("r"), py::arg("xi"));

  m.def(
      "xi_optimize", [](double lo, double hi) { return xi_optimize(pseudometric_branches(), lo, hi); },
      py::arg("lo") = 0.0, py::arg("hi") = 0.8);
}
