#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ptrobin/io.hpp"
#include "ptrobin/metric.hpp"
#include "ptrobin/roots.hpp"
#include "ptrobin/spectrum.hpp"
#include "ptrobin/verify.hpp"

namespace py = pybind11;
using namespace ptrobin;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Samples on the uniform grid with n = len(values) - 1 intervals.
GridFunction to_grid_function(const ComplexArray& values, double d) {
  if (values.ndim() != 1 || values.size() < 2)
    throw std::invalid_argument("values must be a 1-d array of at least two samples");
  const auto* p = values.data();
  return GridFunction(Grid(d, static_cast<std::size_t>(values.size()) - 1),
                      std::vector<cplx>(p, p + values.size()));
}

ComplexArray to_array(const GridFunction& f) {
  ComplexArray out(static_cast<py::ssize_t>(f.size()));
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

ComplexArray evaluate(const AnalyticFunction& f, const RealArray& x) {
  ComplexArray out(x.size());
  const double* in = x.data();
  cplx* dst = out.mutable_data();
  for (py::ssize_t i = 0; i < x.size(); ++i) dst[i] = f(in[i]);
  return out;
}

py::dict eigenvalue_dict(const GeneralEigenvalue& e) {
  py::dict d;
  d["k"] = e.k;
  d["k2"] = e.k2;
  d["residual"] = e.residual;
  d["status"] = e.status == RootStatus::resolved ? "resolved" : "unresolved";
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "PT-symmetric Robin Laplacian on (0, d): spectrum, metric operator, checks.";

  auto degenerate = py::register_exception<DegenerateAlphaError>(m, "DegenerateAlphaError",
                                                                 PyExc_ValueError);
  py::register_exception<NotInDomainError>(m, "NotInDomainError", PyExc_ValueError);
  (void)degenerate;

  m.def("eigenvalue",
        [](std::size_t j, double alpha, double d) { return eigenvalue(j, {alpha, 0.0, d}); },
        py::arg("j"), py::arg("alpha"), py::arg("d"));

  m.def("is_degenerate",
        [](double alpha, double d) { return check_nondegenerate({alpha, 0.0, d}).degenerate; },
        py::arg("alpha"), py::arg("d"));

  m.def("psi",
        [](std::size_t j, double alpha, double d, const RealArray& x) {
          return evaluate(psi_eigenfunction(j, {alpha, 0.0, d}), x);
        },
        py::arg("j"), py::arg("alpha"), py::arg("d"), py::arg("x"),
        "Eigenfunction psi_j of H_alpha at the points x.");

  m.def("phi",
        [](std::size_t j, double alpha, double d, const RealArray& x) {
          return evaluate(phi_eigenfunction(j, {alpha, 0.0, d}), x);
        },
        py::arg("j"), py::arg("alpha"), py::arg("d"), py::arg("x"),
        "Eigenfunction phi_j of the adjoint at the points x.");

  m.def("theta_apply",
        [](const ComplexArray& values, double alpha, double d, const std::string& method,
           std::size_t cutoff) {
          const GridFunction psi = to_grid_function(values, d);
          const MetricConfig cfg{alpha, d, cutoff};
          if (method == "closed") return to_array(theta_apply_closed(psi, cfg));
          if (method == "series") return to_array(theta_apply_series(psi, cfg).value);
          throw std::invalid_argument("method must be 'closed' or 'series'");
        },
        py::arg("values"), py::arg("alpha"), py::arg("d"), py::arg("method") = "closed",
        py::arg("cutoff") = 1000,
        "Theta(alpha) applied to samples on the uniform grid over [0, d].");

  m.def("quadratic_form",
        [](const ComplexArray& values, double alpha, double d) {
          return quadratic_form(to_grid_function(values, d), {alpha, d});
        },
        py::arg("values"), py::arg("alpha"), py::arg("d"));

  m.def("general_eigenvalues",
        [](double alpha, double beta, double d, double k_max) {
          const RootSearchResult r = general_eigenvalues({alpha, beta, d}, k_max);
          py::list rows;
          for (const auto& e : r.eigenvalues) rows.append(eigenvalue_dict(e));
          py::dict out;
          out["eigenvalues"] = rows;
          out["contour_count"] = r.contour_count;
          out["unresolved_count"] = r.unresolved_count;
          return out;
        },
        py::arg("alpha"), py::arg("beta"), py::arg("d"), py::arg("k_max"));

  m.def("verify_json",
        [](std::optional<std::vector<std::string>> suites, std::optional<std::vector<double>> alphas,
           std::size_t n, std::uint64_t seed) {
          SuiteOptions o;
          if (suites) o.suites = *suites;
          if (alphas) o.alphas = *alphas;
          o.n = n;
          o.seed = seed;
          VerificationReport r;
          {
            py::gil_scoped_release release;
            r = run_all(o);
          }
          return report_json(r);
        },
        py::arg("suites") = py::none(), py::arg("alphas") = py::none(), py::arg("n") = 4096,
        py::arg("seed") = SuiteOptions{}.seed);
}
