#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symflat/cli.hpp"
#include "symflat/dsl.hpp"
#include "symflat/lefschetz.hpp"

namespace py = pybind11;
using namespace symflat;

namespace {

std::vector<std::vector<std::string>> entries(const MatrixForm& m) {
  std::vector<std::vector<std::string>> out(static_cast<std::size_t>(m.rank()));
  for (int i = 0; i < m.rank(); ++i)
    for (int j = 0; j < m.rank(); ++j) out[static_cast<std::size_t>(i)].push_back(to_string(m.entry(i, j)));
  return out;
}

py::tuple as_tuple(const cli::Report& r) { return py::make_tuple(r.code, r.json); }

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact exterior calculus, TTY algebra and twisted primitive cohomology";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Form>(m, "Form")
      .def_static("parse", &parse_form, py::arg("src"), py::arg("n"), py::arg("degree") = py::none())
      .def_static("omega", &Form::omega, py::arg("n"))
      .def_property_readonly("n", &Form::chart_dim)
      .def_property_readonly("degree", &Form::degree)
      .def("is_zero", &Form::is_zero)
      .def("is_primitive", py::overload_cast<const Form&>(&is_primitive))
      .def("wedge", py::overload_cast<const Form&, const Form&>(&wedge))
      .def("d", py::overload_cast<const Form&>(&exterior_d))
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__str__", py::overload_cast<const Form&>(&to_string))
      .def("__repr__", [](const Form& f) { return "Form('" + to_string(f) + "', n=" + std::to_string(f.chart_dim()) + ")"; });

  m.def("decompose", [](const Form& f) { return decompose(f).parts; }, py::arg("form"),
        "Primitive components beta_r with form = sum_r omega^r beta_r.");
  m.def(
      "reassemble",
      [](const std::vector<Form>& parts, int n, int degree) {
        LefschetzComponents c{n, degree, parts};
        return reassemble(c);
      },
      py::arg("parts"), py::arg("n"), py::arg("degree"));
  m.def("L", py::overload_cast<int, const Form&>(&L_power), py::arg("p"), py::arg("form"));
  m.def("Pi", py::overload_cast<int, const Form&>(&pi_p), py::arg("p"), py::arg("form"));
  m.def("del_plus", py::overload_cast<const Form&>(&del_plus), py::arg("beta"));
  m.def("del_minus", py::overload_cast<const Form&>(&del_minus), py::arg("beta"));

  py::class_<Connection>(m, "Connection")
      .def_static("from_json", &cli::parse_connection, py::arg("text"))
      .def_static("load", &cli::load_connection, py::arg("path"))
      .def_property_readonly("n", &Connection::chart_dim)
      .def_property_readonly("rank", &Connection::rank)
      .def_property_readonly("A", [](const Connection& c) { return entries(c.A()); })
      .def_property_readonly("F", [](const Connection& c) { return entries(c.F()); })
      .def_property_readonly("Phi", [](const Connection& c) { return entries(c.Phi()); });

  m.def("decompose_report", [](int n, const std::string& f) { return as_tuple(cli::decompose_report(n, f)); });
  m.def("flatness_report",
        [](const Connection& c, bool require_flat) { return as_tuple(cli::flatness_report(c, require_flat)); });
  m.def("ainfty_report", [](int n, int trials, std::uint64_t seed, int max_deg, int rank) {
    return as_tuple(cli::ainfty_report(n, trials, seed, max_deg, rank));
  });
  m.def("twist_square_report", [](const Connection& c, int trials, std::uint64_t seed, int max_deg) {
    return as_tuple(cli::twist_square_report(c, trials, seed, max_deg));
  });
  m.def("cohomology_report",
        [](const Connection& c, const std::string& complex, int truncation, const std::vector<int>& margins) {
          cli::Report r;
          {
            py::gil_scoped_release release;
            r = cli::cohomology_report(c, complex, truncation, margins);
          }
          return as_tuple(r);
        });
  m.def("cone_verify_report", [](const Connection& c, int trials, std::uint64_t seed, int max_deg) {
    return as_tuple(cli::cone_verify_report(c, trials, seed, max_deg));
  });
}
