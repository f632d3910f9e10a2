#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "je/eisenstein.hpp"
#include "je/errors.hpp"
#include "je/lattice.hpp"
#include "je/local_density.hpp"
#include "je/validation.hpp"

namespace py = pybind11;
using namespace je;

namespace {

std::string rat(const Rational& r) { return r.to_string(); }

Lattice lattice_arg(const py::object& o) {
    if (py::isinstance<py::str>(o)) return preset_lattice(o.cast<std::string>());
    return o.cast<Lattice>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Jacobi Eisenstein series for lattice index";

    static py::exception<Error> exc(m, "JeError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object code = py::str(std::string(errc_name(e.code())));
            PyErr_SetObject(exc.ptr(), py::make_tuple(code, py::str(e.what())).ptr());
        }
    });

    py::class_<Lattice>(m, "Lattice")
        .def_static("preset", &preset_lattice)
        .def_static("from_gram", [](const IntMatrix& g, const std::string& name) { return validate_lattice(g, name); },
                    py::arg("gram"), py::arg("name") = "custom")
        .def_property_readonly("name", &Lattice::name)
        .def_property_readonly("rank", &Lattice::rank)
        .def_property_readonly("det", &Lattice::det)
        .def_property_readonly("level", &Lattice::level)
        .def_property_readonly("gram", &Lattice::gram)
        .def("__repr__", [](const Lattice& L) { return "Lattice('" + L.name() + "', rank=" + std::to_string(L.rank()) + ")"; });

    m.def("preset_names", &preset_names);
    m.def("gamma_factor", [](int k, int N, long long D) {
        auto g = gamma_factor(k, N, Rational(D));
        return py::make_tuple(rat(g.coeff()), g.pi_power());
    }, "(rational string, power of pi)");
    m.def("coefficient_unimodular", [](int k, int N, long long D) { return rat(coefficient_unimodular(k, N, D)); });
    m.def("coefficient_na1", [](int k, int N, long long n, const IntVec& h) { return rat(coefficient_na1(k, N, n, h)); });
    m.def("coefficient_general_m",
          [](int k, int mm, const py::object& L, long long n, const IntVec& w, int c_max) {
              const Lattice lat = lattice_arg(L);
              auto c = coefficient_general_m(k, mm, lat, n, lat.dual_from_integer(w), c_max);
              return py::make_tuple(c.value, c.error_bound);
          },
          py::arg("k"), py::arg("m"), py::arg("lattice"), py::arg("n"), py::arg("s_lambda"), py::arg("c_max") = 40,
          "lambda is given as the integer vector S lambda; returns (value, error_bound)");
    m.def("density",
          [](const py::object& L, const py::object& p, long long t, std::optional<IntVec> lam) {
              long long place = 0;
              if (!(py::isinstance<py::str>(p) && p.cast<std::string>() == "inf")) place = p.cast<long long>();
              auto r = density(lattice_arg(L), place, t, lam);
              py::dict d;
              d["value"] = rat(r.value.coeff());
              d["pi_power"] = r.value.pi_power();
              d["method"] = method_name(r.method);
              d["stabilization_exponent"] = r.stabilization_exponent;
              return d;
          },
          py::arg("lattice"), py::arg("p"), py::arg("t"), py::arg("lam") = py::none());
    m.def("q_expansion_json",
          [](const py::object& L, int k, int mm, long long n_max, const std::string& pipeline, int a_max, int c_max) {
              return q_expansion(lattice_arg(L), k, mm, n_max, {parse_pipeline(pipeline), a_max, c_max}).to_json();
          },
          py::arg("lattice"), py::arg("k"), py::arg("m") = 1, py::arg("n_max") = 2, py::arg("pipeline") = "auto",
          py::arg("a_max") = 50, py::arg("c_max") = 40);
    m.def("theta_check",
          [](const py::object& L, std::complex<double> tau, double q_trunc) {
              const Lattice lat = lattice_arg(L);
              auto r = check_theta_transformation(lat, RatVec(lat.rank(), Rational(0)), tau,
                                                  CVec(lat.rank(), 0.0), q_trunc, 1e-8);
              return py::make_tuple(r.pass, r.rel_error);
          },
          py::arg("lattice"), py::arg("tau"), py::arg("q_trunc") = 8);
}
