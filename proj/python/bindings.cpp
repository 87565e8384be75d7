#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dynrigid/commands.hpp"
#include "dynrigid/deformation.hpp"
#include "dynrigid/functionals.hpp"
#include "dynrigid/io.hpp"
#include "dynrigid/lazutkin.hpp"
#include "dynrigid/orbits.hpp"
#include "dynrigid/rigidity.hpp"

namespace py = pybind11;
using namespace dynrigid;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symmetric billiard orbits, Lazutkin coordinates and the linearized isospectral operator";

  static py::exception<Error> error(m, "DynrigidError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<DomainSpec>(m, "DomainSpec")
      .def(py::init<>())
      .def_readwrite("support_coeffs", &DomainSpec::support_coeffs)
      .def_readwrite("sine_coeffs", &DomainSpec::sine_coeffs)
      .def_readwrite("smoothness_r", &DomainSpec::smoothness_r)
      .def_readwrite("n_samples", &DomainSpec::n_samples)
      .def_static("circle", &DomainSpec::circle, py::arg("h0") = 1.0)
      .def_static("single_mode", &DomainSpec::single_mode, py::arg("k"), py::arg("amplitude"));

  py::class_<BoundaryTables>(m, "BoundaryTables")
      .def_readonly("n_samples", &BoundaryTables::n_samples)
      .def_readonly("perimeter", &BoundaryTables::perimeter)
      .def_readonly("s_grid", &BoundaryTables::s_grid)
      .def_readonly("rho", &BoundaryTables::rho)
      .def("min_rho", &BoundaryTables::min_rho);

  m.def("build_domain", py::overload_cast<const DomainSpec&>(&build_domain));
  m.def("closeness_to_circle", &closeness_to_circle);
  m.def("load_domain", &io::load_domain);
  m.def("parse_domain", &io::parse_domain);

  py::class_<SymmetricOrbit>(m, "SymmetricOrbit")
      .def_readonly("q", &SymmetricOrbit::q)
      .def_readonly("s_points", &SymmetricOrbit::s_points)
      .def_readonly("psi_points", &SymmetricOrbit::psi_points)
      .def_readonly("phi_angles", &SymmetricOrbit::phi_angles)
      .def_readonly("length", &SymmetricOrbit::length)
      .def_readonly("grad_residual", &SymmetricOrbit::grad_residual);
  m.def("find_symmetric_orbit",
        [](const BoundaryTables& t, int q) { return find_symmetric_orbit(t, q); }, py::arg("tables"), py::arg("q"));

  py::class_<LazutkinTables>(m, "LazutkinTables")
      .def_readonly("C_L", &LazutkinTables::C_L)
      .def("mu", &LazutkinTables::mu)
      .def("x_at_s", &LazutkinTables::x_at_s)
      .def("mu_deviation", &LazutkinTables::mu_deviation);
  m.def("build_lazutkin", &build_lazutkin);

  py::enum_<Route>(m, "Route").value("Direct", Route::Direct).value("Model", Route::Model);
  py::class_<OperatorMatrix>(m, "OperatorMatrix")
      .def_readonly("Q", &OperatorMatrix::Q)
      .def_readonly("J", &OperatorMatrix::J)
      .def_readonly("route", &OperatorMatrix::route)
      .def_readonly("entries", &OperatorMatrix::entries);
  m.def(
      "assemble_direct",
      [](const BoundaryTables& t, const LazutkinTables& lz, int Q, int J) {
        std::vector<SymmetricOrbit> orbits;
        for (int q = 2; q <= Q; ++q) orbits.push_back(find_symmetric_orbit(t, q));
        return assemble_direct(t, lz, orbits, Q, J);
      },
      py::arg("tables"), py::arg("lazutkin"), py::arg("Q"), py::arg("J"));

  py::class_<GammaNormReport>(m, "GammaNormReport")
      .def_readonly("gamma", &GammaNormReport::gamma)
      .def_readonly("per_row_sums", &GammaNormReport::per_row_sums)
      .def_readonly("norm", &GammaNormReport::norm);
  m.def("gamma_norm", &gamma_norm, py::arg("block"), py::arg("gamma"), py::arg("first_index") = 1);

  py::class_<InjectivityCertificate>(m, "InjectivityCertificate")
      .def_readonly("contraction_norm", &InjectivityCertificate::contraction_norm)
      .def_readonly("passed", &InjectivityCertificate::passed)
      .def_readonly("divisibility_norm", &InjectivityCertificate::divisibility_norm)
      .def_readonly("diagonal_norm", &InjectivityCertificate::diagonal_norm)
      .def_readonly("remainder_norm", &InjectivityCertificate::remainder_norm);
  m.def(
      "certify_injectivity",
      [](const Eigen::MatrixXd& T_R, double gamma) { return certify_injectivity(T_R, gamma); }, py::arg("T_R"),
      py::arg("gamma") = kDefaultGamma);

  py::class_<DeformationFamily>(m, "DeformationFamily")
      .def(py::init<>())
      .def_readwrite("base", &DeformationFamily::base)
      .def_readwrite("direction", &DeformationFamily::direction)
      .def_readwrite("tau_min", &DeformationFamily::tau_min)
      .def_readwrite("tau_max", &DeformationFamily::tau_max)
      .def("n_of_psi", &DeformationFamily::n_of_psi);
  py::class_<DerivativeCheck>(m, "DerivativeCheck")
      .def_readonly("fd_slope", &DerivativeCheck::fd_slope)
      .def_readonly("functional", &DerivativeCheck::functional)
      .def_readonly("passed", &DerivativeCheck::passed);
  m.def(
      "length_derivative_check",
      [](const DeformationFamily& f, int q, double tau) { return length_derivative_check(f, q, tau); },
      py::arg("family"), py::arg("q"), py::arg("tau") = 0.0);
  m.def(
      "perimeter_derivative_check",
      [](const DeformationFamily& f, double tau) { return perimeter_derivative_check(f, tau); },
      py::arg("family"), py::arg("tau") = 0.0);
}
