// Python bindings for the core pipeline: initial-data profiles, the direct
// scattering transform, phase geometry, the scalar cut factor with its
// winding admissibility test, the two-term long-time formula, and the
// collocation oracle.  Vectors cross the boundary by copy; long-running
// calls release the GIL.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "nlh/asymptotics.hpp"
#include "nlh/deltafun.hpp"
#include "nlh/phase.hpp"
#include "nlh/rhoracle.hpp"
#include "nlh/scattering.hpp"
#include "nlh/specfun.hpp"

namespace py = pybind11;

using nlh::cplx;
using nlh::asymptotics::LeadingOrder;
using nlh::asymptotics::M1Convention;
using nlh::deltafun::DeltaData;
using nlh::deltafun::DeltaEvaluator;
using nlh::deltafun::Point;
using nlh::modelrh::Orientation;
using nlh::phase::PhaseGeometry;
using nlh::rhoracle::OracleMode;
using nlh::rhoracle::OracleResult;
using nlh::scattering::Profile;
using nlh::scattering::ProfileKind;
using nlh::scattering::ScatteringData;
using nlh::scattering::ScatteringMatrix;
using nlh::specfun::CutSide;

namespace {

const char* kind_name(ProfileKind k) {
  switch (k) {
    case ProfileKind::gaussian: return "gaussian";
    case ProfileKind::sech: return "sech";
    case ProfileKind::table: return "table";
  }
  return "?";
}

const char* mode_name(OracleMode m) {
  switch (m) {
    case OracleMode::automatic: return "automatic";
    case OracleMode::direct: return "direct";
    case OracleMode::deformed: return "deformed";
  }
  return "?";
}

}  // namespace

PYBIND11_MODULE(_nlhirota, m) {
  m.doc() =
      "Inverse-scattering and long-time asymptotics toolkit for the reverse "
      "space-time nonlocal Hirota equation (C++ core).";

  // ---- profiles ------------------------------------------------------------
  py::class_<Profile>(m, "Profile",
                      "Rapidly decaying initial datum q0; callable at real x.")
      .def_readonly("amplitude", &Profile::amplitude)
      .def_readonly("width", &Profile::width)
      .def_readonly("center", &Profile::center)
      .def_readonly("halfwidth", &Profile::halfwidth)
      .def_property_readonly(
          "kind", [](const Profile& p) { return std::string(kind_name(p.kind)); })
      .def("effective_halfwidth", &Profile::effective_halfwidth,
           "Half-width of the working interval actually used by the solvers.")
      .def("__call__", [](const Profile& p, double x) { return p(x); },
           py::arg("x"))
      .def("__repr__", [](const Profile& p) {
        return "Profile(kind=" + std::string(kind_name(p.kind)) +
               ", amplitude=" + std::to_string(p.amplitude) +
               ", width=" + std::to_string(p.width) + ")";
      });

  m.def("gaussian_profile", &nlh::scattering::gaussian_profile,
        py::arg("amplitude"), py::arg("width"), py::arg("center") = 0.0,
        py::arg("halfwidth") = 0.0,
        "Gaussian datum A exp(-((x-c)/w)^2); halfwidth 0 picks a default "
        "truncation with relative tail mass < 1e-12.");
  m.def("sech_profile", &nlh::scattering::sech_profile, py::arg("amplitude"),
        py::arg("width"), py::arg("center") = 0.0, py::arg("halfwidth") = 0.0,
        "Hyperbolic-secant datum A sech((x-c)/w).");
  m.def("table_profile_from_file", &nlh::scattering::table_profile_from_file,
        py::arg("path"),
        "Tabulated datum from two- or three-column text (x, Re q0 [, Im q0]).");

  // ---- direct scattering ---------------------------------------------------
  py::class_<ScatteringMatrix>(m, "ScatteringMatrix",
                               "2x2 scattering matrix at one real lambda.")
      .def_readonly("lam", &ScatteringMatrix::lambda)
      .def_readonly("s11", &ScatteringMatrix::s11)
      .def_readonly("s12", &ScatteringMatrix::s12)
      .def_readonly("s21", &ScatteringMatrix::s21)
      .def_readonly("s22", &ScatteringMatrix::s22)
      .def_readonly("det_defect", &ScatteringMatrix::det_defect,
                    "|s11 s22 - s12 s21 - 1|")
      .def_readonly("sym_defect", &ScatteringMatrix::sym_defect,
                    "|s12 - s21|");

  m.def("scattering_matrix", &nlh::scattering::scattering_matrix,
        py::arg("profile"), py::arg("lam"),
        py::call_guard<py::gil_scoped_release>(),
        "Scattering matrix of the profile at real spectral parameter lam.");

  py::class_<ScatteringData>(
      m, "ScatteringData",
      "Reflection coefficients r1 = s21/s11 and r2 = s12/s22 sampled on a "
      "spectral grid, plus the equation parameters (alpha, beta).  Fields are "
      "writable so synthetic data can be assembled directly.")
      .def(py::init<>())
      .def_readwrite("alpha", &ScatteringData::alpha)
      .def_readwrite("beta", &ScatteringData::beta)
      .def_readwrite("lambda_grid", &ScatteringData::lambda_grid)
      .def_readwrite("r1", &ScatteringData::r1)
      .def_readwrite("r2", &ScatteringData::r2)
      .def_readwrite("interpolant_order", &ScatteringData::interpolant_order)
      .def("eval_r1", &ScatteringData::eval_r1, py::arg("lam"),
           "Cubic interpolation of r1; zero outside the grid span.")
      .def("eval_r2", &ScatteringData::eval_r2, py::arg("lam"))
      .def("__repr__", [](const ScatteringData& s) {
        return "ScatteringData(" + std::to_string(s.lambda_grid.size()) +
               " samples, alpha=" + std::to_string(s.alpha) +
               ", beta=" + std::to_string(s.beta) + ")";
      });

  m.def("default_lambda_grid", &nlh::scattering::default_lambda_grid,
        py::arg("profile"), py::arg("base_points") = 2001,
        py::arg("base_halfwidth") = 8.0,
        "Uniform grid widened until the reflection data decay below 1e-8 at "
        "the endpoints.");
  m.def("reflection_coefficients", &nlh::scattering::reflection_coefficients,
        py::arg("profile"), py::arg("grid"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>(),
        "Sample r1, r2 over the grid (threads = 0: hardware concurrency).  "
        "Note: alpha and beta on the result default to 0 and should be set by "
        "the caller before asymptotics.");

  // ---- phase geometry ------------------------------------------------------
  py::class_<PhaseGeometry>(
      m, "PhaseGeometry",
      "Stationary-point data of the phase f(lambda) = lambda (xi + 2 alpha "
      "lambda + 4 beta lambda^2) along the ray xi = x/t.")
      .def_readonly("alpha", &PhaseGeometry::alpha)
      .def_readonly("beta", &PhaseGeometry::beta)
      .def_readonly("xi", &PhaseGeometry::xi)
      .def_readonly("lambda0", &PhaseGeometry::lambda0)
      .def_readonly("lambda1", &PhaseGeometry::lambda1)
      .def_readonly("discriminant", &PhaseGeometry::discriminant)
      .def("__repr__", [](const PhaseGeometry& g) {
        return "PhaseGeometry(xi=" + std::to_string(g.xi) +
               ", lambda0=" + std::to_string(g.lambda0) +
               ", lambda1=" + std::to_string(g.lambda1) + ")";
      });

  m.def("stationary_points", &nlh::phase::stationary_points, py::arg("alpha"),
        py::arg("beta"), py::arg("xi"),
        "The two real stationary points (lambda0, lambda1); raises ValueError "
        "when they coalesce or beta = 0.");
  m.def("make_geometry", &nlh::phase::make_geometry, py::arg("alpha"),
        py::arg("beta"), py::arg("xi"));
  m.def("phase_theta", &nlh::phase::phase_theta, py::arg("x"), py::arg("t"),
        py::arg("lam"), py::arg("alpha"), py::arg("beta"),
        "theta = lambda (x + (2 alpha lambda + 4 beta lambda^2) t).");
  m.def("phase_f", &nlh::phase::phase_f, py::arg("lam"), py::arg("geometry"));

  // ---- scalar cut factor ---------------------------------------------------
  py::enum_<CutSide>(m, "CutSide",
                     "Side flag for evaluation on the branch cut itself.")
      .value("none", CutSide::none)
      .value("above", CutSide::above)
      .value("below", CutSide::below);

  py::enum_<Point>(m, "Point",
                   "Stationary point anchoring a representation of the "
                   "scalar factor.")
      .value("lambda0", Point::lambda0)
      .value("lambda1", Point::lambda1);

  py::class_<DeltaData>(m, "DeltaData",
                        "Exponents of the scalar factor at the stationary "
                        "points, on the tracked logarithm branch.")
      .def_readonly("vartheta0", &DeltaData::vartheta0)
      .def_readonly("vartheta1", &DeltaData::vartheta1)
      .def_readonly("chi0_at_l0", &DeltaData::chi0_at_l0)
      .def_readonly("chi1_at_l1", &DeltaData::chi1_at_l1)
      .def_readonly("im_vartheta_bound_ok", &DeltaData::im_vartheta_bound_ok,
                    "|Im vartheta| < 1/2 at both stationary points.");

  py::class_<DeltaEvaluator>(
      m, "DeltaEvaluator",
      "Scalar factor diagonalizing the middle jump factor on (lambda0, "
      "lambda1), with a cached tracked-logarithm branch.")
      .def(py::init<const ScatteringData&, const PhaseGeometry&>(),
           py::arg("sdata"), py::arg("geometry"), py::keep_alive<1, 2>())
      .def("vartheta", &DeltaEvaluator::vartheta, py::arg("which"),
           "-(1/2 pi) ln(1 - r1 r2) at the chosen stationary point.")
      .def("chi", &DeltaEvaluator::chi, py::arg("lam"), py::arg("which"),
           py::arg("side") = CutSide::none,
           "Endpoint-normalized Cauchy exponent over the cut.")
      .def("delta_via", &DeltaEvaluator::delta_via, py::arg("lam"),
           py::arg("which"), py::arg("side") = CutSide::none)
      .def("delta", &DeltaEvaluator::delta, py::arg("lam"),
           py::arg("side") = CutSide::none,
           "Scalar factor in the lambda0-anchored representation.")
      .def("winding",
           [](const DeltaEvaluator& ev) {
             std::string diag;
             bool ok = ev.winding_ok(&diag);
             return std::make_pair(ok, diag);
           },
           "Admissibility test (accumulated argument of 1 - r1 r2 inside "
           "(-pi, pi)); returns (ok, diagnostics).")
      .def("data", &DeltaEvaluator::data);

  m.def("winding_check",
        [](const ScatteringData& sdata, const PhaseGeometry& geom) {
          std::string diag;
          bool ok = nlh::deltafun::winding_check(sdata, geom, &diag);
          return std::make_pair(ok, diag);
        },
        py::arg("sdata"), py::arg("geometry"),
        "One-shot winding admissibility test; returns (ok, diagnostics).");
  m.def("delta_data", &nlh::deltafun::delta_data, py::arg("sdata"),
        py::arg("geometry"));

  // ---- long-time asymptotics ----------------------------------------------
  py::enum_<Orientation>(m, "Orientation",
                         "Contour orientation of the local model problem.")
      .value("left", Orientation::left)
      .value("right", Orientation::right);

  py::enum_<M1Convention>(m, "M1Convention",
                          "Normalization of the printed residue coefficient.")
      .value("display", M1Convention::display)
      .value("normalized", M1Convention::normalized);

  m.def("model_m1_12", &nlh::asymptotics::model_m1_12, py::arg("orientation"),
        py::arg("vartheta"), py::arg("r1_at"), py::arg("r2_at"),
        py::arg("convention") = M1Convention::normalized,
        "(1,2) residue coefficient of the local model solution.");
  m.def("model_m1_21", &nlh::asymptotics::model_m1_21, py::arg("orientation"),
        py::arg("vartheta"), py::arg("r1_at"), py::arg("r2_at"),
        py::arg("convention") = M1Convention::normalized);
  m.def("error_exponent", &nlh::asymptotics::error_exponent,
        py::arg("vartheta0"), py::arg("vartheta1"),
        "Remainder exponent 1/2 + max(|Im vartheta0|, |Im vartheta1|).");

  py::class_<LeadingOrder>(
      m, "LeadingOrder",
      "Two-term leading-order value of q at (x, t) = (xi t, t).")
      .def_readonly("t", &LeadingOrder::t)
      .def_readonly("term0", &LeadingOrder::term0)
      .def_readonly("term1", &LeadingOrder::term1)
      .def_readonly("q", &LeadingOrder::q)
      .def_readonly("vartheta0", &LeadingOrder::vartheta0)
      .def_readonly("vartheta1", &LeadingOrder::vartheta1)
      .def_readonly("error_exponent", &LeadingOrder::error_exponent)
      .def_readonly("extrapolated", &LeadingOrder::extrapolated,
                    "True when t is below the trusted range (t < 10).")
      .def("__repr__", [](const LeadingOrder& lo) {
        return "LeadingOrder(t=" + std::to_string(lo.t) + ", |q|=" +
               std::to_string(std::abs(lo.q)) + ")";
      });

  m.def("leading_q", &nlh::asymptotics::leading_q, py::arg("sdata"),
        py::arg("geometry"), py::arg("t"),
        py::call_guard<py::gil_scoped_release>(),
        "Assembled route: terms built from the scaled contour variable.  "
        "Raises ValueError on inadmissible winding or non-decaying sectors.");
  m.def("leading_q_closed_form", &nlh::asymptotics::leading_q_closed_form,
        py::arg("sdata"), py::arg("geometry"), py::arg("t"),
        py::call_guard<py::gil_scoped_release>(),
        "Closed-form route: the same two terms as explicit powers of t.");

  // ---- collocation oracle --------------------------------------------------
  py::enum_<OracleMode>(m, "OracleMode",
                        "Contour choice of the collocation solver.")
      .value("automatic", OracleMode::automatic)
      .value("direct", OracleMode::direct)
      .value("deformed", OracleMode::deformed);

  py::class_<OracleResult>(m, "OracleResult",
                           "Potential value recovered from the collocation "
                           "solution of the singular integral equation.")
      .def_readonly("q", &OracleResult::q)
      .def_readonly("residual", &OracleResult::residual,
                    "Relative linear-system residual of the collocation solve.")
      .def_readonly("rcond", &OracleResult::rcond)
      .def_property_readonly(
          "mode_used",
          [](const OracleResult& r) { return std::string(mode_name(r.mode_used)); })
      .def("__repr__", [](const OracleResult& r) {
        return "OracleResult(q=(" + std::to_string(r.q.real()) + "," +
               std::to_string(r.q.imag()) + "j), mode=" +
               std::string(mode_name(r.mode_used)) + ")";
      });

  m.def("oracle_q",
        [](const Profile& q0, const ScatteringData& sdata, double x, double t,
           OracleMode mode) {
          py::gil_scoped_release release;
          return nlh::rhoracle::oracle_q(q0, sdata, x, t, mode);
        },
        py::arg("profile"), py::arg("sdata"), py::arg("x"), py::arg("t"),
        py::arg("mode") = OracleMode::automatic,
        "Independent value of q(x, t): real-axis contour for moderate t, "
        "steepest-descent legs for large t (mode 'automatic' switches at "
        "t = 2).");
}
