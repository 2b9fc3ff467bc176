#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hydrospec/circle_disc.hpp"
#include "hydrospec/contour.hpp"
#include "hydrospec/eigs.hpp"
#include "hydrospec/perturb.hpp"
#include "hydrospec/profiles.hpp"
#include "hydrospec/quadrature.hpp"
#include "hydrospec/resonance.hpp"
#include "hydrospec/runner.hpp"
#include "hydrospec/segment_disc.hpp"

namespace py = pybind11;
using namespace hydrospec;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Viscous Orr-Sommerfeld spectra and inviscid Rayleigh resonances of 2D shear flows";
    m.attr("__version__") = kVersion;

    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<validation_error>(m, "ValidationError", PyExc_RuntimeError);
    py::register_exception<numerical_error>(m, "NumericalError", PyExc_RuntimeError);

    // --- domains and profiles ------------------------------------------------
    py::class_<Domain>(m, "Domain")
        .def_static("segment", &Domain::segment, py::arg("a"), py::arg("b"))
        .def_static("circle", &Domain::circle, py::arg("period"))
        .def_property_readonly("is_segment", &Domain::is_segment)
        .def_property_readonly("is_circle", &Domain::is_circle)
        .def_readonly("a", &Domain::a)
        .def_readonly("b", &Domain::b)
        .def_readonly("period", &Domain::period);

    py::class_<ShearProfile>(m, "ShearProfile")
        .def_static("couette", &ShearProfile::couette, py::arg("domain"))
        .def_static("couette_poiseuille", &ShearProfile::couette_poiseuille, py::arg("theta"),
                    py::arg("domain"))
        .def_static("trig", &ShearProfile::trig, py::arg("omega"), py::arg("theta"),
                    py::arg("domain"))
        .def_static("kolmogorov", &ShearProfile::kolmogorov, py::arg("k"), py::arg("domain"))
        .def("eval", &ShearProfile::eval, py::arg("z"), py::arg("order") = 0)
        .def_property_readonly("domain", &ShearProfile::domain)
        .def_property_readonly("id", &ShearProfile::id);

    m.def("make_profile", &make_profile, py::arg("kind"), py::arg("params"), py::arg("domain"));

    py::class_<StandardizedProfile>(m, "StandardizedProfile")
        .def_readonly("profile", &StandardizedProfile::profile)
        .def_readonly("alpha_factor", &StandardizedProfile::alpha_factor)
        .def_readonly("eps_factor", &StandardizedProfile::eps_factor);
    m.def("rescale_to_standard", &rescale_to_standard, py::arg("profile"));

    // --- contours -------------------------------------------------------------
    py::class_<EscapeFunction>(m, "EscapeFunction")
        .def_static("trig_cutoff", &EscapeFunction::trig_cutoff, py::arg("omega"), py::arg("theta"),
                    py::arg("domain"))
        .def_static("sin_periodic", &EscapeFunction::sin_periodic, py::arg("omega"),
                    py::arg("domain"))
        .def_static("neg_cos", &EscapeFunction::neg_cos, py::arg("k"), py::arg("domain"))
        .def_static("cp_tilt", &EscapeFunction::cp_tilt, py::arg("theta"), py::arg("domain"))
        .def_static("for_profile", &EscapeFunction::for_profile, py::arg("profile"))
        .def("m0", &EscapeFunction::m0, py::arg("x"))
        .def("dm0", &EscapeFunction::dm0, py::arg("x"))
        .def_property_readonly("id", &EscapeFunction::id);

    m.def("make_escape", &make_escape, py::arg("kind"), py::arg("params"), py::arg("domain"));

    py::class_<DeformedContour>(m, "DeformedContour")
        .def(py::init<EscapeFunction, double>(), py::arg("escape"), py::arg("tau"))
        .def("map", &DeformedContour::map, py::arg("x"), py::arg("order") = 0)
        .def_readonly("tau", &DeformedContour::tau)
        .def_property_readonly("id", &DeformedContour::id);

    py::class_<ValidationFailure>(m, "ValidationFailure")
        .def_readonly("condition", &ValidationFailure::condition)
        .def_readonly("where", &ValidationFailure::where)
        .def_readonly("value", &ValidationFailure::value)
        .def_readonly("detail", &ValidationFailure::detail);

    py::class_<ValidationReport>(m, "ValidationReport")
        .def_readonly("ok", &ValidationReport::ok)
        .def_readonly("failures", &ValidationReport::failures)
        .def_readonly("arg_margin", &ValidationReport::arg_margin)
        .def_readonly("sign_margin", &ValidationReport::sign_margin)
        .def_readonly("ellipticity_margin", &ValidationReport::ellipticity_margin)
        .def_readonly("im_max", &ValidationReport::im_max);

    m.def("validate_contour", &validate_contour, py::arg("profile"), py::arg("contour"),
          py::arg("c0"), py::arg("delta"), py::arg("nx") = 512, py::arg("nt") = 5);

    // --- discretizations --------------------------------------------------------
    py::class_<ChebGrid>(m, "ChebGrid")
        .def_readonly("N", &ChebGrid::N)
        .def_readonly("points", &ChebGrid::points)
        .def_readonly("D", &ChebGrid::D);
    m.def("cheb_grid", &cheb_grid, py::arg("N"));
    m.def("deform_D", &deform_D, py::arg("grid"), py::arg("contour"));
    m.def("helmholtz_dirichlet", &helmholtz_dirichlet, py::arg("D_tau"), py::arg("alpha"));
    m.def("greens_oracle", &greens_oracle, py::arg("alpha"), py::arg("f"), py::arg("grid"));
    m.def("clamped_bilaplacian", &clamped_bilaplacian, py::arg("D_tau"), py::arg("contour"),
          py::arg("grid"));

    py::class_<PencilMeta>(m, "PencilMeta")
        .def_readonly("N", &PencilMeta::N)
        .def_readonly("alpha", &PencilMeta::alpha)
        .def_readonly("eps", &PencilMeta::eps)
        .def_readonly("tau", &PencilMeta::tau)
        .def_readonly("profile_id", &PencilMeta::profile_id)
        .def_readonly("contour_id", &PencilMeta::contour_id);

    py::class_<DiscretePencil>(m, "DiscretePencil")
        .def_readonly("A", &DiscretePencil::A)
        .def_readonly("B", &DiscretePencil::B)
        .def_readonly("meta", &DiscretePencil::meta);

    m.def("assemble_os_pencil", &assemble_os_pencil, py::arg("profile"), py::arg("contour"),
          py::arg("alpha"), py::arg("eps"), py::arg("N"));
    m.def("assemble_rayleigh_q", &assemble_rayleigh_q, py::arg("profile"), py::arg("contour"),
          py::arg("alpha"), py::arg("N"));
    m.def("ellipticity_samples", &ellipticity_samples, py::arg("profile"), py::arg("contour"),
          py::arg("n_samples"));

    py::class_<FourierGrid>(m, "FourierGrid")
        .def_readonly("N", &FourierGrid::N)
        .def_readonly("nodes", &FourierGrid::nodes)
        .def_readonly("wavenumbers", &FourierGrid::wavenumbers)
        .def("to_coefficients", &FourierGrid::to_coefficients, py::arg("samples"))
        .def("to_samples", &FourierGrid::to_samples, py::arg("coefficients"));
    m.def("fourier_grid", &fourier_grid, py::arg("N"));
    m.def("fourier_deformed_D", &fourier_deformed_D, py::arg("grid"), py::arg("contour"));
    m.def("assemble_q_circle", &assemble_q_circle, py::arg("profile"), py::arg("contour"),
          py::arg("alpha"), py::arg("eps"), py::arg("N"));

    py::class_<ProbeResult>(m, "ProbeResult")
        .def_readonly("ok", &ProbeResult::ok)
        .def_readonly("worst_error", &ProbeResult::worst_error)
        .def_readonly("checks", &ProbeResult::checks);
    m.def("fourier_convention_probe", &fourier_convention_probe, py::arg("N"));

    // --- eigensolver facade ------------------------------------------------------
    py::class_<SpectrumMeta>(m, "SpectrumMeta")
        .def_readonly("N", &SpectrumMeta::N)
        .def_readonly("eps", &SpectrumMeta::eps)
        .def_readonly("tau", &SpectrumMeta::tau)
        .def_readonly("alpha", &SpectrumMeta::alpha);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("values", &Spectrum::values)
        .def_property_readonly("vectors",
                               [](const Spectrum& s) {
                                   return s.vectors ? py::cast(*s.vectors) : py::none().cast<py::object>();
                               })
        .def_readonly("residuals", &Spectrum::residuals)
        .def_readonly("meta", &Spectrum::meta);

    m.def("eig", &eig, py::arg("M"), py::arg("want_vectors") = false);
    m.def("eig_pencil", &eig_pencil, py::arg("A"), py::arg("B"), py::arg("want_vectors") = false);

    py::class_<ClusterResult>(m, "ClusterResult")
        .def_readonly("count", &ClusterResult::count)
        .def_readonly("indices", &ClusterResult::indices)
        .def_readonly("members", &ClusterResult::members);
    m.def("cluster", &cluster, py::arg("spectrum"), py::arg("center"), py::arg("radius"));

    // --- resonances ------------------------------------------------------------
    py::class_<Window>(m, "Window")
        .def(py::init([](double re_lo, double re_hi, double im_lo, double im_hi) {
                 return Window{re_lo, re_hi, im_lo, im_hi};
             }),
             py::arg("re_lo"), py::arg("re_hi"), py::arg("im_lo"), py::arg("im_hi"))
        .def("contains", &Window::contains);

    py::class_<ResonanceRecord>(m, "ResonanceRecord")
        .def_readonly("c", &ResonanceRecord::c)
        .def_readonly("multiplicity", &ResonanceRecord::multiplicity)
        .def_readonly("via_eigen", &ResonanceRecord::via_eigen)
        .def_readonly("via_wronskian", &ResonanceRecord::via_wronskian)
        .def_readonly("wronskian_abs", &ResonanceRecord::wronskian_abs)
        .def_readonly("dist_to_curve", &ResonanceRecord::dist_to_curve)
        .def_property_readonly("state", [](const ResonanceRecord& r) {
            return r.state ? py::cast(*r.state) : py::none().cast<py::object>();
        });

    m.def("resonances_in_window", &resonances_in_window, py::arg("profile"), py::arg("contour"),
          py::arg("alpha"), py::arg("N"), py::arg("window"), py::arg("band"),
          py::arg("want_states") = false, py::arg("cluster_radius") = 1e-4);
    m.def("wronskian", &wronskian, py::arg("profile"), py::arg("contour"), py::arg("alpha"),
          py::arg("c"), py::arg("tol") = 1e-10);
    m.def("refine_resonance", &refine_resonance, py::arg("profile"), py::arg("contour"),
          py::arg("alpha"), py::arg("c_init"), py::arg("target") = 1e-10,
          py::arg("max_iter") = 50);
    m.def("multiplicity_winding", &multiplicity_winding, py::arg("profile"), py::arg("contour"),
          py::arg("alpha"), py::arg("center"), py::arg("radius"), py::arg("min_nodes") = 256);

    // --- perturbation theory ------------------------------------------------------
    py::class_<BoundaryConstants>(m, "BoundaryConstants")
        .def_readonly("lam", &BoundaryConstants::lambda)
        .def_readonly("mu", &BoundaryConstants::mu);
    m.def("boundary_constants", &boundary_constants, py::arg("profile"), py::arg("alpha"),
          py::arg("c"));
    m.def("first_order_segment", &first_order_segment, py::arg("profile"), py::arg("contour"),
          py::arg("alpha"), py::arg("c1"), py::arg("N"));
    m.def("cos_flow_first_order", &cos_flow_first_order, py::arg("omega"),
          py::arg("quad_nodes") = 64);
    m.def("second_order_circle", &second_order_circle, py::arg("profile"), py::arg("contour"),
          py::arg("alpha"), py::arg("c1"), py::arg("N"));

    py::class_<TrackedBranch>(m, "TrackedBranch")
        .def_readonly("eps", &TrackedBranch::eps)
        .def_readonly("c", &TrackedBranch::c)
        .def_readonly("match_dist", &TrackedBranch::match_dist)
        .def_readonly("alpha", &TrackedBranch::alpha)
        .def_readonly("tau", &TrackedBranch::tau)
        .def_readonly("N", &TrackedBranch::N);

    m.def(
        "track_branch",
        [](const ShearProfile& p, const DeformedContour& ct, double alpha, Complex c1,
           const std::vector<double>& grid, int N) {
            return track_branch(p, ct, alpha, c1, grid, N);
        },
        py::arg("profile"), py::arg("contour"), py::arg("alpha"), py::arg("c1"),
        py::arg("eps_grid"), py::arg("N"));
    m.def("default_eps_grid", &default_eps_grid, py::arg("eps_max"), py::arg("count") = 9);

    py::enum_<FitParity>(m, "FitParity")
        .value("All", FitParity::All)
        .value("Even", FitParity::Even);

    py::class_<TaylorFit>(m, "TaylorFit")
        .def_readonly("coefficients", &TaylorFit::coefficients)
        .def_readonly("residual", &TaylorFit::residual)
        .def_readonly("condition", &TaylorFit::condition);
    m.def("fit_taylor", &fit_taylor, py::arg("branch"), py::arg("degree"), py::arg("parity"));

    // --- experiment runner -----------------------------------------------------
    m.def(
        "run_experiment_file",
        [](const std::filesystem::path& config, const std::filesystem::path& out_dir) {
            RunOptions options;
            options.out_dir = out_dir;
            const RunResult result = run_experiment(load_config(config), options);
            return result.csv;
        },
        py::arg("config"), py::arg("out_dir"),
        "Run an experiment config and return the path of the CSV it wrote");
}
