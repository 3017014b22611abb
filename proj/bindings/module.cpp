#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polardet/channel.hpp"
#include "polardet/constellation.hpp"
#include "polardet/detector.hpp"
#include "polardet/mc_engine.hpp"
#include "polardet/optimizer.hpp"
#include "polardet/sep_analytic.hpp"
#include "polardet/specialfn.hpp"
#include "polardet/version.hpp"

namespace py = pybind11;
using namespace polardet;

PYBIND11_MODULE(_core, m) {
  m.doc() = "polar-metric detection and SEP analysis core";
  m.attr("__version__") = kVersion;

  m.def("q_function", &q_function, py::arg("x"));
  m.def("owen_t", &owen_t, py::arg("h"), py::arg("a"));
  m.def(
      "sn_cdf",
      [](double x, double location, double scale, double shape) {
        return sn_cdf(x, SkewNormalParams{location, scale, shape});
      },
      py::arg("x"), py::arg("location"), py::arg("scale"), py::arg("shape"));
  m.def("delta_from_skewness", &delta_from_skewness, py::arg("skewness"));

  py::class_<SnMoments>(m, "SnMoments")
      .def_readonly("mean", &SnMoments::mean)
      .def_readonly("variance", &SnMoments::variance)
      .def_readonly("skewness", &SnMoments::skewness);
  m.def(
      "sn_moments",
      [](double location, double scale, double shape) {
        return sn_moments(SkewNormalParams{location, scale, shape});
      },
      py::arg("location"), py::arg("scale"), py::arg("shape"));

  py::class_<Constellation>(m, "Constellation")
      .def(py::init<std::vector<cdouble>, std::string>(), py::arg("points"),
           py::arg("label") = "custom")
      .def_readwrite("points", &Constellation::points)
      .def_readwrite("label", &Constellation::label)
      .def("order", &Constellation::order);
  m.def("check_constellation", &check_constellation, py::arg("c"));
  m.def("make_qam", &make_qam, py::arg("m"));
  m.def(
      "make_sapsk",
      [](int order, int levels, double rho) {
        return make_sapsk(SapskSpec{order, levels, rho});
      },
      py::arg("order"), py::arg("levels"), py::arg("rho"));
  m.def("normalize", &normalize, py::arg("points"),
        py::arg("label") = "custom");
  m.def("load_constellation", &load_constellation, py::arg("path"));
  m.def("save_constellation",
        py::overload_cast<const Constellation&, const std::string&>(
            &save_constellation),
        py::arg("c"), py::arg("path"));

  py::class_<ImpairmentParams>(m, "ImpairmentParams")
      .def(py::init<double, double, double>(), py::arg("sigma_n2"),
           py::arg("sigma_g2") = 0.0, py::arg("sigma_phi2") = 0.0)
      .def_readwrite("sigma_n2", &ImpairmentParams::sigma_n2)
      .def_readwrite("sigma_g2", &ImpairmentParams::sigma_g2)
      .def_readwrite("sigma_phi2", &ImpairmentParams::sigma_phi2);
  m.def("snr_to_sigma_n2", &snr_to_sigma_n2, py::arg("snr_db"));

  py::enum_<DetectorKind>(m, "DetectorKind")
      .value("EUC", DetectorKind::EucD)
      .value("GAP", DetectorKind::GapD)
      .value("PAD", DetectorKind::PadD);
  m.def("metric_euc", &metric_euc, py::arg("r"), py::arg("s"));
  m.def("metric_gap", &metric_gap, py::arg("r"), py::arg("s"),
        py::arg("sigma_n2"), py::arg("sigma_phi2"));
  m.def("metric_pad", &metric_pad, py::arg("r"), py::arg("s"), py::arg("p"));
  m.def("detect", &detect, py::arg("r"), py::arg("c"), py::arg("kind"),
        py::arg("p"));

  py::class_<PairwiseStats>(m, "PairwiseStats")
      .def_readonly("a0", &PairwiseStats::a0)
      .def_readonly("a1", &PairwiseStats::a1)
      .def_readonly("a2", &PairwiseStats::a2)
      .def_readonly("a3", &PairwiseStats::a3)
      .def_readonly("a4", &PairwiseStats::a4)
      .def_readonly("mu", &PairwiseStats::mu)
      .def_readonly("sigma", &PairwiseStats::sigma)
      .def_readonly("gamma1", &PairwiseStats::gamma1)
      .def_readonly("delta", &PairwiseStats::delta)
      .def_readonly("omega", &PairwiseStats::omega)
      .def_readonly("xi", &PairwiseStats::xi)
      .def_readonly("alpha", &PairwiseStats::alpha);
  m.def("pairwise_coeffs", &pairwise_coeffs, py::arg("c"), py::arg("i"),
        py::arg("j"), py::arg("p"));
  m.def("pairwise_pep", &pairwise_pep, py::arg("stats"));
  m.def("sep_union", &sep_union, py::arg("c"), py::arg("p"));
  m.def("error_floor", &error_floor, py::arg("c"), py::arg("sigma_g2"),
        py::arg("sigma_phi2"));

  py::class_<SepEstimate>(m, "SepEstimate")
      .def_readonly("sep", &SepEstimate::sep)
      .def_readonly("n_symbols", &SepEstimate::n_symbols)
      .def_readonly("n_errors", &SepEstimate::n_errors)
      .def_readonly("ci95_halfwidth", &SepEstimate::ci95_halfwidth);
  m.def("estimate_sep", &estimate_sep, py::arg("c"), py::arg("kind"),
        py::arg("p"), py::arg("n_symbols"), py::arg("seed"),
        py::arg("threads") = 0, py::arg("stream_base") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("sweep", &sweep, py::arg("c"), py::arg("kind"), py::arg("sigma_g2"),
        py::arg("sigma_phi2"), py::arg("snr_grid_db"), py::arg("n_symbols"),
        py::arg("seed"), py::arg("threads") = 0,
        py::call_guard<py::gil_scoped_release>());

  py::enum_<ObjectiveMode>(m, "ObjectiveMode")
      .value("MC_CRN", ObjectiveMode::MonteCarloCRN)
      .value("ANALYTIC", ObjectiveMode::Analytic);
  py::class_<OptimizeConfig>(m, "OptimizeConfig")
      .def(py::init<>())
      .def_readwrite("order", &OptimizeConfig::order)
      .def_readwrite("kind", &OptimizeConfig::kind)
      .def_readwrite("sigma_g2", &OptimizeConfig::sigma_g2)
      .def_readwrite("sigma_phi2", &OptimizeConfig::sigma_phi2)
      .def_readwrite("snr_db", &OptimizeConfig::snr_db)
      .def_readwrite("n_eval", &OptimizeConfig::n_eval)
      .def_readwrite("n_validate", &OptimizeConfig::n_validate)
      .def_readwrite("seed", &OptimizeConfig::seed)
      .def_readwrite("t0", &OptimizeConfig::t0)
      .def_readwrite("cooling", &OptimizeConfig::cooling)
      .def_readwrite("iters_per_temp", &OptimizeConfig::iters_per_temp)
      .def_readwrite("step0", &OptimizeConfig::step0)
      .def_readwrite("tmin_frac", &OptimizeConfig::tmin_frac)
      .def_readwrite("h_fd", &OptimizeConfig::h_fd)
      .def_readwrite("refine_max_iters", &OptimizeConfig::refine_max_iters)
      .def_readwrite("refine_tol", &OptimizeConfig::refine_tol)
      .def_readwrite("mode", &OptimizeConfig::mode)
      .def_readwrite("threads", &OptimizeConfig::threads);
  py::class_<OptimizeResult>(m, "OptimizeResult")
      .def_readonly("constellation", &OptimizeResult::constellation)
      .def_readonly("objective_history", &OptimizeResult::objective_history)
      .def_readonly("final_sep_mc", &OptimizeResult::final_sep_mc)
      .def_readonly("final_sep_analytic",
                    &OptimizeResult::final_sep_analytic);
  m.def("project_constraints", &project_constraints, py::arg("points"));
  m.def("optimize", &optimize, py::arg("cfg"),
        py::call_guard<py::gil_scoped_release>());
}
