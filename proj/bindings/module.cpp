#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "misq/attainable.hpp"
#include "misq/background.hpp"
#include "misq/generator_matrix.hpp"
#include "misq/hybrid_estimator.hpp"
#include "misq/phi.hpp"
#include "misq/poisson_ldp.hpp"
#include "misq/queue_sim.hpp"
#include "misq/rate_function.hpp"
#include "misq/rng.hpp"
#include "misq/schilder.hpp"
#include "misq/step_path.hpp"

namespace py = pybind11;
using namespace misq;

PYBIND11_MODULE(_misq, m) {
  m.doc() = "Modulated infinite-server queues: exact Poisson-mean evaluation, simulation, "
            "attainable intervals and large-deviations numerics.";

  py::class_<StateSpace>(m, "StateSpace")
      .def_static("finite", py::overload_cast<int>(&StateSpace::finite))
      .def_static("nonneg_int", &StateSpace::nonneg_int)
      .def_static("interval", &StateSpace::interval)
      .def_static("real_line", &StateSpace::real_line)
      .def("contains", &StateSpace::contains)
      .def("metric", &StateSpace::metric);

  py::class_<StepPath>(m, "StepPath")
      .def(py::init<StateSpace, std::vector<double>, std::vector<double>, double>(),
           py::arg("space"), py::arg("times"), py::arg("states"), py::arg("horizon"))
      .def("value_at", &StepPath::value_at)
      .def_property_readonly("horizon", &StepPath::horizon)
      .def_property_readonly("times", &StepPath::times)
      .def_property_readonly("states", &StepPath::states)
      .def("minimal_representation", &StepPath::minimal_representation)
      .def("restricted", &StepPath::restricted)
      .def("to_csv", [](const StepPath& p) { return to_csv(p); });

  m.def("truncated_min_step", &truncated_min_step);
  m.def("sup_distance", &sup_distance);

  py::class_<RateMap>(m, "RateMap")
      .def_static("constant", &RateMap::constant)
      .def_static("table", &RateMap::table)
      .def_static("affine", &RateMap::affine)
      .def_static("identity", &RateMap::identity)
      .def_static("one_minus", &RateMap::one_minus)
      .def("__call__", &RateMap::operator());

  py::class_<Modulation>(m, "Modulation")
      .def(py::init<StateSpace, RateMap, RateMap, RateMap>(), py::arg("space"), py::arg("lam"),
           py::arg("kappa"), py::arg("mu"))
      .def("lam", &Modulation::lambda)
      .def("kappa", &Modulation::kappa)
      .def("mu", &Modulation::mu);

  m.def("phi", &phi, py::arg("path"), py::arg("mod"), py::arg("t"));
  m.def("phi_profile", [](const StepPath& p, const Modulation& mod, std::vector<double> grid) {
    return phi_profile(p, mod, grid);
  });

  py::class_<GeneratorMatrix>(m, "GeneratorMatrix")
      .def(py::init<std::vector<std::vector<double>>>())
      .def_property_readonly("dimension", &GeneratorMatrix::dimension)
      .def("rate", &GeneratorMatrix::rate);
  m.def("stationary_distribution", &stationary_distribution);
  m.def("rho_t", &rho_t);

  py::class_<BackgroundSpec>(m, "BackgroundSpec")
      .def_static("deterministic", &BackgroundSpec::deterministic)
      .def_static("ctmc", &BackgroundSpec::ctmc)
      .def_static("time_scaled_ctmc", &BackgroundSpec::time_scaled_ctmc)
      .def_static("reflected_bm", &BackgroundSpec::reflected_bm)
      .def_static("scaled_bm", &BackgroundSpec::scaled_bm)
      .def_static("mmis_feed", &BackgroundSpec::mmis_feed)
      .def("with_scale_index", &BackgroundSpec::with_scale_index);

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t>())
      .def(py::init<std::uint64_t, std::uint64_t, std::uint64_t>());
  m.def("sample_path", &sample_path, py::arg("spec"), py::arg("horizon"), py::arg("rng"));

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("count", &SimResult::count)
      .def_readonly("phi_value", &SimResult::phi_value);
  m.def("simulate_direct", &simulate_direct, py::arg("spec"), py::arg("mod"), py::arg("t"),
        py::arg("rng"), py::arg("keep_path") = false);
  m.def("simulate_conditional", &simulate_conditional, py::arg("spec"), py::arg("mod"),
        py::arg("t"), py::arg("rng"), py::arg("keep_path") = false);
  m.def("poisson_sample", &poisson_sample);

  m.def("ell", &ell, py::arg("gamma"), py::arg("a"));
  m.def("poisson_tail_log", [](double mean, long long lo, py::object hi) {
    IntegerSet s;
    s.lo = lo;
    if (!hi.is_none()) s.hi = hi.cast<long long>();
    return poisson_tail_log(mean, s);
  }, py::arg("mean"), py::arg("lo"), py::arg("hi") = py::none());

  py::class_<AttainableInterval>(m, "AttainableInterval")
      .def(py::init([](double a_minus, double a_plus, bool inf_plus) {
             return AttainableInterval{a_minus, a_plus, inf_plus};
           }),
           py::arg("a_minus"), py::arg("a_plus"), py::arg("a_plus_infinite") = false)
      .def_readonly("a_minus", &AttainableInterval::a_minus)
      .def_readonly("a_plus", &AttainableInterval::a_plus)
      .def_readonly("a_plus_infinite", &AttainableInterval::a_plus_infinite);

  py::class_<AttainableReport>(m, "AttainableReport")
      .def_readonly("interval", &AttainableReport::interval)
      .def_readonly("finest", &AttainableReport::finest)
      .def_readonly("converged", &AttainableReport::converged)
      .def_readonly("levels", &AttainableReport::levels);

  m.def("attainable_bounds_dp", &attainable_bounds_dp, py::arg("mod"), py::arg("t"),
        py::arg("time_steps"), py::arg("r_steps"), py::arg("tolerance") = 1e-3,
        py::arg("max_refinements") = 4);
  m.def("attainable_bounds_oracle", &attainable_bounds_oracle, py::arg("mod"), py::arg("t"),
        py::arg("max_jumps"), py::arg("time_grid"), py::arg("polish") = true);
  m.def("discretize_modulation", &discretize_modulation);

  py::class_<PsiSpec>(m, "PsiSpec")
      .def_static("degenerate", &PsiSpec::degenerate)
      .def_static("tabulated", &PsiSpec::tabulated)
      .def_static("schilder", &PsiSpec::schilder);
  m.def("rate_I_unscaled", &rate_I_unscaled);
  py::class_<RateFunctionModel>(m, "RateFunctionModel")
      .def_static("unscaled", &RateFunctionModel::unscaled)
      .def_static("general", &RateFunctionModel::general)
      .def("__call__", &RateFunctionModel::operator());
  m.def("rate_I_general", &rate_I_general, py::arg("psi"), py::arg("a"), py::arg("gamma_points") = 0);

  py::class_<SchilderResult>(m, "SchilderResult")
      .def_readonly("value", &SchilderResult::value)
      .def_readonly("node_times", &SchilderResult::node_times)
      .def_readonly("node_values", &SchilderResult::node_values)
      .def_readonly("constraint_violation", &SchilderResult::constraint_violation)
      .def_readonly("converged", &SchilderResult::converged);
  m.def("schilder_psi", [](const Modulation& mod, double t, double a, int segments) {
    return schilder_psi(mod, t, a, segments);
  }, py::arg("mod"), py::arg("t"), py::arg("target_a"), py::arg("segments"));

  py::class_<TargetSet>(m, "TargetSet")
      .def(py::init([](double lo, py::object hi) {
             TargetSet F;
             F.lo = lo;
             if (!hi.is_none()) F.hi = hi.cast<double>();
             return F;
           }),
           py::arg("lo"), py::arg("hi") = py::none());

  py::class_<HybridEstimate>(m, "HybridEstimate")
      .def_readonly("log_p_hat", &HybridEstimate::log_p_hat)
      .def_readonly("slope", &HybridEstimate::slope)
      .def_readonly("mean_phi", &HybridEstimate::mean_phi);
  m.def("hybrid_ldp_estimate", &hybrid_ldp_estimate, py::arg("spec"), py::arg("mod"), py::arg("t"),
        py::arg("n"), py::arg("F"), py::arg("replicas"), py::arg("seed"), py::arg("threads") = 0);
}
