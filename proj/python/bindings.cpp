#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "powergames/bounds.hpp"
#include "powergames/experiment.hpp"
#include "powergames/projection.hpp"
#include "powergames/solver.hpp"

namespace py = pybind11;
using namespace powergames;

PYBIND11_MODULE(_powergames, m) {
  m.doc() = "Nash equilibria of stochastic power-allocation games over "
            "Gaussian interference channels";

  py::register_exception<Error>(m, "PowergamesError");

  py::enum_<Visibility>(m, "Visibility")
      .value("Full", Visibility::Full)
      .value("Incident", Visibility::Incident)
      .value("Direct", Visibility::Direct);

  py::class_<GainDistribution>(m, "GainDistribution")
      .def_readonly("values", &GainDistribution::values)
      .def_readonly("probs", &GainDistribution::probs)
      .def("mean", &GainDistribution::mean);
  m.def("build_gain_distribution", &build_gain_distribution, py::arg("values"),
        py::arg("probs"));

  py::class_<ChannelSpec>(m, "ChannelSpec")
      .def_readonly("n_users", &ChannelSpec::n_users)
      .def_readonly("direct", &ChannelSpec::direct)
      .def_readonly("cross", &ChannelSpec::cross);
  m.def("make_channel_spec", &make_channel_spec, py::arg("n_users"),
        py::arg("direct"), py::arg("cross"));
  m.def("preset_channel", &preset_channel, py::arg("name"));

  py::class_<StateSpace>(m, "StateSpace")
      .def_readonly("gains", &StateSpace::gains)
      .def_readonly("probs", &StateSpace::probs)
      .def("__len__", &StateSpace::size);
  m.def("enumerate_states", &enumerate_states, py::arg("spec"),
        py::arg("visibility"), py::arg("user") = 0,
        py::arg("cap") = kDefaultStateCap);
  m.def("state_probability", &state_probability, py::arg("space"), py::arg("index"));

  py::class_<GameSpec>(m, "GameSpec")
      .def_readonly("budgets", &GameSpec::budgets)
      .def_readonly("info", &GameSpec::info);
  m.def("make_game_spec", &make_game_spec, py::arg("channel"), py::arg("budgets"),
        py::arg("info"));
  m.def("budgets_from_snr_db", &budgets_from_snr_db, py::arg("snr_db"),
        py::arg("n_users"));

  py::class_<PowerPolicy>(m, "PowerPolicy")
      .def(py::init([](int user, Visibility vis, std::vector<double> powers) {
             return PowerPolicy{user, vis, std::move(powers)};
           }),
           py::arg("user"), py::arg("visibility"), py::arg("powers"))
      .def_readonly("user", &PowerPolicy::user)
      .def_readonly("visibility", &PowerPolicy::visibility)
      .def_readonly("powers", &PowerPolicy::powers);

  py::class_<StrategyProfile>(m, "StrategyProfile")
      .def(py::init([](std::vector<PowerPolicy> policies) {
             return StrategyProfile{std::move(policies)};
           }),
           py::arg("policies"))
      .def_readonly("policies", &StrategyProfile::policies);

  py::class_<GameContext>(m, "GameContext")
      .def(py::init<GameSpec, std::uint64_t>(), py::arg("spec"),
           py::arg("cap") = kDefaultStateCap)
      .def("n_users", &GameContext::n_users)
      .def("visible_size", &GameContext::visible_size)
      .def("default_profile", &GameContext::default_profile)
      .def_property_readonly("spec", &GameContext::spec);

  m.def("rate", &rate, py::arg("ctx"), py::arg("profile"), py::arg("i"));
  m.def("sum_rate", &sum_rate, py::arg("ctx"), py::arg("profile"));
  m.def("expected_power", &expected_power, py::arg("ctx"), py::arg("policy"));
  m.def("expand_policy", &expand_policy, py::arg("ctx"), py::arg("policy"));

  py::class_<NeCheckReport>(m, "NeCheckReport")
      .def_readonly("max_gain", &NeCheckReport::max_gain)
      .def_readonly("is_ne", &NeCheckReport::is_ne);
  m.def("epsilon_ne_check", &epsilon_ne_check, py::arg("ctx"), py::arg("profile"),
        py::arg("epsilon"), py::arg("n_deviations"), py::arg("seed"));

  py::class_<ProjectionResult>(m, "ProjectionResult")
      .def_readonly("powers", &ProjectionResult::powers)
      .def_readonly("lambda_", &ProjectionResult::lambda);
  m.def(
      "project_budget",
      [](const std::vector<double>& x, const std::vector<double>& w, double b) {
        return project_budget(x, w, b);
      },
      py::arg("x"), py::arg("weights"), py::arg("budget"));
  m.def("best_response_full", &best_response_full, py::arg("ctx"),
        py::arg("profile"), py::arg("i"));

  py::class_<MonotoneReport>(m, "MonotoneReport")
      .def_readonly("min_eig", &MonotoneReport::min_eig)
      .def_readonly("is_psd", &MonotoneReport::is_psd);
  m.def("check_monotone_for",
        [](const GameContext& ctx) { return check_monotone(build_affine(ctx)); },
        py::arg("ctx"));

  py::class_<ViMap>(m, "ViMap")
      .def(py::init<const GameContext&, double>(), py::arg("ctx"), py::arg("tau"),
           py::keep_alive<1, 2>())
      .def("eval_T", &ViMap::eval_T, py::arg("profile"))
      .def("merit", &ViMap::merit, py::arg("profile"));

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("tau", &SolverConfig::tau)
      .def_readwrite("epsilon", &SolverConfig::epsilon)
      .def_readwrite("delta", &SolverConfig::delta)
      .def_readwrite("max_phase1", &SolverConfig::max_phase1)
      .def_readwrite("gamma0", &SolverConfig::gamma0)
      .def_readwrite("gamma_block", &SolverConfig::gamma_block)
      .def_readwrite("fd_step", &SolverConfig::fd_step)
      .def_readwrite("max_restarts", &SolverConfig::max_restarts)
      .def_readwrite("max_phase2", &SolverConfig::max_phase2)
      .def_readwrite("rng_seed", &SolverConfig::rng_seed);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("profile", &SolveResult::profile)
      .def_readonly("merit", &SolveResult::merit)
      .def_readonly("iterations_phase1", &SolveResult::iterations_phase1)
      .def_readonly("iterations_phase2", &SolveResult::iterations_phase2)
      .def_readonly("restarts", &SolveResult::restarts)
      .def_readonly("merit_trace", &SolveResult::merit_trace)
      .def_readonly("converged", &SolveResult::converged);

  m.def("fixed_point_solve", &fixed_point_solve, py::arg("ctx"), py::arg("config"),
        py::arg("initial") = std::nullopt);
  m.def("algorithm1", &algorithm1, py::arg("ctx"), py::arg("config"),
        py::arg("initial") = std::nullopt);
  m.def("gamma_schedule", &gamma_schedule, py::arg("t"), py::arg("config"));

  m.def("lower_bound_rate", &lower_bound_rate, py::arg("ctx"), py::arg("policy"),
        py::arg("i"));
  m.def("lower_bound_maximizer", &lower_bound_maximizer, py::arg("ctx"),
        py::arg("i"));

  py::class_<BoundUserRow>(m, "BoundUserRow")
      .def_readonly("rate_at_ne", &BoundUserRow::rate_at_ne)
      .def_readonly("bound_at_maximizer", &BoundUserRow::bound_at_maximizer)
      .def_readonly("ne_dominates", &BoundUserRow::ne_dominates);
  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("users", &BoundReport::users)
      .def_readonly("sum_rate_at_maximizers", &BoundReport::sum_rate_at_maximizers);
  m.def("ne_vs_bound_report", &ne_vs_bound_report, py::arg("ctx"),
        py::arg("ne_profile"));

  m.def("random_feasible_profile", &random_feasible_profile, py::arg("ctx"),
        py::arg("seed"));
  m.def("parse_config_text", &parse_config_text, py::arg("text"),
        py::arg("origin") = "<string>");

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readwrite("preset", &ExperimentConfig::preset)
      .def_readwrite("snr_db_list", &ExperimentConfig::snr_db_list)
      .def_readwrite("solver", &ExperimentConfig::solver)
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("seed", &ExperimentConfig::seed);

  py::class_<CsvRow>(m, "CsvRow")
      .def_readonly("example", &CsvRow::example)
      .def_readonly("snr_db", &CsvRow::snr_db)
      .def_readonly("psd", &CsvRow::psd)
      .def_readonly("converged", &CsvRow::converged)
      .def_readonly("merit", &CsvRow::merit)
      .def_readonly("user", &CsvRow::user)
      .def_readonly("rate_nats", &CsvRow::rate_nats)
      .def_readonly("sum_rate_nats", &CsvRow::sum_rate_nats)
      .def_property_readonly("game",
                             [](const CsvRow& r) { return to_string(r.game); });
  m.def("run_preset", &run_preset, py::arg("config"));
  m.def("csv_to_string", &csv_to_string, py::arg("rows"));
}
