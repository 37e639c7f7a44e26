#include "catchup/evaluation.hpp"
#include "catchup/grade.hpp"
#include "catchup/hybrid.hpp"
#include "catchup/records.hpp"
#include "catchup/regression.hpp"
#include "catchup/report.hpp"
#include "catchup/rescue.hpp"
#include "catchup/sampling.hpp"
#include "catchup/synthetic.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace catchup;

namespace {

std::vector<int> grades_of(const StudentRecord &r)
{
    std::vector<int> out;
    for (const auto &g : r.grades)
        out.push_back(g.is_missing() ? -1 : g.value());
    return out;
}

Cohort make_cohort(const std::vector<StudentRecord> &records, int target, std::optional<int> year,
                   std::optional<int> region, std::optional<int> gender)
{
    CohortFilter f;
    f.year = year;
    f.region = region;
    f.gender = gender;
    return build_cohort(records, f, target);
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Missing-grade imputation and rescue decisions";
    m.attr("__version__") = version;

    auto data_error = py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<InsufficientCohort>(m, "InsufficientCohort", data_error.ptr());

    m.def("is_passing", &is_passing, py::arg("estimate"));

    py::class_<StudentRecord>(m, "StudentRecord")
        .def_readonly("case_id", &StudentRecord::case_id)
        .def_readonly("year", &StudentRecord::year)
        .def_property_readonly("gender", [](const StudentRecord &r) { return static_cast<int>(r.gender); })
        .def_readonly("region", &StudentRecord::region)
        .def_property_readonly("grades", &grades_of)
        .def("missing_count", &StudentRecord::missing_count)
        .def("complete", &StudentRecord::complete)
        .def("__eq__", [](const StudentRecord &a, const StudentRecord &b) { return a == b; })
        .def("__repr__", [](const StudentRecord &r) {
            auto g = grades_of(r);
            return "StudentRecord(" + std::to_string(r.case_id) + ", " + std::to_string(r.year) + ", grades=[" +
                   std::to_string(g[0]) + ", " + std::to_string(g[1]) + ", " + std::to_string(g[2]) + ", " +
                   std::to_string(g[3]) + "])";
        });

    m.def("make_record", &make_record, py::arg("case_id"), py::arg("year"), py::arg("gender"), py::arg("region"),
          py::arg("grades"));
    m.def("load_records", &load_records, py::arg("path"));
    m.def("save_records", &save_records, py::arg("path"), py::arg("records"));

    py::class_<RescuableCase>(m, "RescuableCase")
        .def_readonly("case_id", &RescuableCase::case_id)
        .def_readonly("year", &RescuableCase::year)
        .def_readonly("region", &RescuableCase::region)
        .def_property_readonly("gender", [](const RescuableCase &c) { return static_cast<int>(c.gender); })
        .def_readonly("observed", &RescuableCase::observed)
        .def_readonly("missing_index", &RescuableCase::missing_index)
        .def_readonly("valid", &RescuableCase::valid);

    m.def(
        "scan_rescuable",
        [](const std::vector<StudentRecord> &records, int target) { return scan_rescuable(records, target); },
        py::arg("records"), py::arg("target") = 4);

    py::class_<Sample>(m, "Sample")
        .def(py::init([](std::array<int, 3> f, int t) { return Sample{f, t}; }), py::arg("features"),
             py::arg("target"))
        .def_readwrite("features", &Sample::features)
        .def_readwrite("target", &Sample::target);

    py::class_<RegressionModel>(m, "RegressionModel")
        .def_readonly("intercept", &RegressionModel::intercept)
        .def_readonly("slopes", &RegressionModel::slopes)
        .def_readonly("r_squared", &RegressionModel::r_squared)
        .def_readonly("adjusted_r_squared", &RegressionModel::adjusted_r_squared)
        .def_readonly("n_train", &RegressionModel::n_train)
        .def_readonly("degenerate", &RegressionModel::degenerate);

    m.def(
        "fit", [](const std::vector<Sample> &rows) { return fit(rows); }, py::arg("samples"));
    m.def("predict", &predict, py::arg("model"), py::arg("features"));
    m.def("gate", &gate, py::arg("model"), py::arg("threshold") = default_gate_threshold);

    py::enum_<ClassMode>(m, "ClassMode")
        .value("Similar", ClassMode::Similar)
        .value("Completed", ClassMode::Completed)
        .value("EpsilonBall", ClassMode::EpsilonBall);
    py::enum_<NeighborMode>(m, "NeighborMode")
        .value("Hybrid", NeighborMode::Hybrid)
        .value("EpsilonBall", NeighborMode::EpsilonBall);
    py::enum_<DecisionRule>(m, "DecisionRule")
        .value("Average", DecisionRule::Average)
        .value("MostFrequent", DecisionRule::MostFrequent);
    py::enum_<PassFail>(m, "PassFail").value("Pass", PassFail::Pass).value("Fail", PassFail::Fail);

    py::class_<HybridConfig>(m, "HybridConfig")
        .def(py::init([](std::size_t k, std::optional<double> epsilon, bool bands) {
                 HybridConfig c;
                 c.k = k;
                 if (epsilon) {
                     c.mode = NeighborMode::EpsilonBall;
                     c.epsilon = *epsilon;
                 }
                 c.encoding = bands ? FeatureEncoding::Bands : FeatureEncoding::Raw;
                 return c;
             }),
             py::arg("k") = default_neighbor_count, py::arg("epsilon") = py::none(), py::arg("bands") = false)
        .def_readwrite("k", &HybridConfig::k)
        .def_readwrite("mode", &HybridConfig::mode)
        .def_readwrite("epsilon", &HybridConfig::epsilon);

    py::class_<NeighborClass>(m, "NeighborClass")
        .def_readonly("mode", &NeighborClass::mode)
        .def_readonly("members", &NeighborClass::members)
        .def_readonly("k_sim", &NeighborClass::k_sim)
        .def_readonly("k", &NeighborClass::k);

    py::class_<HybridEstimate>(m, "HybridEstimate")
        .def_readonly("mean_grade", &HybridEstimate::mean_grade)
        .def_readonly("modal_grade", &HybridEstimate::modal_grade)
        .def_readonly("neighbors", &HybridEstimate::neighbors);

    m.def(
        "build_class",
        [](const Triple &q, const std::vector<Sample> &train, const HybridConfig &c) { return build_class(q, train, c); },
        py::arg("query"), py::arg("train"), py::arg("config") = HybridConfig{});
    m.def(
        "estimate", [](const NeighborClass &n, const std::vector<Sample> &train) { return estimate(n, train); },
        py::arg("neighbors"), py::arg("train"));
    m.def("decide", &decide, py::arg("estimate"), py::arg("rule"));
    m.def("recommended_rule", &recommended_rule, py::arg("mode"));

    py::class_<Confusion>(m, "Confusion")
        .def_readonly("n_pass", &Confusion::n_pass)
        .def_readonly("n_fail", &Confusion::n_fail)
        .def_readonly("pass_as_fail", &Confusion::pass_as_fail)
        .def_readonly("fail_as_pass", &Confusion::fail_as_pass)
        .def_readonly("mpf", &Confusion::mpf)
        .def_readonly("mfp", &Confusion::mfp);
    m.def(
        "confusion",
        [](const std::vector<int> &actual, const std::vector<double> &predicted) {
            return confusion(actual, predicted);
        },
        py::arg("actual"), py::arg("predicted"));

    py::enum_<SplitMode>(m, "SplitMode").value("Parametric", SplitMode::Parametric).value("Paper", SplitMode::Paper);
    py::class_<SplitConfig>(m, "SplitConfig")
        .def(py::init([](SplitMode mode, double f) { return SplitConfig{mode, f}; }),
             py::arg("mode") = SplitMode::Parametric, py::arg("train_fraction") = 0.75)
        .def_readwrite("mode", &SplitConfig::mode)
        .def_readwrite("train_fraction", &SplitConfig::train_fraction);
    py::class_<SplitIndices>(m, "SplitIndices")
        .def_readonly("train", &SplitIndices::train)
        .def_readonly("test", &SplitIndices::test)
        .def_readonly("draws", &SplitIndices::draws)
        .def("train_fraction", &SplitIndices::train_fraction);
    m.def("split", &split, py::arg("n"), py::arg("config") = SplitConfig{}, py::arg("seed") = 0);

    py::class_<Cohort>(m, "Cohort")
        .def("__len__", [](const Cohort &c) { return c.records().size(); })
        .def_property_readonly("records", &Cohort::records)
        .def("complete_view", &Cohort::complete_view);
    m.def("build_cohort", &make_cohort, py::arg("records"), py::arg("target") = 4, py::arg("year") = py::none(),
          py::arg("region") = py::none(), py::arg("gender") = py::none());

    py::class_<ErrorReport>(m, "ErrorReport")
        .def_readonly("model", &ErrorReport::model)
        .def_readonly("reps", &ErrorReport::reps)
        .def_property_readonly("mpf", [](const ErrorReport &r) { return r.mpf.mean(); })
        .def_property_readonly("mfp", [](const ErrorReport &r) { return r.mfp.mean(); })
        .def_property_readonly("mpf_per_rep", [](const ErrorReport &r) { return r.mpf.per_rep; })
        .def_property_readonly("mfp_per_rep", [](const ErrorReport &r) { return r.mfp.per_rep; })
        .def_readonly("n_pass", &ErrorReport::n_pass)
        .def_readonly("n_fail", &ErrorReport::n_fail)
        .def_readonly("per_rep_adjusted_r2", &ErrorReport::per_rep_adjusted_r2)
        .def("mean_adjusted_r2", &ErrorReport::mean_adjusted_r2)
        .def_readonly("unclassified", &ErrorReport::unclassified);

    m.def("run_regression_eval", &run_regression_eval, py::arg("cohort"), py::arg("reps") = 100,
          py::arg("seed") = 0, py::arg("split") = SplitConfig{}, py::call_guard<py::gil_scoped_release>());
    m.def("run_hybrid_eval", &run_hybrid_eval, py::arg("cohort"), py::arg("reps") = 100, py::arg("seed") = 0,
          py::arg("config") = HybridConfig{}, py::arg("split") = SplitConfig{},
          py::arg("paper_normalization") = false, py::call_guard<py::gil_scoped_release>());

    py::enum_<Engine>(m, "Engine")
        .value("Regression", Engine::Regression)
        .value("HybridAverage", Engine::HybridAverage)
        .value("HybridMostFrequent", Engine::HybridMostFrequent)
        .value("HybridRecommended", Engine::HybridRecommended);
    py::enum_<Verdict>(m, "Verdict")
        .value("PassGranted", Verdict::PassGranted)
        .value("Fail", Verdict::Fail)
        .value("Undecidable", Verdict::Undecidable);
    py::class_<EngineParams>(m, "EngineParams")
        .def(py::init([](HybridConfig h, SplitConfig s, bool same_gender) { return EngineParams{h, s, same_gender}; }),
             py::arg("hybrid") = HybridConfig{}, py::arg("split") = SplitConfig{}, py::arg("same_gender") = false);

    py::class_<RescueDecision>(m, "RescueDecision")
        .def_readonly("case", &RescueDecision::rescue_case)
        .def_readonly("engine", &RescueDecision::engine)
        .def_readonly("reps", &RescueDecision::reps)
        .def_readonly("cohort_size", &RescueDecision::cohort_size)
        .def_readonly("grade4p", &RescueDecision::grade4p)
        .def_readonly("per_rep_estimates", &RescueDecision::per_rep_estimates)
        .def_readonly("verdict", &RescueDecision::verdict)
        .def_readonly("reason", &RescueDecision::reason)
        .def("mean_estimate", &RescueDecision::mean_estimate)
        .def("modal_estimate", &RescueDecision::modal_estimate);

    m.def("vote", &vote, py::arg("grade4p"));
    m.def("predict_case", &predict_case, py::arg("case"), py::arg("cohort"), py::arg("engine") = Engine::Regression,
          py::arg("reps") = default_reps, py::arg("seed") = 0, py::arg("params") = EngineParams{},
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "rescue_all",
        [](const std::vector<StudentRecord> &records, int target, Engine engine, std::size_t reps, std::uint64_t seed,
           const EngineParams &params) {
            py::gil_scoped_release release;
            return rescue_all(records, target, engine, reps, seed, params);
        },
        py::arg("records"), py::arg("target") = 4, py::arg("engine") = Engine::Regression,
        py::arg("reps") = default_reps, py::arg("seed") = 0, py::arg("params") = EngineParams{});

    py::class_<GenConfig>(m, "GenConfig")
        .def(py::init<>())
        .def_readwrite("n_records", &GenConfig::n_records)
        .def_readwrite("years", &GenConfig::years)
        .def_readwrite("regions", &GenConfig::regions)
        .def_readwrite("gender_split", &GenConfig::gender_split)
        .def_readwrite("ability_mean", &GenConfig::ability_mean)
        .def_readwrite("ability_spread", &GenConfig::ability_spread)
        .def_readwrite("noise_spread", &GenConfig::noise_spread)
        .def_readwrite("missing_rate", &GenConfig::missing_rate)
        .def_readwrite("target_index", &GenConfig::target_index)
        .def_readwrite("seed", &GenConfig::seed)
        .def_readwrite("first_case_id", &GenConfig::first_case_id);
    m.def("generate", &generate, py::arg("config") = GenConfig{});
    m.def(
        "embed_cases",
        [](std::vector<StudentRecord> records, const std::vector<StudentRecord> &cases) {
            return embed_cases(std::move(records), cases);
        },
        py::arg("records"), py::arg("cases"));
}
