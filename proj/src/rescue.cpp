#include "catchup/rescue.hpp"

#include "catchup/regression.hpp"
#include "catchup/rng.hpp"
#include "parallel.hpp"

#include <map>
#include <stdexcept>

namespace catchup {

std::string to_string(Engine engine)
{
    switch (engine) {
    case Engine::Regression: return "regression";
    case Engine::HybridAverage: return "hybrid-avg";
    case Engine::HybridMostFrequent: return "hybrid-mode";
    case Engine::HybridRecommended: return "hybrid";
    }
    return "?";
}

std::string to_string(Verdict verdict)
{
    switch (verdict) {
    case Verdict::PassGranted: return "PassGranted";
    case Verdict::Fail: return "Fail";
    case Verdict::Undecidable: return "Undecidable";
    }
    return "?";
}

double RescueDecision::mean_estimate() const
{
    const auto &src = per_rep_mean.empty() ? per_rep_estimates : per_rep_mean;
    if (src.empty())
        return 0.0;
    double sum = 0.0;
    for (double v : src)
        sum += v;
    return sum / static_cast<double>(src.size());
}

std::optional<int> RescueDecision::modal_estimate() const
{
    if (per_rep_modal.empty())
        return std::nullopt;
    std::array<std::size_t, fail_grade + 1> freq{};
    for (int g : per_rep_modal)
        ++freq[static_cast<std::size_t>(g)];
    int best = 0;
    for (int g = 1; g <= fail_grade; ++g)
        if (freq[static_cast<std::size_t>(g)] > 0 && freq[static_cast<std::size_t>(g)] >= freq[static_cast<std::size_t>(best)])
            best = g;
    return best;
}

Verdict vote(double grade4p)
{
    return grade4p > 0.5 ? Verdict::PassGranted : Verdict::Fail;
}

namespace {

bool is_hybrid(Engine e)
{
    return e != Engine::Regression;
}

} // namespace

RescueDecision predict_case(const RescuableCase &rescue_case, const Cohort &cohort, Engine engine, std::size_t reps,
                            std::uint64_t seed, const EngineParams &params)
{
    if (!rescue_case.valid)
        throw std::invalid_argument("case " + std::to_string(rescue_case.case_id)
                                    + " is not a valid rescue candidate (an observed grade is a fail)");
    for (int g : rescue_case.observed)
        if (g < 1 || g > fail_grade)
            throw std::invalid_argument("case " + std::to_string(rescue_case.case_id)
                                        + " is not a valid rescue candidate (missing predictor)");
    if (rescue_case.missing_index != cohort.target_index())
        throw std::invalid_argument("case " + std::to_string(rescue_case.case_id)
                                    + ": target grade is not the missing one");
    const auto &f = cohort.filter();
    if ((f.year && *f.year != rescue_case.year) || (f.region && *f.region != rescue_case.region))
        throw std::invalid_argument("cohort does not match the case's year and region");
    if (reps == 0)
        throw std::invalid_argument("number of repetitions must be at least 1");

    const auto data = is_hybrid(engine) ? encode(cohort.complete_view(), params.hybrid.encoding)
                                        : cohort.complete_view();
    const std::size_t min_size = is_hybrid(engine) ? 2 : min_regression_rows + 1;
    if (data.size() < min_size)
        throw InsufficientCohort("insufficient cohort: " + std::to_string(data.size())
                                 + " complete records for case " + std::to_string(rescue_case.case_id));
    const Triple query = is_hybrid(engine) ? encode(rescue_case.observed, params.hybrid.encoding)
                                           : rescue_case.observed;

    RescueDecision out;
    out.rescue_case = rescue_case;
    out.engine = engine;
    out.reps = reps;
    out.cohort_size = data.size();
    out.per_rep_estimates.resize(reps);
    if (is_hybrid(engine)) {
        out.per_rep_mean.resize(reps);
        out.per_rep_modal.resize(reps);
        out.per_rep_mode.resize(reps);
    }

    detail::parallel_for(reps, [&](std::size_t b) {
        const auto s = split(data.size(), params.split, derive_seed(seed, b));
        std::vector<Sample> train;
        train.reserve(s.train.size());
        for (auto i : s.train)
            train.push_back(data[i]);
        if (!is_hybrid(engine)) {
            if (train.size() < min_regression_rows)
                throw InsufficientCohort("insufficient cohort: only " + std::to_string(train.size())
                                         + " training rows for case " + std::to_string(rescue_case.case_id));
            out.per_rep_estimates[b] = predict(fit(train), query);
            return;
        }
        const auto est = estimate(build_class(query, train, params.hybrid), train);
        out.per_rep_mean[b] = est.mean_grade;
        out.per_rep_modal[b] = est.modal_grade;
        out.per_rep_mode[b] = est.neighbors.mode;
        DecisionRule rule = engine == Engine::HybridAverage      ? DecisionRule::Average
                            : engine == Engine::HybridMostFrequent ? DecisionRule::MostFrequent
                                                                   : recommended_rule(est.neighbors.mode);
        out.per_rep_estimates[b] = rule == DecisionRule::Average ? est.mean_grade : est.modal_grade;
    });

    std::size_t passes = 0;
    for (double e : out.per_rep_estimates)
        passes += is_passing(e) ? 1 : 0;
    out.grade4p = static_cast<double>(passes) / static_cast<double>(reps);
    out.verdict = vote(out.grade4p);
    return out;
}

Cohort cohort_for_case(std::span<const StudentRecord> records, const RescuableCase &rescue_case,
                       const EngineParams &params)
{
    CohortFilter filter;
    filter.year = rescue_case.year;
    filter.region = rescue_case.region;
    filter.complete_only = true;
    if (params.same_gender)
        filter.gender = static_cast<int>(rescue_case.gender);
    return build_cohort(records, filter, rescue_case.missing_index);
}

std::vector<RescueDecision> rescue_all(std::span<const StudentRecord> records, int target_index, Engine engine,
                                       std::size_t reps, std::uint64_t seed, const EngineParams &params)
{
    std::vector<RescueDecision> out;
    for (const auto &c : scan_rescuable(records, target_index)) {
        if (!c.valid)
            continue;
        const auto cohort = cohort_for_case(records, c, params);
        try {
            out.push_back(predict_case(c, cohort, engine, reps, seed, params));
        } catch (const std::exception &e) {
            RescueDecision d;
            d.rescue_case = c;
            d.engine = engine;
            d.reps = reps;
            d.cohort_size = cohort.complete_view().size();
            d.verdict = Verdict::Undecidable;
            d.reason = e.what();
            out.push_back(std::move(d));
        }
    }
    return out;
}

} // namespace catchup
