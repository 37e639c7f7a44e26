#include "catchup/evaluation.hpp"

#include "catchup/regression.hpp"
#include "catchup/rng.hpp"
#include "parallel.hpp"

#include <stdexcept>

namespace catchup {

Confusion confusion(std::span<const int> actual, std::span<const double> predicted)
{
    if (actual.size() != predicted.size())
        throw std::invalid_argument("confusion: actual and predicted lengths differ");
    if (actual.empty())
        throw std::invalid_argument("confusion: empty input");
    Confusion c;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] < 1 || actual[i] > fail_grade)
            throw std::invalid_argument("confusion: actual grade must be observed");
        const bool predicted_pass = is_passing(predicted[i]);
        if (actual[i] < fail_grade) {
            ++c.n_pass;
            c.pass_as_fail += predicted_pass ? 0 : 1;
        } else {
            ++c.n_fail;
            c.fail_as_pass += predicted_pass ? 1 : 0;
        }
    }
    if (c.n_pass > 0)
        c.mpf = static_cast<double>(c.pass_as_fail) / static_cast<double>(c.n_pass);
    if (c.n_fail > 0)
        c.mfp = static_cast<double>(c.fail_as_pass) / static_cast<double>(c.n_fail);
    return c;
}

GroupScore score_group(std::span<const int> actual, std::span<const double> predicted)
{
    GroupScore g;
    g.group_size = actual.size();
    if (actual.empty())
        return g;
    g.conditional = confusion(actual, predicted);
    const auto n = static_cast<double>(g.group_size);
    g.group_mpf = static_cast<double>(g.conditional.pass_as_fail) / n;
    g.group_mfp = static_cast<double>(g.conditional.fail_as_pass) / n;
    return g;
}

std::optional<double> RateSeries::mean() const
{
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto &v : per_rep) {
        if (v) {
            sum += *v;
            ++n;
        }
    }
    if (n == 0)
        return std::nullopt;
    return sum / static_cast<double>(n);
}

std::size_t RateSeries::exclusions() const
{
    std::size_t n = 0;
    for (const auto &v : per_rep)
        n += v ? 0 : 1;
    return n;
}

std::optional<double> ErrorReport::mean_adjusted_r2() const
{
    if (per_rep_adjusted_r2.empty())
        return std::nullopt;
    double sum = 0.0;
    for (double v : per_rep_adjusted_r2)
        sum += v;
    return sum / static_cast<double>(per_rep_adjusted_r2.size());
}

namespace {

void check_reps(std::size_t reps)
{
    if (reps == 0)
        throw std::invalid_argument("number of repetitions must be at least 1");
}

void accumulate(ErrorReport &report, const Confusion &c)
{
    report.mpf.add(c.mpf);
    report.mfp.add(c.mfp);
    report.n_pass += c.n_pass;
    report.n_fail += c.n_fail;
    report.n_cases += c.n_pass + c.n_fail;
}

} // namespace

ErrorReport run_regression_eval(const Cohort &cohort, std::size_t reps, std::uint64_t seed,
                                const SplitConfig &split_config)
{
    check_reps(reps);
    const auto data = cohort.complete_view();

    struct Rep
    {
        Confusion conf;
        RegressionModel model;
    };
    std::vector<Rep> results(reps);
    detail::parallel_for(reps, [&](std::size_t b) {
        const auto s = split(data.size(), split_config, derive_seed(seed, b));
        std::vector<Sample> train;
        train.reserve(s.train.size());
        for (auto i : s.train)
            train.push_back(data[i]);
        try {
            results[b].model = fit(train);
        } catch (const DataError &e) {
            throw DataError("repetition " + std::to_string(b + 1) + ": " + e.what());
        }
        std::vector<int> actual;
        std::vector<double> predicted;
        for (auto i : s.test) {
            actual.push_back(data[i].target);
            predicted.push_back(predict(results[b].model, data[i].features));
        }
        results[b].conf = confusion(actual, predicted);
    });

    ErrorReport report;
    report.model = "regression";
    report.reps = reps;
    for (const auto &r : results) {
        accumulate(report, r.conf);
        report.per_rep_adjusted_r2.push_back(r.model.adjusted_r_squared);
        report.degenerate_reps += r.model.degenerate ? 1 : 0;
    }
    return report;
}

std::vector<ErrorReport> run_hybrid_eval(const Cohort &cohort, std::size_t reps, std::uint64_t seed,
                                         const HybridConfig &config, const SplitConfig &split_config,
                                         bool paper_normalization)
{
    check_reps(reps);
    const auto data = encode(cohort.complete_view(), config.encoding);
    const bool ball = config.mode == NeighborMode::EpsilonBall;

    // Per repetition: for each group (similar/completed, or the single ball
    // group) the actual grades and the mean / modal estimates.
    struct Group
    {
        std::vector<int> actual;
        std::vector<double> mean;
        std::vector<double> modal;
    };
    struct Rep
    {
        std::array<Group, 2> groups;
        std::size_t unclassified = 0;
    };
    std::vector<Rep> results(reps);
    detail::parallel_for(reps, [&](std::size_t b) {
        const auto s = split(data.size(), split_config, derive_seed(seed, b));
        std::vector<Sample> train;
        train.reserve(s.train.size());
        for (auto i : s.train)
            train.push_back(data[i]);
        auto &rep = results[b];
        for (auto i : s.test) {
            auto cls = build_class(data[i].features, train, config);
            if (cls.members.empty()) {
                ++rep.unclassified;
                continue;
            }
            const auto est = estimate(std::move(cls), train);
            auto &g = rep.groups[est.neighbors.mode == ClassMode::Similar ? 0 : 1];
            g.actual.push_back(data[i].target);
            g.mean.push_back(est.mean_grade);
            g.modal.push_back(est.modal_grade);
        }
    });

    const std::array<std::array<const char *, 2>, 2> names =
        ball ? std::array<std::array<const char *, 2>, 2>{{{"ball-avg", "ball-mode"}, {"", ""}}}
             : std::array<std::array<const char *, 2>, 2>{{{"1a", "1b"}, {"2a", "2b"}}};
    // Ball classes are reported through the second slot.
    const std::array<std::size_t, 2> group_slot = ball ? std::array<std::size_t, 2>{1, 1}
                                                       : std::array<std::size_t, 2>{0, 1};
    std::vector<ErrorReport> reports;
    for (std::size_t g = 0; g < (ball ? 1u : 2u); ++g) {
        for (std::size_t rule = 0; rule < 2; ++rule) {
            ErrorReport report;
            report.model = names[g][rule];
            report.reps = reps;
            if (paper_normalization) {
                report.group_mpf.emplace();
                report.group_mfp.emplace();
            }
            for (const auto &rep : results) {
                const auto &grp = rep.groups[group_slot[g]];
                const auto score = score_group(grp.actual, rule == 0 ? grp.mean : grp.modal);
                accumulate(report, score.conditional);
                if (paper_normalization) {
                    report.group_mpf->add(score.group_mpf);
                    report.group_mfp->add(score.group_mfp);
                }
                report.unclassified += rep.unclassified;
            }
            reports.push_back(std::move(report));
        }
    }
    return reports;
}

} // namespace catchup
