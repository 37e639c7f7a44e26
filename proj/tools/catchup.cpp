// catchup: decide pass/fail for students who missed one core exam.

#include "catchup/evaluation.hpp"
#include "catchup/records.hpp"
#include "catchup/report.hpp"
#include "catchup/rescue.hpp"
#include "catchup/synthetic.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

using namespace catchup;

constexpr int exit_usage = 1;
constexpr int exit_data = 2;

struct CommonOpts
{
    std::string input;
    int target = 4;
    std::optional<int> year;
    std::optional<int> region;
    std::optional<int> gender;
    std::size_t reps = default_reps;
    std::uint64_t seed = 0;
    double train_frac = 0.75;
    bool paper_split = false;
    std::string format = "text";
};

struct HybridOpts
{
    std::size_t k = default_neighbor_count;
    std::optional<double> epsilon;
    bool bands = false;
    std::string rule = "both";
};

void add_input(CLI::App *cmd, CommonOpts &o)
{
    cmd->add_option("--input", o.input, "Record file (case_id,year,gender,region,g1,g2,g3,g4)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--target", o.target, "Position (1-4) of the grade to impute")->check(CLI::Range(1, 4));
    cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "machine"}));
}

void add_cohort(CLI::App *cmd, CommonOpts &o)
{
    cmd->add_option("--year", o.year, "Restrict to one year");
    cmd->add_option("--region", o.region, "Restrict to one region")->check(CLI::Range(1, 6));
    cmd->add_option("--gender", o.gender, "Restrict to one gender (1 female, 2 male)")->check(CLI::Range(1, 2));
}

void add_resampling(CLI::App *cmd, CommonOpts &o)
{
    cmd->add_option("--reps", o.reps, "Monte Carlo repetitions")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("--train-frac", o.train_frac, "Training fraction (parametric split)")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_flag("--paper-split", o.paper_split, "Draw round(1.5*round(2N/3))+2000 indices with replacement instead");
}

void add_hybrid(CLI::App *cmd, HybridOpts &h)
{
    cmd->add_option("--k", h.k, "Neighbor count K")->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon", h.epsilon, "Use an epsilon ball (squared Euclidean radius) instead of K")
        ->check(CLI::NonNegativeNumber);
    cmd->add_flag("--bands", h.bands, "Encode predictors as credit/pass/fail bands");
}

std::string option_value(const CLI::Option *opt)
{
    if (opt->count() > 0) {
        if (opt->get_items_expected_max() == 0)
            return "true";
        std::string joined;
        for (const auto &r : opt->results())
            joined += (joined.empty() ? "" : ",") + r;
        return joined;
    }
    if (opt->get_items_expected_max() == 0)
        return "false";
    const auto d = opt->get_default_str();
    return d.empty() ? "-" : d;
}

RunManifest make_manifest(const CLI::App *cmd, std::uint64_t seed, const std::string &input)
{
    RunManifest m;
    m.command = cmd->get_name();
    for (const auto *opt : cmd->get_options()) {
        if (opt->get_lnames().empty() || opt->get_lnames().front() == "help")
            continue;
        m.flags.emplace_back(opt->get_lnames().front(), option_value(opt));
    }
    std::sort(m.flags.begin(), m.flags.end());
    m.seed = seed;
    if (!input.empty())
        m.input_digest = file_digest(input);
    m.timestamp = utc_timestamp();
    return m;
}

Format format_of(const CommonOpts &o)
{
    return o.format == "machine" ? Format::Machine : Format::Text;
}

SplitConfig split_of(const CommonOpts &o)
{
    if (!(o.train_frac > 0.0 && o.train_frac < 1.0))
        throw CLI::ValidationError("--train-frac", "must lie strictly between 0 and 1");
    return {o.paper_split ? SplitMode::Paper : SplitMode::Parametric, o.train_frac};
}

HybridConfig hybrid_of(const HybridOpts &h)
{
    HybridConfig c;
    c.k = h.k;
    if (h.epsilon) {
        c.mode = NeighborMode::EpsilonBall;
        c.epsilon = *h.epsilon;
    }
    c.encoding = h.bands ? FeatureEncoding::Bands : FeatureEncoding::Raw;
    return c;
}

Engine engine_of(const std::string &name)
{
    static const std::map<std::string, Engine> engines{{"reg", Engine::Regression},
                                                       {"hybrid", Engine::HybridRecommended},
                                                       {"hybrid-avg", Engine::HybridAverage},
                                                       {"hybrid-mode", Engine::HybridMostFrequent}};
    return engines.at(name);
}

CohortFilter filter_of(const CommonOpts &o)
{
    CohortFilter f;
    f.year = o.year;
    f.region = o.region;
    f.gender = o.gender;
    f.complete_only = true;
    return f;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Impute a missing core-exam grade and decide pass/fail", "catchup"};
    app.set_version_flag("--version", std::string(catchup::version));
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    // gen
    GenConfig gen;
    std::string gen_out;
    auto *gen_cmd = app.add_subcommand("gen", "Generate a synthetic population");
    gen_cmd->add_option("--n", gen.n_records, "Number of records")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--missing-rate", gen.missing_rate, "Probability the target grade is missing");
    gen_cmd->add_option("--noise", gen.noise_spread, "Per-subject noise spread");
    gen_cmd->add_option("--ability-mean", gen.ability_mean, "Mean latent grade");
    gen_cmd->add_option("--ability-spread", gen.ability_spread, "Spread of the latent grade");
    gen_cmd->add_option("--gender-split", gen.gender_split, "Fraction female");
    gen_cmd->add_option("--years", gen.years, "Years to draw from")->delimiter(',');
    gen_cmd->add_option("--regions", gen.regions, "Regions to draw from")->delimiter(',');
    gen_cmd->add_option("--target", gen.target_index, "Grade position blanked when missing")->check(CLI::Range(1, 4));
    gen_cmd->add_option("--first-id", gen.first_case_id, "First case_id");
    gen_cmd->add_option("--seed", gen.seed, "Seed");
    gen_cmd->add_option("--out", gen_out, "Output record file")->required();
    std::string gen_format = "text";
    gen_cmd->add_option("--format", gen_format, "Report format")->check(CLI::IsMember({"text", "machine"}));

    // scan
    CommonOpts scan;
    auto *scan_cmd = app.add_subcommand("scan", "List rescuable cases (exactly one missing grade)");
    add_input(scan_cmd, scan);
    scan_cmd->add_option("--year", scan.year, "Restrict to one year");
    scan_cmd->add_option("--region", scan.region, "Restrict to one region")->check(CLI::Range(1, 6));

    // eval-regression
    CommonOpts er;
    bool er_paper_norm = false;
    auto *er_cmd = app.add_subcommand("eval-regression", "Monte Carlo misclassification rates of the OLS imputer");
    add_input(er_cmd, er);
    add_cohort(er_cmd, er);
    add_resampling(er_cmd, er);
    er_cmd->add_flag("--paper-normalization", er_paper_norm, "Accepted for symmetry; regression rates are conditional");

    // eval-hybrid
    CommonOpts eh;
    HybridOpts eh_h;
    bool eh_paper_norm = false;
    auto *eh_cmd = app.add_subcommand("eval-hybrid", "Monte Carlo misclassification rates of the hybrid imputer");
    add_input(eh_cmd, eh);
    add_cohort(eh_cmd, eh);
    add_resampling(eh_cmd, eh);
    add_hybrid(eh_cmd, eh_h);
    eh_cmd->add_option("--rule", eh_h.rule, "Decision rule to report")->check(CLI::IsMember({"avg", "mode", "both"}));
    eh_cmd->add_flag("--paper-normalization", eh_paper_norm, "Also report rates normalized by group size");

    // predict
    CommonOpts pr;
    HybridOpts pr_h;
    std::int64_t pr_case = 0;
    std::string pr_engine = "reg";
    bool pr_same_gender = false;
    auto *pr_cmd = app.add_subcommand("predict", "Majority-vote decision for one case");
    add_input(pr_cmd, pr);
    add_resampling(pr_cmd, pr);
    add_hybrid(pr_cmd, pr_h);
    pr_cmd->add_option("--case", pr_case, "case_id to decide")->required();
    pr_cmd->add_option("--engine", pr_engine, "Imputation engine")
        ->check(CLI::IsMember({"reg", "hybrid", "hybrid-avg", "hybrid-mode"}));
    pr_cmd->add_flag("--same-gender", pr_same_gender, "Also restrict the cohort to the case's gender");

    // rescue-all
    CommonOpts ra;
    HybridOpts ra_h;
    std::string ra_engine = "reg";
    bool ra_same_gender = false;
    auto *ra_cmd = app.add_subcommand("rescue-all", "Decide every valid rescuable case");
    add_input(ra_cmd, ra);
    add_resampling(ra_cmd, ra);
    add_hybrid(ra_cmd, ra_h);
    ra_cmd->add_option("--engine", ra_engine, "Imputation engine")
        ->check(CLI::IsMember({"reg", "hybrid", "hybrid-avg", "hybrid-mode"}));
    ra_cmd->add_flag("--same-gender", ra_same_gender, "Also restrict cohorts to the case's gender");

    if (argc <= 1) {
        std::cerr << app.help();
        return exit_usage;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*gen_cmd) {
            const auto records = generate(gen);
            save_records(gen_out, records);
            const auto m = make_manifest(gen_cmd, gen.seed, "");
            write_manifest_only(std::cout, gen_format == "machine" ? Format::Machine : Format::Text, m,
                                "wrote " + std::to_string(records.size()) + " records to " + gen_out);
        } else if (*scan_cmd) {
            const auto records = load_records(scan.input);
            CohortFilter f;
            f.year = scan.year;
            f.region = scan.region;
            const auto cohort = build_cohort(records, f, scan.target);
            const auto cases = scan_rescuable(cohort.records(), scan.target);
            write_cases(std::cout, format_of(scan), make_manifest(scan_cmd, 0, scan.input), cases);
        } else if (*er_cmd) {
            const auto records = load_records(er.input);
            const auto cohort = build_cohort(records, filter_of(er), er.target);
            const auto report = run_regression_eval(cohort, er.reps, er.seed, split_of(er));
            write_error_reports(std::cout, format_of(er), make_manifest(er_cmd, er.seed, er.input),
                                std::span(&report, 1));
        } else if (*eh_cmd) {
            const auto records = load_records(eh.input);
            const auto cohort = build_cohort(records, filter_of(eh), eh.target);
            auto reports = run_hybrid_eval(cohort, eh.reps, eh.seed, hybrid_of(eh_h), split_of(eh), eh_paper_norm);
            if (eh_h.rule != "both") {
                const bool avg = eh_h.rule == "avg";
                std::erase_if(reports, [&](const ErrorReport &r) {
                    const bool is_avg = r.model == "1a" || r.model == "2a" || r.model == "ball-avg";
                    return is_avg != avg;
                });
            }
            write_error_reports(std::cout, format_of(eh), make_manifest(eh_cmd, eh.seed, eh.input), reports);
        } else if (*pr_cmd) {
            const auto records = load_records(pr.input);
            const auto it = std::find_if(records.begin(), records.end(),
                                         [&](const StudentRecord &r) { return r.case_id == pr_case; });
            if (it == records.end())
                throw DataError("case " + std::to_string(pr_case) + " not found");
            int target = pr.target;
            if (pr_cmd->get_option("--target")->count() == 0) {
                for (int p = 1; p <= subject_count; ++p)
                    if (it->grade(p).is_missing())
                        target = p;
            }
            const auto cases = scan_rescuable(std::span(&*it, 1), target);
            if (cases.empty())
                throw DataError("case " + std::to_string(pr_case) + " is not missing exactly grade " + std::to_string(target));
            EngineParams params{hybrid_of(pr_h), split_of(pr), pr_same_gender};
            const auto cohort = cohort_for_case(records, cases.front(), params);
            const auto decision = predict_case(cases.front(), cohort, engine_of(pr_engine), pr.reps, pr.seed, params);
            write_decisions(std::cout, format_of(pr), make_manifest(pr_cmd, pr.seed, pr.input),
                            std::span(&decision, 1));
        } else if (*ra_cmd) {
            const auto records = load_records(ra.input);
            EngineParams params{hybrid_of(ra_h), split_of(ra), ra_same_gender};
            const auto decisions = rescue_all(records, ra.target, engine_of(ra_engine), ra.reps, ra.seed, params);
            write_decisions(std::cout, format_of(ra), make_manifest(ra_cmd, ra.seed, ra.input), decisions);
        }
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    }
    return 0;
}
