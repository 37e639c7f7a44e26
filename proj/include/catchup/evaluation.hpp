#ifndef CATCHUP_EVALUATION_HPP
#define CATCHUP_EVALUATION_HPP

#include "catchup/hybrid.hpp"
#include "catchup/records.hpp"
#include "catchup/sampling.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace catchup {

/// Two-sided misclassification counts for pass (<= 8) / fail (9) outcomes.
/// A rate whose denominator is zero is left empty rather than reported as 0.
struct Confusion
{
    std::size_t n_pass = 0;       // actual grade < 9
    std::size_t n_fail = 0;       // actual grade == 9
    std::size_t pass_as_fail = 0; // actual pass, estimate > 8
    std::size_t fail_as_pass = 0; // actual fail, estimate <= 8
    std::optional<double> mpf;
    std::optional<double> mfp;
};

Confusion confusion(std::span<const int> actual, std::span<const double> predicted);

/// Confusion plus the rates normalized by group size instead of by class size.
struct GroupScore
{
    Confusion conditional;
    std::size_t group_size = 0;
    std::optional<double> group_mpf;
    std::optional<double> group_mfp;
};

GroupScore score_group(std::span<const int> actual, std::span<const double> predicted);

/// Averages per-repetition rates, skipping undefined ones.
struct RateSeries
{
    std::vector<std::optional<double>> per_rep;

    void add(std::optional<double> v) { per_rep.push_back(v); }
    std::optional<double> mean() const;
    std::size_t exclusions() const;
};

struct ErrorReport
{
    std::string model;
    std::size_t reps = 0;
    RateSeries mpf;
    RateSeries mfp;
    std::size_t n_pass = 0; // summed over repetitions
    std::size_t n_fail = 0;
    std::size_t n_cases = 0;

    // Regression only.
    std::vector<double> per_rep_adjusted_r2;
    std::size_t degenerate_reps = 0;
    std::optional<double> mean_adjusted_r2() const;

    // Group-size normalization (fidelity mode, hybrid only).
    std::optional<RateSeries> group_mpf;
    std::optional<RateSeries> group_mfp;

    // Test cases with no neighbors (epsilon-ball mode only).
    std::size_t unclassified = 0;
};

ErrorReport run_regression_eval(const Cohort &cohort, std::size_t reps, std::uint64_t seed,
                                const SplitConfig &split_config = {});

/// Reports for models 1a, 1b (similar group), 2a, 2b (completed group); in
/// epsilon-ball mode, "ball-avg" and "ball-mode".
std::vector<ErrorReport> run_hybrid_eval(const Cohort &cohort, std::size_t reps, std::uint64_t seed,
                                         const HybridConfig &config, const SplitConfig &split_config = {},
                                         bool paper_normalization = false);

} // namespace catchup

#endif
