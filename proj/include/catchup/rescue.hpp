#ifndef CATCHUP_RESCUE_HPP
#define CATCHUP_RESCUE_HPP

#include "catchup/hybrid.hpp"
#include "catchup/records.hpp"
#include "catchup/sampling.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace catchup {

/// The cohort is too small for the chosen engine.
class InsufficientCohort : public DataError
{
public:
    using DataError::DataError;
};

enum class Engine {
    Regression,
    HybridAverage,
    HybridMostFrequent,
    /// Most frequent grade for similar classes, average for completed ones.
    HybridRecommended,
};

std::string to_string(Engine engine);

struct EngineParams
{
    HybridConfig hybrid;
    SplitConfig split;
    /// Also restrict the cohort to the case's gender.
    bool same_gender = false;
};

enum class Verdict { PassGranted, Fail, Undecidable };

std::string to_string(Verdict verdict);

inline constexpr std::size_t default_reps = 100;

struct RescueDecision
{
    RescuableCase rescue_case;
    Engine engine = Engine::Regression;
    std::size_t reps = 0;
    std::size_t cohort_size = 0; // complete records available for training
    /// Fraction of repetitions whose estimate is a pass (<= 8).
    double grade4p = 0.0;
    std::vector<double> per_rep_estimates;
    // Hybrid engines: per repetition neighbor-class statistics.
    std::vector<double> per_rep_mean;
    std::vector<int> per_rep_modal;
    std::vector<ClassMode> per_rep_mode;
    Verdict verdict = Verdict::Fail;
    std::string reason; // set for Undecidable

    double mean_estimate() const;
    /// Most frequent per-repetition modal grade (hybrid engines only).
    std::optional<int> modal_estimate() const;
};

/// Pass is granted iff grade4p strictly exceeds one half.
Verdict vote(double grade4p);

/// Majority vote over `reps` resampled fits for one rescuable case.
/// Throws std::invalid_argument for cases that are not valid candidates and
/// InsufficientCohort when the cohort cannot support the engine.
RescueDecision predict_case(const RescuableCase &rescue_case, const Cohort &cohort, Engine engine, std::size_t reps,
                            std::uint64_t seed, const EngineParams &params = {});

/// Scans for valid rescuable cases and decides each within its own
/// (year, region) cohort. Per-case failures become Undecidable entries.
std::vector<RescueDecision> rescue_all(std::span<const StudentRecord> records, int target_index, Engine engine,
                                       std::size_t reps, std::uint64_t seed, const EngineParams &params = {});

/// Cohort used for a case: same year and region (and gender if requested).
Cohort cohort_for_case(std::span<const StudentRecord> records, const RescuableCase &rescue_case,
                       const EngineParams &params);

} // namespace catchup

#endif
