#ifndef CATCHUP_GRADE_HPP
#define CATCHUP_GRADE_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace catchup {

/// Thrown for malformed input data (bad rows, bad codes, too-small cohorts).
class DataError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// One core-exam grade: 1 (best) .. 9 (fail), or the missing sentinel -1.
class Grade
{
public:
    static constexpr int missing_code = -1;

    constexpr Grade() = default;

    /// Throws std::invalid_argument for anything outside {1..9, -1}.
    explicit Grade(int value);

    static constexpr Grade missing() { return Grade{}; }

    /// Maps any out-of-range raw code (0, -9, 99, ...) to missing.
    static Grade from_raw(long long raw);

    constexpr bool observed() const { return value_ != missing_code; }
    constexpr bool is_missing() const { return value_ == missing_code; }
    constexpr int value() const { return value_; }

    friend constexpr bool operator==(Grade, Grade) = default;

private:
    int value_ = missing_code;
};

enum class GradeBand { Credit = 1, Pass = 2, Fail = 3 };

GradeBand band_of(Grade g);
std::string to_string(GradeBand band);

/// Pass iff estimate <= 8. Estimates are compared unrounded.
bool is_passing(double estimate);

inline constexpr int pass_ceiling = 8;
inline constexpr int fail_grade = 9;
inline constexpr int subject_count = 4;

enum class Gender { Female = 1, Male = 2 };

struct StudentRecord
{
    std::int64_t case_id = 0;
    int year = 0;
    Gender gender = Gender::Female;
    int region = 1;
    std::array<Grade, subject_count> grades{};

    Grade grade(int position) const { return grades.at(static_cast<std::size_t>(position - 1)); }
    int missing_count() const;
    bool complete() const { return missing_count() == 0; }

    friend bool operator==(const StudentRecord &, const StudentRecord &) = default;
};

/// Validates gender/region codes; throws DataError.
StudentRecord make_record(std::int64_t case_id, int year, int gender, int region, std::array<int, subject_count> raw_grades);

/// The three observed grades used as predictors plus the grade being imputed.
/// Predictors keep ascending subject order with the target position removed.
struct Sample
{
    std::array<int, 3> features{};
    int target = 0;

    friend bool operator==(const Sample &, const Sample &) = default;
};

/// Positions (1-based) of the three predictor subjects for a target position.
std::array<int, 3> predictor_positions(int target_index);

void check_target_index(int target_index);

} // namespace catchup

#endif
