#include "catchup/grade.hpp"

#include <cmath>

namespace catchup {

Grade::Grade(int value) : value_(value)
{
    if (value != missing_code && (value < 1 || value > fail_grade))
        throw std::invalid_argument("invalid grade value " + std::to_string(value));
}

Grade Grade::from_raw(long long raw)
{
    if (raw < 1 || raw > fail_grade)
        return missing();
    return Grade(static_cast<int>(raw));
}

GradeBand band_of(Grade g)
{
    if (g.is_missing())
        throw std::invalid_argument("cannot band a missing grade");
    if (g.value() <= 6)
        return GradeBand::Credit;
    if (g.value() <= pass_ceiling)
        return GradeBand::Pass;
    return GradeBand::Fail;
}

std::string to_string(GradeBand band)
{
    switch (band) {
    case GradeBand::Credit: return "credit";
    case GradeBand::Pass: return "pass";
    case GradeBand::Fail: return "fail";
    }
    return "?";
}

bool is_passing(double estimate)
{
    if (!std::isfinite(estimate))
        throw std::invalid_argument("grade estimate is not finite");
    return estimate <= pass_ceiling;
}

int StudentRecord::missing_count() const
{
    int n = 0;
    for (Grade g : grades)
        n += g.is_missing() ? 1 : 0;
    return n;
}

StudentRecord make_record(std::int64_t case_id, int year, int gender, int region, std::array<int, subject_count> raw_grades)
{
    if (gender != 1 && gender != 2)
        throw DataError("invalid gender code " + std::to_string(gender) + " for case " + std::to_string(case_id));
    if (region < 1 || region > 6)
        throw DataError("invalid region code " + std::to_string(region) + " for case " + std::to_string(case_id));
    StudentRecord r;
    r.case_id = case_id;
    r.year = year;
    r.gender = static_cast<Gender>(gender);
    r.region = region;
    for (std::size_t i = 0; i < raw_grades.size(); ++i)
        r.grades[i] = Grade::from_raw(raw_grades[i]);
    return r;
}

void check_target_index(int target_index)
{
    if (target_index < 1 || target_index > subject_count)
        throw std::invalid_argument("target index must be in 1..4, got " + std::to_string(target_index));
}

std::array<int, 3> predictor_positions(int target_index)
{
    check_target_index(target_index);
    std::array<int, 3> out{};
    std::size_t j = 0;
    for (int p = 1; p <= subject_count; ++p)
        if (p != target_index)
            out[j++] = p;
    return out;
}

} // namespace catchup
