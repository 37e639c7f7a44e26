#ifndef CATCHUP_RECORDS_HPP
#define CATCHUP_RECORDS_HPP

#include "catchup/grade.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace catchup {

// Record files are comma separated with one header line:
//   case_id,year,gender,region,g1,g2,g3,g4
// Any grade outside 1..9 is read as missing and written back as -1.

inline constexpr const char *record_header = "case_id,year,gender,region,g1,g2,g3,g4";

std::vector<StudentRecord> read_records(std::istream &in);
std::vector<StudentRecord> load_records(const std::filesystem::path &path);

void write_records(std::ostream &out, std::span<const StudentRecord> records);
void save_records(const std::filesystem::path &path, std::span<const StudentRecord> records);

/// Unset fields select everything.
struct CohortFilter
{
    std::optional<int> year;
    std::optional<int> region;
    std::optional<int> gender;
    bool complete_only = false;

    bool matches(const StudentRecord &r) const;
};

class Cohort
{
public:
    Cohort(std::vector<StudentRecord> records, CohortFilter filter, int target_index);

    const std::vector<StudentRecord> &records() const { return records_; }
    const CohortFilter &filter() const { return filter_; }
    int target_index() const { return target_index_; }

    /// Records with all four grades observed, permuted so the target is last.
    std::vector<Sample> complete_view() const;

private:
    std::vector<StudentRecord> records_;
    CohortFilter filter_;
    int target_index_;
};

Cohort build_cohort(std::span<const StudentRecord> records, const CohortFilter &filter, int target_index);

/// Sample view of a complete record; throws if any grade is missing.
Sample to_sample(const StudentRecord &r, int target_index);

struct RescuableCase
{
    std::int64_t case_id = 0;
    int year = 0;
    int region = 0;
    Gender gender = Gender::Female;
    std::array<int, 3> observed{};
    int missing_index = 4;
    /// All three observed grades are passing (< 9).
    bool valid = false;
};

/// Records missing exactly the grade at target_index, in input order.
std::vector<RescuableCase> scan_rescuable(std::span<const StudentRecord> records, int target_index);

} // namespace catchup

#endif
