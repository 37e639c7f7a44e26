#include "catchup/records.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace catchup {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

long long parse_field(std::string_view field, std::size_t line_no, const char *column)
{
    field = trim(field);
    long long value = 0;
    const auto *end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc() || ptr != end)
        throw DataError("line " + std::to_string(line_no) + ": column " + column + " is not an integer: '"
                        + std::string(field) + "'");
    return value;
}

constexpr std::array<const char *, 8> column_names{"case_id", "year", "gender", "region", "g1", "g2", "g3", "g4"};

} // namespace

std::vector<StudentRecord> read_records(std::istream &in)
{
    std::vector<StudentRecord> out;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty())
            continue;
        if (!header_seen) {
            header_seen = true;
            // Header is required; a first line of digits means it was left out.
            if (!body.empty() && (std::isdigit(static_cast<unsigned char>(body.front())) || body.front() == '-'))
                throw DataError("line " + std::to_string(line_no) + ": missing header line '" + record_header + "'");
            continue;
        }
        std::array<long long, 8> fields{};
        std::size_t n = 0;
        std::size_t start = 0;
        while (true) {
            const auto comma = body.find(',', start);
            const auto piece = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
            if (n >= fields.size())
                throw DataError("line " + std::to_string(line_no) + ": expected 8 columns, got more");
            fields[n] = parse_field(piece, line_no, column_names[n]);
            ++n;
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        if (n != fields.size())
            throw DataError("line " + std::to_string(line_no) + ": expected 8 columns, got " + std::to_string(n));
        try {
            out.push_back(make_record(fields[0], static_cast<int>(fields[1]), static_cast<int>(fields[2]),
                                      static_cast<int>(fields[3]),
                                      {static_cast<int>(std::clamp(fields[4], -1LL, 99LL)),
                                       static_cast<int>(std::clamp(fields[5], -1LL, 99LL)),
                                       static_cast<int>(std::clamp(fields[6], -1LL, 99LL)),
                                       static_cast<int>(std::clamp(fields[7], -1LL, 99LL))}));
        } catch (const DataError &e) {
            throw DataError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (out.back().case_id <= 0)
            throw DataError("line " + std::to_string(line_no) + ": case_id must be positive");
    }
    return out;
}

std::vector<StudentRecord> load_records(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open record file " + path.string());
    return read_records(in);
}

void write_records(std::ostream &out, std::span<const StudentRecord> records)
{
    out << record_header << '\n';
    for (const auto &r : records) {
        out << r.case_id << ',' << r.year << ',' << static_cast<int>(r.gender) << ',' << r.region;
        for (Grade g : r.grades)
            out << ',' << g.value();
        out << '\n';
    }
}

void save_records(const std::filesystem::path &path, std::span<const StudentRecord> records)
{
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write record file " + path.string());
    write_records(out, records);
}

bool CohortFilter::matches(const StudentRecord &r) const
{
    if (year && r.year != *year)
        return false;
    if (region && r.region != *region)
        return false;
    if (gender && static_cast<int>(r.gender) != *gender)
        return false;
    return !complete_only || r.complete();
}

Cohort::Cohort(std::vector<StudentRecord> records, CohortFilter filter, int target_index)
    : records_(std::move(records)), filter_(filter), target_index_(target_index)
{
    check_target_index(target_index);
}

Sample to_sample(const StudentRecord &r, int target_index)
{
    if (!r.complete())
        throw std::invalid_argument("record " + std::to_string(r.case_id) + " has missing grades");
    const auto pos = predictor_positions(target_index);
    Sample s;
    for (std::size_t j = 0; j < pos.size(); ++j)
        s.features[j] = r.grade(pos[j]).value();
    s.target = r.grade(target_index).value();
    return s;
}

std::vector<Sample> Cohort::complete_view() const
{
    std::vector<Sample> out;
    out.reserve(records_.size());
    for (const auto &r : records_)
        if (r.complete())
            out.push_back(to_sample(r, target_index_));
    return out;
}

Cohort build_cohort(std::span<const StudentRecord> records, const CohortFilter &filter, int target_index)
{
    check_target_index(target_index);
    if (filter.region && (*filter.region < 1 || *filter.region > 6))
        throw std::invalid_argument("region filter must be in 1..6");
    if (filter.gender && *filter.gender != 1 && *filter.gender != 2)
        throw std::invalid_argument("gender filter must be 1 or 2");
    std::vector<StudentRecord> selected;
    std::copy_if(records.begin(), records.end(), std::back_inserter(selected),
                 [&](const StudentRecord &r) { return filter.matches(r); });
    return Cohort(std::move(selected), filter, target_index);
}

std::vector<RescuableCase> scan_rescuable(std::span<const StudentRecord> records, int target_index)
{
    const auto pos = predictor_positions(target_index);
    std::vector<RescuableCase> out;
    for (const auto &r : records) {
        if (r.missing_count() != 1 || r.grade(target_index).observed())
            continue;
        RescuableCase c;
        c.case_id = r.case_id;
        c.year = r.year;
        c.region = r.region;
        c.gender = r.gender;
        c.missing_index = target_index;
        c.valid = true;
        for (std::size_t j = 0; j < pos.size(); ++j) {
            c.observed[j] = r.grade(pos[j]).value();
            c.valid = c.valid && c.observed[j] < fail_grade;
        }
        out.push_back(c);
    }
    return out;
}

} // namespace catchup
