#include "catchup/synthetic.hpp"

#include "catchup/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace catchup {

void validate(const GenConfig &c)
{
    if (c.n_records < 1)
        throw std::invalid_argument("n_records must be at least 1");
    if (c.years.empty())
        throw std::invalid_argument("years must not be empty");
    if (c.regions.empty())
        throw std::invalid_argument("regions must not be empty");
    for (int r : c.regions)
        if (r < 1 || r > 6)
            throw std::invalid_argument("region codes must be in 1..6");
    if (!(c.gender_split >= 0.0 && c.gender_split <= 1.0))
        throw std::invalid_argument("gender_split must be in [0,1]");
    if (!(c.ability_spread >= 0.0) || !std::isfinite(c.ability_spread))
        throw std::invalid_argument("ability_spread must be >= 0");
    if (!(c.noise_spread >= 0.0) || !std::isfinite(c.noise_spread))
        throw std::invalid_argument("noise_spread must be >= 0");
    if (!std::isfinite(c.ability_mean))
        throw std::invalid_argument("ability_mean must be finite");
    if (!(c.missing_rate >= 0.0 && c.missing_rate < 1.0))
        throw std::invalid_argument("missing_rate must be in [0,1)");
    check_target_index(c.target_index);
    if (c.first_case_id < 1)
        throw std::invalid_argument("first_case_id must be positive");
}

std::vector<StudentRecord> generate(const GenConfig &config)
{
    validate(config);
    std::vector<StudentRecord> out;
    out.reserve(config.n_records);
    for (std::size_t i = 0; i < config.n_records; ++i) {
        SplitMix64 rng(derive_seed(config.seed, i));
        std::uniform_int_distribution<std::size_t> pick_year(0, config.years.size() - 1);
        std::uniform_int_distribution<std::size_t> pick_region(0, config.regions.size() - 1);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::normal_distribution<double> z(0.0, 1.0);

        StudentRecord r;
        r.case_id = config.first_case_id + static_cast<std::int64_t>(i);
        r.year = config.years[pick_year(rng)];
        r.region = config.regions[pick_region(rng)];
        r.gender = unit(rng) < config.gender_split ? Gender::Female : Gender::Male;
        const double ability = config.ability_mean + config.ability_spread * z(rng);
        for (auto &g : r.grades) {
            const double raw = ability + config.noise_spread * z(rng);
            g = Grade(static_cast<int>(std::clamp<long>(std::lround(raw), 1, fail_grade)));
        }
        if (unit(rng) < config.missing_rate)
            r.grades[static_cast<std::size_t>(config.target_index - 1)] = Grade::missing();
        out.push_back(r);
    }
    return out;
}

std::vector<StudentRecord> embed_cases(std::vector<StudentRecord> records, std::span<const StudentRecord> cases)
{
    std::unordered_set<std::int64_t> ids;
    for (const auto &r : records)
        ids.insert(r.case_id);
    for (const auto &c : cases) {
        if (!ids.insert(c.case_id).second)
            throw DataError("case_id " + std::to_string(c.case_id) + " already present");
        records.push_back(c);
    }
    return records;
}

} // namespace catchup
