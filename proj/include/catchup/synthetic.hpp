#ifndef CATCHUP_SYNTHETIC_HPP
#define CATCHUP_SYNTHETIC_HPP

#include "catchup/grade.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace catchup {

// Latent-ability population: each record draws an ability a ~ N(mean, spread)
// and every grade is clamp(round(a + N(0, noise)), 1, 9), rounding half away
// from zero. Lower grades are better, so a mean near 8.5 yields a population
// where roughly half of each subject's grades are fails.
struct GenConfig
{
    std::size_t n_records = 1000;
    std::vector<int> years{2012, 2013, 2014, 2015, 2016, 2017};
    std::vector<int> regions{1, 2, 3, 4, 5, 6};
    double gender_split = 0.5; // fraction female
    double ability_mean = 8.5;
    double ability_spread = 2.0;
    double noise_spread = 1.0;
    double missing_rate = 0.0;
    int target_index = 4; // grade blanked with probability missing_rate
    std::uint64_t seed = 0;
    std::int64_t first_case_id = 1;
};

/// Throws std::invalid_argument describing the first bad field.
void validate(const GenConfig &config);

/// Record i depends only on (seed, i), so generation can be sharded freely.
std::vector<StudentRecord> generate(const GenConfig &config);

/// Appends `cases` verbatim; throws DataError on a case_id collision.
std::vector<StudentRecord> embed_cases(std::vector<StudentRecord> records, std::span<const StudentRecord> cases);

} // namespace catchup

#endif
