#ifndef CATCHUP_TESTS_FIXTURES_HPP
#define CATCHUP_TESTS_FIXTURES_HPP

#include "catchup/grade.hpp"
#include "catchup/synthetic.hpp"

#include <random>
#include <vector>

namespace fixtures {

using catchup::make_record;
using catchup::StudentRecord;

/// The four rescuable cases absent from the fourth exam. Gender is arbitrary.
inline std::vector<StudentRecord> reference_cases()
{
    return {
        make_record(77594, 2015, 1, 2, {8, 8, 8, -1}),
        make_record(77833, 2015, 1, 3, {8, 8, 8, -1}),
        make_record(80183, 2015, 1, 1, {4, 6, 7, -1}),
        make_record(122915, 2017, 1, 1, {1, 7, 7, -1}),
    };
}

/// Reference cases plus distractors: a failed predictor, two missing grades, a
/// missing non-target grade and complete records.
inline std::vector<StudentRecord> reference_fixture()
{
    auto r = reference_cases();
    r.push_back(make_record(90001, 2015, 1, 1, {9, 8, 8, -1}));
    r.push_back(make_record(90002, 2015, 1, 2, {1, 2, -1, -1}));
    r.push_back(make_record(90003, 2016, 1, 4, {3, -1, 4, 5}));
    r.push_back(make_record(90004, 2016, 1, 5, {3, 4, 4, 5}));
    r.push_back(make_record(90005, 2017, 1, 6, {9, 9, 9, 9}));
    return r;
}

/// Integer-grade training rows with independent uniform predictors.
inline std::vector<catchup::Sample> random_samples(std::mt19937_64 &rng, std::size_t n)
{
    std::uniform_int_distribution<int> g(1, 9);
    std::vector<catchup::Sample> out(n);
    for (auto &s : out)
        s = {{g(rng), g(rng), g(rng)}, g(rng)};
    return out;
}

} // namespace fixtures

#endif
