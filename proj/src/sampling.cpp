#include "catchup/sampling.hpp"

#include "catchup/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace catchup {

int presence_test(std::size_t x, std::span<const std::size_t> seen, std::size_t k)
{
    if (k > seen.size())
        throw std::invalid_argument("presence_test: k exceeds the number of seen entries");
    for (std::size_t i = 0; i < k; ++i)
        if (seen[i] == x)
            return 1;
    return 0;
}

std::vector<std::size_t> dedup_first_occurrence(std::span<const std::size_t> draws)
{
    std::vector<std::size_t> out;
    for (auto d : draws)
        if (presence_test(d, out, out.size()) == 0)
            out.push_back(d);
    return out;
}

std::size_t paper_draw_count(std::size_t n_total)
{
    const double two_thirds = std::round(2.0 * static_cast<double>(n_total) / 3.0);
    return static_cast<std::size_t>(std::round(1.5 * two_thirds)) + 2000;
}

SplitIndices split(std::size_t n_total, const SplitConfig &config, std::uint64_t seed)
{
    if (n_total < 2)
        throw std::invalid_argument("split needs at least 2 records, got " + std::to_string(n_total));
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0))
        throw std::invalid_argument("train fraction must lie in (0,1)");

    // The test side is never left empty.
    std::size_t target = n_total - 1;
    std::size_t max_draws = 0;
    if (config.mode == SplitMode::Parametric) {
        const auto want = static_cast<std::size_t>(std::ceil(config.train_fraction * static_cast<double>(n_total)));
        target = std::clamp<std::size_t>(want, 1, n_total - 1);
    } else {
        max_draws = paper_draw_count(n_total);
    }

    SplitMix64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n_total - 1);
    std::vector<char> seen(n_total, 0);

    SplitIndices out;
    out.seed = seed;
    out.train.reserve(target);
    while (out.train.size() < target && (max_draws == 0 || out.draws < max_draws)) {
        const auto idx = pick(rng);
        ++out.draws;
        if (!seen[idx]) {
            seen[idx] = 1;
            out.train.push_back(idx);
        }
    }
    out.test.reserve(n_total - out.train.size());
    for (std::size_t i = 0; i < n_total; ++i)
        if (!seen[i])
            out.test.push_back(i);
    return out;
}

} // namespace catchup
