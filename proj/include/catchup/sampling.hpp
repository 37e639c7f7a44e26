#ifndef CATCHUP_SAMPLING_HPP
#define CATCHUP_SAMPLING_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace catchup {

enum class SplitMode {
    /// Draw until the distinct count reaches ceil(train_fraction * N).
    Parametric,
    /// Fixed draw count round(1.5 * round(2N/3)) + 2000, as in the original R scripts.
    Paper,
};

struct SplitConfig
{
    SplitMode mode = SplitMode::Parametric;
    double train_fraction = 0.75;
};

/// Train/test partition of 0-based indices into a complete view of size N.
struct SplitIndices
{
    std::vector<std::size_t> train; // draw order, duplicate free
    std::vector<std::size_t> test;  // ascending
    std::uint64_t seed = 0;
    std::size_t draws = 0;

    double train_fraction() const
    {
        const auto n = train.size() + test.size();
        return n == 0 ? 0.0 : static_cast<double>(train.size()) / static_cast<double>(n);
    }
};

/// 1 iff x is among the first k entries of seen. Linear scan.
int presence_test(std::size_t x, std::span<const std::size_t> seen, std::size_t k);

/// Keeps the first occurrence of every value, preserving order.
std::vector<std::size_t> dedup_first_occurrence(std::span<const std::size_t> draws);

/// round(1.5 * round(2N/3)) + 2000.
std::size_t paper_draw_count(std::size_t n_total);

SplitIndices split(std::size_t n_total, const SplitConfig &config, std::uint64_t seed);

} // namespace catchup

#endif
