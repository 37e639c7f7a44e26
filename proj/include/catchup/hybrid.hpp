#ifndef CATCHUP_HYBRID_HPP
#define CATCHUP_HYBRID_HPP

#include "catchup/grade.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace catchup {

using Triple = std::array<int, 3>;

enum class DistanceKind {
    Euclid2,   // sum of squared differences, no square root
    Chebyshev, // max absolute difference
};

double distance(DistanceKind kind, const Triple &p, const Triple &c);

/// Mean of the first `size` values.
double lower_partial_mean(std::span<const double> values, std::size_t size);

/// Mean of the last `subsize` values among the first `totsize`.
double upper_partial_mean(std::span<const double> values, std::size_t subsize, std::size_t totsize);

enum class ClassMode {
    Similar,     // more than K exact matches: all of them
    Completed,   // exact matches topped up with nearest others to K members
    EpsilonBall, // everything within epsilon
};

std::string to_string(ClassMode mode);

enum class NeighborMode { Hybrid, EpsilonBall };

enum class FeatureEncoding {
    Raw,
    Bands, // each predictor replaced by its band number (1 credit, 2 pass, 3 fail)
};

inline constexpr std::size_t default_neighbor_count = 100;

struct HybridConfig
{
    std::size_t k = default_neighbor_count;
    NeighborMode mode = NeighborMode::Hybrid;
    double epsilon = 0.0;
    DistanceKind distance = DistanceKind::Euclid2;
    FeatureEncoding encoding = FeatureEncoding::Raw;
};

struct NeighborClass
{
    ClassMode mode = ClassMode::Completed;
    std::vector<std::size_t> members; // indices into the training set
    std::size_t k_sim = 0;            // training rows at distance zero
    std::size_t k = 0;
    std::optional<double> epsilon;
};

/// Similar iff k_sim > k. Completed keeps zero-distance rows first, then
/// ascending distance, ties by training index, truncated to min(k, n).
NeighborClass build_class(const Triple &query, std::span<const Sample> train, const HybridConfig &config);

struct HybridEstimate
{
    double mean_grade = 0.0;
    int modal_grade = 0; // most frequent target; ties go to the larger grade
    NeighborClass neighbors;
};

/// Throws DataError("no neighbors") on an empty class.
HybridEstimate estimate(NeighborClass neighbors, std::span<const Sample> train);

enum class DecisionRule { Average, MostFrequent };

enum class PassFail { Pass, Fail };

PassFail decide(const HybridEstimate &est, DecisionRule rule);

/// Rule recommended per class mode: most frequent for Similar, average otherwise.
DecisionRule recommended_rule(ClassMode mode);

Triple encode(const Triple &features, FeatureEncoding encoding);
std::vector<Sample> encode(std::span<const Sample> samples, FeatureEncoding encoding);

} // namespace catchup

#endif
