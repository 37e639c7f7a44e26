#include "catchup/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace catchup {

double distance(DistanceKind kind, const Triple &p, const Triple &c)
{
    double d = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const double diff = p[j] - c[j];
        if (kind == DistanceKind::Euclid2)
            d += diff * diff;
        else
            d = std::max(d, std::abs(diff));
    }
    return d;
}

double lower_partial_mean(std::span<const double> values, std::size_t size)
{
    if (size < 1 || size > values.size())
        throw std::invalid_argument("lower_partial_mean: size out of range");
    double sum = 0.0;
    for (std::size_t i = 0; i < size; ++i)
        sum += values[i];
    return sum / static_cast<double>(size);
}

double upper_partial_mean(std::span<const double> values, std::size_t subsize, std::size_t totsize)
{
    if (subsize < 1 || subsize > totsize || totsize > values.size())
        throw std::invalid_argument("upper_partial_mean: sizes out of range");
    double sum = 0.0;
    for (std::size_t r = 0; r < subsize; ++r)
        sum += values[totsize - 1 - r];
    return sum / static_cast<double>(subsize);
}

std::string to_string(ClassMode mode)
{
    switch (mode) {
    case ClassMode::Similar: return "similar";
    case ClassMode::Completed: return "completed";
    case ClassMode::EpsilonBall: return "ball";
    }
    return "?";
}

NeighborClass build_class(const Triple &query, std::span<const Sample> train, const HybridConfig &config)
{
    if (train.empty())
        throw DataError("neighbor class needs a non-empty training set");

    NeighborClass out;
    out.k = config.k;

    if (config.mode == NeighborMode::EpsilonBall) {
        if (!(config.epsilon >= 0.0))
            throw std::invalid_argument("epsilon must be non-negative");
        out.mode = ClassMode::EpsilonBall;
        out.epsilon = config.epsilon;
        for (std::size_t i = 0; i < train.size(); ++i) {
            const double d = distance(config.distance, query, train[i].features);
            out.k_sim += d == 0.0 ? 1 : 0;
            if (d <= config.epsilon)
                out.members.push_back(i);
        }
        return out;
    }

    if (config.k < 1)
        throw std::invalid_argument("neighbor count k must be at least 1");

    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
        const double d = distance(config.distance, query, train[i].features);
        out.k_sim += d == 0.0 ? 1 : 0;
        ranked.emplace_back(d, i);
    }

    if (out.k_sim > config.k) {
        out.mode = ClassMode::Similar;
        out.members.reserve(out.k_sim);
        for (const auto &[d, i] : ranked)
            if (d == 0.0)
                out.members.push_back(i);
        return out;
    }

    out.mode = ClassMode::Completed;
    const auto take = std::min(config.k, ranked.size());
    // (distance, index) pairs are unique, so this equals a stable sort by distance.
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take), ranked.end());
    out.members.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
        out.members.push_back(ranked[i].second);
    return out;
}

HybridEstimate estimate(NeighborClass neighbors, std::span<const Sample> train)
{
    if (neighbors.members.empty())
        throw DataError("no neighbors");
    std::array<std::size_t, fail_grade + 1> freq{};
    double sum = 0.0;
    for (auto i : neighbors.members) {
        const int t = train[i].target;
        if (t < 1 || t > fail_grade)
            throw std::invalid_argument("training target outside 1..9");
        sum += t;
        ++freq[static_cast<std::size_t>(t)];
    }
    HybridEstimate est;
    est.mean_grade = sum / static_cast<double>(neighbors.members.size());
    std::size_t best = 0;
    for (int g = 1; g <= fail_grade; ++g) {
        if (freq[static_cast<std::size_t>(g)] >= best && freq[static_cast<std::size_t>(g)] > 0) {
            best = freq[static_cast<std::size_t>(g)];
            est.modal_grade = g;
        }
    }
    est.neighbors = std::move(neighbors);
    return est;
}

PassFail decide(const HybridEstimate &est, DecisionRule rule)
{
    const double value = rule == DecisionRule::Average ? est.mean_grade : static_cast<double>(est.modal_grade);
    return is_passing(value) ? PassFail::Pass : PassFail::Fail;
}

DecisionRule recommended_rule(ClassMode mode)
{
    return mode == ClassMode::Similar ? DecisionRule::MostFrequent : DecisionRule::Average;
}

Triple encode(const Triple &features, FeatureEncoding encoding)
{
    if (encoding == FeatureEncoding::Raw)
        return features;
    Triple out{};
    for (std::size_t j = 0; j < features.size(); ++j)
        out[j] = static_cast<int>(band_of(Grade(features[j])));
    return out;
}

std::vector<Sample> encode(std::span<const Sample> samples, FeatureEncoding encoding)
{
    std::vector<Sample> out(samples.begin(), samples.end());
    if (encoding == FeatureEncoding::Raw)
        return out;
    for (auto &s : out)
        s.features = encode(s.features, encoding);
    return out;
}

} // namespace catchup
