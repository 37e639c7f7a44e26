#ifndef CATCHUP_TESTS_ORACLES_HPP
#define CATCHUP_TESTS_ORACLES_HPP

// Reference implementations used only by tests. They deliberately take the
// slow, obvious route so they stay independent of the library code paths.

#include "catchup/grade.hpp"
#include "catchup/records.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

namespace oracle {

using catchup::Sample;

using Mat4 = std::array<std::array<long double, 4>, 4>;

inline long double det3(const std::array<std::array<long double, 3>, 3> &m)
{
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
           + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Laplace expansion along the first row.
inline long double det4(const Mat4 &m)
{
    long double d = 0;
    for (int c = 0; c < 4; ++c) {
        std::array<std::array<long double, 3>, 3> minor{};
        for (int r = 1; r < 4; ++r) {
            int cc = 0;
            for (int k = 0; k < 4; ++k)
                if (k != c)
                    minor[r - 1][cc++] = m[r][k];
        }
        d += ((c % 2) ? -1 : 1) * m[0][c] * det3(minor);
    }
    return d;
}

/// OLS coefficients (intercept, a1, a2, a3) by Cramer's rule on X'X b = X'y.
inline std::optional<std::array<double, 4>> ols(std::span<const Sample> rows)
{
    Mat4 xtx{};
    std::array<long double, 4> xty{};
    for (const auto &s : rows) {
        const std::array<long double, 4> x{1, (long double)s.features[0], (long double)s.features[1],
                                           (long double)s.features[2]};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j)
                xtx[i][j] += x[i] * x[j];
            xty[i] += x[i] * s.target;
        }
    }
    const long double d = det4(xtx);
    if (std::fabs(d) < 1e-6L)
        return std::nullopt;
    std::array<double, 4> beta{};
    for (int c = 0; c < 4; ++c) {
        Mat4 m = xtx;
        for (int r = 0; r < 4; ++r)
            m[r][c] = xty[r];
        beta[c] = static_cast<double>(det4(m) / d);
    }
    return beta;
}

inline double ols_predict(const std::array<double, 4> &b, const std::array<int, 3> &f)
{
    return b[0] + b[1] * f[0] + b[2] * f[1] + b[3] * f[2];
}

/// Hybrid neighbor class by a full stable sort of squared Euclidean distances.
struct ClassResult
{
    bool similar = false;
    std::size_t k_sim = 0;
    std::vector<std::size_t> members;
};

inline ClassResult hybrid_class(const std::array<int, 3> &q, std::span<const Sample> train, std::size_t k)
{
    std::vector<int> dist(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
        int d = 0;
        for (int j = 0; j < 3; ++j)
            d += (q[j] - train[i].features[j]) * (q[j] - train[i].features[j]);
        dist[i] = d;
    }
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return dist[a] < dist[b]; });
    ClassResult r;
    r.k_sim = static_cast<std::size_t>(std::count(dist.begin(), dist.end(), 0));
    if (r.k_sim > k) {
        r.similar = true;
        for (std::size_t i = 0; i < train.size(); ++i)
            if (dist[i] == 0)
                r.members.push_back(i);
    } else {
        r.members.assign(order.begin(), order.begin() + std::min(k, order.size()));
    }
    return r;
}

/// Mean and larger-grade-on-tie mode of the members' targets.
inline std::pair<double, int> class_stats(const std::vector<std::size_t> &members, std::span<const Sample> train)
{
    double sum = 0;
    int counts[10] = {};
    for (auto i : members) {
        sum += train[i].target;
        counts[train[i].target]++;
    }
    int mode = 9;
    for (int g = 9; g >= 1; --g)
        if (counts[g] > counts[mode])
            mode = g;
    return {sum / members.size(), mode};
}

/// Pass/fail misclassification counts by direct enumeration.
struct Counts
{
    int pass = 0, fail = 0, pf = 0, fp = 0;
};

inline Counts count(const std::vector<int> &actual, const std::vector<double> &pred)
{
    Counts c;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] <= 8) {
            c.pass++;
            if (pred[i] > 8)
                c.pf++;
        } else {
            c.fail++;
            if (!(pred[i] > 8))
                c.fp++;
        }
    }
    return c;
}

} // namespace oracle

#endif
