#include "catchup/regression.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace catchup;

namespace {

double rss(std::span<const Sample> rows, double c, const std::array<double, 3> &a)
{
    double s = 0;
    for (const auto &r : rows) {
        const double e = r.target - (c + a[0] * r.features[0] + a[1] * r.features[1] + a[2] * r.features[2]);
        s += e * e;
    }
    return s;
}

} // namespace

TEST_CASE("target equal to first predictor")
{
    std::mt19937_64 rng(1);
    auto rows = fixtures::random_samples(rng, 40);
    for (auto &r : rows)
        r.target = r.features[0];
    const auto m = fit(rows);
    CHECK(std::abs(m.intercept) < 1e-9);
    CHECK(std::abs(m.slopes[0] - 1) < 1e-9);
    CHECK(std::abs(m.slopes[1]) < 1e-9);
    CHECK(std::abs(m.slopes[2]) < 1e-9);
    CHECK(std::abs(m.r_squared - 1) < 1e-9);
    CHECK_FALSE(m.degenerate);
}

TEST_CASE("constant target fits the intercept only")
{
    std::mt19937_64 rng(2);
    auto rows = fixtures::random_samples(rng, 12);
    for (auto &r : rows)
        r.target = 5;
    const auto m = fit(rows);
    for (const auto &r : rows)
        CHECK(std::abs(predict(m, r.features) - 5.0) < 1e-9);
    CHECK(predict(m, {9, 9, 9}) == doctest::Approx(5.0));
}

TEST_CASE("six-row fixture matches the normal-equation oracle")
{
    const std::vector<Sample> rows{{{1, 2, 3}, 2}, {{4, 4, 5}, 5}, {{7, 8, 6}, 8},
                                   {{2, 6, 1}, 3}, {{9, 9, 9}, 9}, {{5, 3, 7}, 6}};
    const auto beta = oracle::ols(rows);
    REQUIRE(beta.has_value());
    const auto m = fit(rows);
    CHECK(std::abs(m.intercept - (*beta)[0]) < 1e-9);
    for (int j = 0; j < 3; ++j)
        CHECK(std::abs(m.slopes[j] - (*beta)[j + 1]) < 1e-9);
    CHECK(m.n_train == 6);
    CHECK(m.adjusted_r_squared <= m.r_squared);
    CHECK(m.r_squared <= 1.0);
}

TEST_CASE("random fixtures match the oracle, residuals are orthogonal")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> size(6, 50);
    for (int trial = 0; trial < 200; ++trial) {
        const auto rows = fixtures::random_samples(rng, size(rng));
        const auto beta = oracle::ols(rows);
        if (!beta)
            continue;
        const auto m = fit(rows);
        CHECK(std::abs(m.intercept - (*beta)[0]) < 1e-9);
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(m.slopes[j] - (*beta)[j + 1]) < 1e-9);

        std::array<double, 4> dot{};
        for (const auto &r : rows) {
            const double e = r.target - predict(m, r.features);
            dot[0] += e;
            for (int j = 0; j < 3; ++j)
                dot[j + 1] += e * r.features[j];
        }
        for (double d : dot)
            CHECK(std::abs(d) < 1e-8 * rows.size());
        CHECK(m.adjusted_r_squared <= m.r_squared + 1e-15);
    }
}

TEST_CASE("least squares beats perturbed coefficients")
{
    std::mt19937_64 rng(4);
    const auto rows = fixtures::random_samples(rng, 30);
    const auto m = fit(rows);
    const double best = rss(rows, m.intercept, m.slopes);
    std::normal_distribution<double> jitter(0.0, 0.1);
    for (int i = 0; i < 1000; ++i) {
        const std::array<double, 3> a{m.slopes[0] + jitter(rng), m.slopes[1] + jitter(rng), m.slopes[2] + jitter(rng)};
        CHECK(best <= rss(rows, m.intercept + jitter(rng), a));
    }
}

TEST_CASE("fit is invariant to row order")
{
    std::mt19937_64 rng(5);
    auto rows = fixtures::random_samples(rng, 40);
    const auto a = fit(rows);
    for (int i = 0; i < 10; ++i) {
        std::shuffle(rows.begin(), rows.end(), rng);
        const auto b = fit(rows);
        CHECK(std::abs(a.intercept - b.intercept) < 1e-12);
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(a.slopes[j] - b.slopes[j]) < 1e-12);
    }
}

TEST_CASE("rank-deficient design falls back to minimum norm")
{
    // Predictors 1 and 2 are identical columns.
    std::mt19937_64 rng(6);
    auto rows = fixtures::random_samples(rng, 20);
    for (auto &r : rows) {
        r.features[1] = r.features[0];
        r.target = r.features[0];
    }
    const auto m = fit(rows);
    CHECK(m.degenerate);
    // Minimum norm splits the shared weight evenly.
    CHECK(std::abs(m.slopes[0] - 0.5) < 1e-8);
    CHECK(std::abs(m.slopes[1] - 0.5) < 1e-8);
    for (const auto &r : rows)
        CHECK(std::abs(predict(m, r.features) - r.target) < 1e-8);
}

TEST_CASE("fit needs five rows")
{
    std::mt19937_64 rng(7);
    const auto rows = fixtures::random_samples(rng, 4);
    CHECK_THROWS_AS(fit(rows), DataError);
}

TEST_CASE("predict evaluates the affine form")
{
    RegressionModel m;
    m.slopes = {1, 0, 0};
    CHECK(predict(m, {3, 9, 9}) == 3.0);
    m.intercept = 1;
    m.slopes = {0.5, 0.25, 0.25};
    CHECK(predict(m, {4, 4, 4}) == 5.0);
    m.degenerate = true;
    CHECK(predict(m, {4, 4, 4}) == 5.0);
}

TEST_CASE("adjusted R^2 gate")
{
    RegressionModel m;
    m.adjusted_r_squared = 0.78;
    CHECK(gate(m));
    m.adjusted_r_squared = 0.69;
    CHECK_FALSE(gate(m));
    m.adjusted_r_squared = 0.6;
    CHECK(gate(m, 0.5));
    m.adjusted_r_squared = 0.70;
    CHECK(gate(m));
}
