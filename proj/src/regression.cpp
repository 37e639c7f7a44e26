#include "catchup/regression.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace catchup {

namespace {

using Mat4 = std::array<std::array<double, 4>, 4>;
using Vec4 = std::array<double, 4>;

// Gaussian elimination with partial pivoting. Returns nullopt when a pivot
// falls below tol (rank deficient design).
std::optional<Vec4> solve_pivoted(Mat4 a, Vec4 b, double tol)
{
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col]))
                piv = r;
        if (std::abs(a[piv][col]) <= tol)
            return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < 4; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < 4; ++c)
                a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    Vec4 x{};
    for (std::size_t i = 4; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < 4; ++c)
            s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

Vec4 solve_min_norm(std::span<const Sample> train)
{
    Eigen::MatrixXd x(static_cast<Eigen::Index>(train.size()), 4);
    Eigen::VectorXd y(static_cast<Eigen::Index>(train.size()));
    for (std::size_t i = 0; i < train.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        x(r, 0) = 1.0;
        for (std::size_t j = 0; j < 3; ++j)
            x(r, static_cast<Eigen::Index>(j + 1)) = train[i].features[j];
        y(r) = train[i].target;
    }
    const Eigen::VectorXd beta = x.completeOrthogonalDecomposition().solve(y);
    return {beta(0), beta(1), beta(2), beta(3)};
}

} // namespace

RegressionModel fit(std::span<const Sample> train)
{
    if (train.size() < min_regression_rows)
        throw DataError("regression fit needs at least " + std::to_string(min_regression_rows) + " training rows, got "
                        + std::to_string(train.size()));

    Mat4 xtx{};
    Vec4 xty{};
    for (const auto &s : train) {
        const Vec4 row{1.0, double(s.features[0]), double(s.features[1]), double(s.features[2])};
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j)
                xtx[i][j] += row[i] * row[j];
            xty[i] += row[i] * s.target;
        }
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        scale = std::max(scale, xtx[i][i]);

    RegressionModel m;
    m.n_train = train.size();
    auto beta = solve_pivoted(xtx, xty, scale * 1e-10);
    if (!beta) {
        m.degenerate = true;
        beta = solve_min_norm(train);
    }
    m.intercept = (*beta)[0];
    m.slopes = {(*beta)[1], (*beta)[2], (*beta)[3]};

    double mean_y = 0.0;
    for (const auto &s : train)
        mean_y += s.target;
    mean_y /= static_cast<double>(train.size());
    double rss = 0.0;
    double tss = 0.0;
    for (const auto &s : train) {
        const double e = s.target - predict(m, s.features);
        rss += e * e;
        tss += (s.target - mean_y) * (s.target - mean_y);
    }
    const double n = static_cast<double>(train.size());
    m.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;
    m.adjusted_r_squared = 1.0 - (1.0 - m.r_squared) * (n - 1.0) / (n - 4.0);
    return m;
}

double predict(const RegressionModel &model, const std::array<int, 3> &features)
{
    return model.intercept + model.slopes[0] * features[0] + model.slopes[1] * features[1]
           + model.slopes[2] * features[2];
}

bool gate(const RegressionModel &model, double threshold)
{
    return model.adjusted_r_squared >= threshold;
}

} // namespace catchup
