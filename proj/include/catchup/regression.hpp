#ifndef CATCHUP_REGRESSION_HPP
#define CATCHUP_REGRESSION_HPP

#include "catchup/grade.hpp"

#include <array>
#include <cstddef>
#include <span>

namespace catchup {

/// target ~ intercept + slopes . features, fitted by ordinary least squares.
struct RegressionModel
{
    double intercept = 0.0;
    std::array<double, 3> slopes{};
    double r_squared = 0.0;
    double adjusted_r_squared = 0.0;
    std::size_t n_train = 0;
    /// Design matrix was rank deficient; coefficients are the minimum-norm solution.
    bool degenerate = false;
};

inline constexpr std::size_t min_regression_rows = 5;
inline constexpr double default_gate_threshold = 0.70;

/// Solves the normal equations with partial pivoting. Needs >= 5 rows.
RegressionModel fit(std::span<const Sample> train);

double predict(const RegressionModel &model, const std::array<int, 3> &features);

/// Acceptance gate on adjusted R^2.
bool gate(const RegressionModel &model, double threshold = default_gate_threshold);

} // namespace catchup

#endif
