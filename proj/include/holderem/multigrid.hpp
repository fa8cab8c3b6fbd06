#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace holderem {

/// Samples a_0..a_N of a function at k/N on [0, 1].
class GridFunction {
public:
    explicit GridFunction(std::vector<double> values);
    /// a_k = g(k / cells).
    static GridFunction sample(const std::function<double(double)>& g, std::size_t cells);

    std::size_t cells() const noexcept { return values_.size() - 1; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }

private:
    std::vector<double> values_;
};

/// Piecewise-linear interpolant: with k = min(floor(N t), N - 1),
/// a_k (k + 1 - N t) + a_{k+1} (N t - k).
double interpolate(const GridFunction& a, double t);

/// Level l of the telescoping combination: fine has 2^{l+1} cells, coarse
/// 2^l cells; level 0 has no coarse term.
struct MultigridLevel {
    GridFunction fine;
    std::optional<GridFunction> coarse;
};

/// sum_l [interpolate(fine_l, t) - [l >= 1] interpolate(coarse_l, t)],
/// accumulated with Neumaier compensation.
double multigrid_sum(std::span<const MultigridLevel> levels, double t);

/// Levels for n with every U^{n-l} the same function g, so the sum
/// telescopes to the 2^n-cell interpolant.
std::vector<MultigridLevel> level_independent_levels(const std::function<double(double)>& g, std::size_t n);

struct CostComparison {
    double single_grid = 0.0;
    double multigrid = 0.0;
};

/// single grid: (2^n + 1) C(n); multigrid: sum_{l<n} [(2^{l+1} + 1) + [l >= 1](2^l + 1)] C(n - l).
CostComparison cost(std::size_t n, const std::function<double(std::size_t)>& per_sample_cost);

} // namespace holderem
