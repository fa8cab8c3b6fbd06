#include "holderem/multigrid.hpp"

#include <cmath>
#include <string>

#include "holderem/errors.hpp"

namespace holderem {

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw InvalidArgument("grid function needs at least one cell");
    for (double v : values_) {
        if (!std::isfinite(v)) throw InvalidArgument("grid function values must be finite");
    }
}

GridFunction GridFunction::sample(const std::function<double(double)>& g, std::size_t cells) {
    if (cells == 0) throw InvalidArgument("grid function needs at least one cell");
    std::vector<double> v(cells + 1);
    for (std::size_t k = 0; k <= cells; ++k) v[k] = g(static_cast<double>(k) / static_cast<double>(cells));
    return GridFunction(std::move(v));
}

double interpolate(const GridFunction& a, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("interpolation point must lie in [0, 1]");
    const std::size_t n = a.cells();
    const double nt = static_cast<double>(n) * t;
    const std::size_t k = std::min(static_cast<std::size_t>(std::floor(nt)), n - 1);
    const double dk = static_cast<double>(k);
    return a[k] * (dk + 1.0 - nt) + a[k + 1] * (nt - dk);
}

double multigrid_sum(std::span<const MultigridLevel> levels, double t) {
    if (levels.empty()) throw InvalidArgument("multigrid sum needs at least one level");
    double sum = 0.0;
    double comp = 0.0;
    auto add = [&](double v) {
        const double next = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - next) + v;
        } else {
            comp += (v - next) + sum;
        }
        sum = next;
    };
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const auto& level = levels[l];
        const std::size_t want = std::size_t{1} << (l + 1);
        if (level.fine.cells() != want) {
            throw InvalidArgument("level " + std::to_string(l) + " fine function needs " + std::to_string(want) +
                                  " cells, has " + std::to_string(level.fine.cells()));
        }
        add(interpolate(level.fine, t));
        if (l == 0) {
            if (level.coarse) throw InvalidArgument("level 0 has no coarse term");
            continue;
        }
        if (!level.coarse || level.coarse->cells() != want / 2) {
            throw InvalidArgument("level " + std::to_string(l) + " coarse function needs " + std::to_string(want / 2) +
                                  " cells");
        }
        add(-interpolate(*level.coarse, t));
    }
    return sum + comp;
}

std::vector<MultigridLevel> level_independent_levels(const std::function<double(double)>& g, std::size_t n) {
    if (n == 0) throw InvalidArgument("multigrid needs n >= 1");
    std::vector<MultigridLevel> levels;
    for (std::size_t l = 0; l < n; ++l) {
        MultigridLevel level{GridFunction::sample(g, std::size_t{1} << (l + 1)), std::nullopt};
        if (l >= 1) level.coarse = GridFunction::sample(g, std::size_t{1} << l);
        levels.push_back(std::move(level));
    }
    return levels;
}

CostComparison cost(std::size_t n, const std::function<double(std::size_t)>& per_sample_cost) {
    if (n == 0) throw InvalidArgument("cost model needs n >= 1");
    CostComparison out;
    out.single_grid = (std::ldexp(1.0, static_cast<int>(n)) + 1.0) * per_sample_cost(n);
    for (std::size_t l = 0; l < n; ++l) {
        double points = std::ldexp(1.0, static_cast<int>(l + 1)) + 1.0;
        if (l >= 1) points += std::ldexp(1.0, static_cast<int>(l)) + 1.0;
        out.multigrid += points * per_sample_cost(n - l);
    }
    return out;
}

} // namespace holderem
