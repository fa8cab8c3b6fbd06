#include "holderem/euler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holderem/errors.hpp"

namespace holderem {

namespace {

void check_start(const CoefficientModel& model, std::span<const double> x, const BrownianLattice& lattice) {
    if (x.size() != model.d) {
        throw InvalidArgument("start point has dimension " + std::to_string(x.size()) + ", model expects " +
                              std::to_string(model.d));
    }
    if (lattice.dim() != model.m) {
        throw InvalidArgument("lattice dimension " + std::to_string(lattice.dim()) + " differs from noise dimension " +
                              std::to_string(model.m));
    }
}

} // namespace

DiscretePath::DiscretePath(std::size_t dim, std::size_t start_index, std::size_t finest_n, double horizon,
                           std::vector<double> values)
    : dim_(dim), start_index_(start_index), finest_n_(finest_n), horizon_(horizon), values_(std::move(values)) {
    diverged_ = std::any_of(values_.begin(), values_.end(), [](double v) { return !std::isfinite(v); });
}

std::span<const double> DiscretePath::at_index(std::size_t i) const {
    if (i < start_index_ || i > finest_n_) {
        throw InvalidArgument("path index " + std::to_string(i) + " outside [" + std::to_string(start_index_) + ", " +
                              std::to_string(finest_n_) + "]");
    }
    return std::span<const double>(values_).subspan((i - start_index_) * dim_, dim_);
}

std::vector<double> DiscretePath::at(double t) const {
    const double scaled = t * static_cast<double>(finest_n_) / horizon_;
    const double rounded = std::nearbyint(scaled);
    const double grid_t = horizon_ * rounded / static_cast<double>(finest_n_);
    if (!(t >= 0.0 && t <= horizon_) || std::abs(grid_t - t) > 1e-12 * horizon_) {
        throw AlignmentError("time " + std::to_string(t) + " is not on the finest grid");
    }
    const auto v = at_index(static_cast<std::size_t>(rounded));
    return {v.begin(), v.end()};
}

DiscretePath euler_path(const CoefficientModel& model, const Partition& partition, double s,
                        std::span<const double> x, const BrownianLattice& lattice) {
    if (partition.is_identity()) throw InvalidArgument("euler_path needs a grid partition; use process_path for the identity");
    check_start(model, x, lattice);
    const std::vector<std::size_t> points = lattice.align(partition);
    const std::size_t start = lattice.index_of(s);
    const std::size_t n_fine = lattice.finest_n();
    const std::size_t d = model.d;
    const std::size_t m = model.m;
    const auto inc = lattice.increments();

    std::vector<double> values((n_fine - start + 1) * d);
    std::copy(x.begin(), x.end(), values.begin());

    std::vector<double> drift(d), diffusion(d * m), dw(m, 0.0), anchor_state(x.begin(), x.end());
    model.drift(anchor_state, drift);
    model.diffusion(anchor_state, diffusion);
    std::size_t anchor = start;
    std::size_t cell = 0; // points[cell] = round_down of the current fine time

    for (std::size_t j = start + 1; j <= n_fine; ++j) {
        while (cell + 2 < points.size() && j > points[cell + 1]) ++cell;
        const std::size_t a = std::max(start, points[cell]);
        if (a != anchor) {
            // The anchor only ever moves to the previous fine time.
            anchor = a;
            const double* src = &values[(anchor - start) * d];
            std::copy(src, src + d, anchor_state.begin());
            model.drift(anchor_state, drift);
            model.diffusion(anchor_state, diffusion);
            std::fill(dw.begin(), dw.end(), 0.0);
        }
        for (std::size_t c = 0; c < m; ++c) dw[c] += inc[(j - 1) * m + c];
        const double dt = lattice.time(j) - lattice.time(anchor);
        double* out = &values[(j - start) * d];
        for (std::size_t i = 0; i < d; ++i) {
            double noise = 0.0;
            for (std::size_t c = 0; c < m; ++c) noise += diffusion[i * m + c] * dw[c];
            out[i] = anchor_state[i] + drift[i] * dt + noise;
        }
    }
    return DiscretePath(d, start, n_fine, lattice.horizon(), std::move(values));
}

DiscretePath exact_path(const CoefficientModel& model, double s, std::span<const double> x,
                        const BrownianLattice& lattice) {
    if (!model.has_exact()) throw ExactUnavailable("model '" + model.name + "' has no closed-form solution");
    check_start(model, x, lattice);
    const std::size_t start = lattice.index_of(s);
    const std::size_t n_fine = lattice.finest_n();
    const std::size_t d = model.d;
    const std::size_t m = model.m;
    std::vector<double> values((n_fine - start + 1) * d);
    std::copy(x.begin(), x.end(), values.begin());
    const auto w_s = lattice.value_at_index(start);
    std::vector<double> dw(m);
    for (std::size_t j = start + 1; j <= n_fine; ++j) {
        const auto w_t = lattice.value_at_index(j);
        for (std::size_t c = 0; c < m; ++c) dw[c] = w_t[c] - w_s[c];
        exact_solution(model, x, lattice.time(j) - lattice.time(start), dw,
                       std::span<double>(values).subspan((j - start) * d, d));
    }
    return DiscretePath(d, start, n_fine, lattice.horizon(), std::move(values));
}

DiscretePath process_path(const CoefficientModel& model, const Partition& partition, double s,
                          std::span<const double> x, const BrownianLattice& lattice) {
    if (!partition.is_identity()) return euler_path(model, partition, s, x, lattice);
    if (model.has_exact()) return exact_path(model, s, x, lattice);
    return euler_path(model, Partition::uniform(lattice.finest_n(), lattice.horizon()), s, x, lattice);
}

EndpointMatrix coupled_endpoints(const CoefficientModel& model, std::span<const Partition> partitions,
                                 std::span<const StartPoint> starts, const BrownianLattice& lattice, double t) {
    EndpointMatrix out(partitions.size(), starts.size(), model.d);
    const std::size_t t_index = lattice.index_of(t);
    for (std::size_t r = 0; r < partitions.size(); ++r) {
        for (std::size_t c = 0; c < starts.size(); ++c) {
            if (starts[c].s > t) throw InvalidArgument("evaluation time precedes a start time");
            const DiscretePath path = process_path(model, partitions[r], starts[c].s, starts[c].x, lattice);
            const auto v = path.at_index(t_index);
            std::copy(v.begin(), v.end(), out.at(r, c).begin());
        }
    }
    return out;
}

} // namespace holderem
