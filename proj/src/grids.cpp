#include "holderem/grids.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holderem/errors.hpp"

namespace holderem {

Partition::Partition(Kind kind, double horizon, std::vector<double> points, bool uniform)
    : kind_(kind), horizon_(horizon), points_(std::move(points)), uniform_(uniform), mesh_(0.0) {
    for (std::size_t k = 1; k < points_.size(); ++k) {
        mesh_ = std::max(mesh_, points_[k] - points_[k - 1]);
    }
}

Partition Partition::uniform(std::size_t n, double horizon) {
    if (n == 0) throw InvalidArgument("uniform partition needs n >= 1");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw InvalidArgument("uniform partition needs a finite horizon T > 0");
    }
    std::vector<double> pts(n + 1);
    const double nn = static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        pts[k] = horizon * static_cast<double>(k) / nn;
    }
    pts[n] = horizon;
    return Partition(Kind::grid, horizon, std::move(pts), true);
}

Partition Partition::from_points(std::vector<double> points) {
    if (points.size() < 2) throw InvalidArgument("partition needs at least two points");
    if (points.front() != 0.0) throw InvalidArgument("partition must start at 0");
    for (std::size_t k = 1; k < points.size(); ++k) {
        if (!std::isfinite(points[k]) || !(points[k] > points[k - 1])) {
            throw InvalidArgument("partition points must be finite and strictly increasing (index " +
                                  std::to_string(k) + ")");
        }
    }
    const double horizon = points.back();
    return Partition(Kind::grid, horizon, std::move(points), false);
}

Partition Partition::identity(double horizon) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw InvalidArgument("identity partition needs a finite horizon T > 0");
    }
    return Partition(Kind::identity, horizon, {}, false);
}

std::size_t Partition::round_down_index(double t) const {
    if (is_identity()) throw InvalidArgument("round_down_index is undefined for the identity");
    if (!(t >= 0.0 && t <= horizon_)) {
        throw InvalidArgument("round_down: t = " + std::to_string(t) + " outside [0, T]");
    }
    const std::size_t n = cells();
    std::size_t j; // first point index with points_[j] >= t
    if (uniform_) {
        // Guess from arithmetic, then settle against the stored points so the
        // answer agrees bitwise with the general path.
        const double guess = std::ceil(t * static_cast<double>(n) / horizon_);
        j = static_cast<std::size_t>(std::clamp(guess, 0.0, static_cast<double>(n)));
        while (j > 0 && points_[j - 1] >= t) --j;
        while (j < n && points_[j] < t) ++j;
    } else {
        j = static_cast<std::size_t>(std::lower_bound(points_.begin(), points_.end(), t) - points_.begin());
    }
    return j == 0 ? 0 : j - 1;
}

double Partition::round_down(double t) const {
    if (is_identity()) {
        if (!(t >= 0.0 && t <= horizon_)) {
            throw InvalidArgument("round_down: t = " + std::to_string(t) + " outside [0, T]");
        }
        return t;
    }
    return points_[round_down_index(t)];
}

bool operator==(const Partition& a, const Partition& b) {
    return a.kind() == b.kind() && a.horizon() == b.horizon() &&
           std::equal(a.points().begin(), a.points().end(), b.points().begin(), b.points().end());
}

} // namespace holderem
