#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace holderem {

/// A time partition 0 = t_0 < t_1 < ... < t_n = T of [0, T], or the identity
/// map on [0, T] (the "partition" of the exact solution, with mesh 0).
///
/// The round-down map sends [t_0, t_1] to t_0 and (t_k, t_{k+1}] to t_k for
/// k >= 1. Note the first cell is closed, so round_down(t_1) == t_0.
///
/// Immutable after construction.
class Partition {
public:
    enum class Kind { grid, identity };

    static Partition uniform(std::size_t n, double horizon);
    static Partition from_points(std::vector<double> points);
    static Partition identity(double horizon);

    Kind kind() const noexcept { return kind_; }
    bool is_identity() const noexcept { return kind_ == Kind::identity; }
    bool is_uniform() const noexcept { return uniform_; }
    double horizon() const noexcept { return horizon_; }

    /// Number of cells; 0 for the identity.
    std::size_t cells() const noexcept { return points_.empty() ? 0 : points_.size() - 1; }
    std::span<const double> points() const noexcept { return points_; }
    double point(std::size_t k) const { return points_.at(k); }

    /// Largest gap between consecutive points; 0 for the identity.
    double mesh() const noexcept { return mesh_; }

    double round_down(double t) const;

    /// Index k of the grid point round_down(t) = t_k. Not defined for the identity.
    std::size_t round_down_index(double t) const;

private:
    Partition(Kind kind, double horizon, std::vector<double> points, bool uniform);

    Kind kind_;
    double horizon_;
    std::vector<double> points_;
    bool uniform_;
    double mesh_;
};

bool operator==(const Partition& a, const Partition& b);

} // namespace holderem
