#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "holderem/brownian.hpp"
#include "holderem/grids.hpp"
#include "holderem/models.hpp"

namespace holderem {

/// A path started at (s, x), stored at every finest-lattice time in [s, T].
class DiscretePath {
public:
    DiscretePath(std::size_t dim, std::size_t start_index, std::size_t finest_n, double horizon,
                 std::vector<double> values);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t start_index() const noexcept { return start_index_; }
    std::size_t finest_n() const noexcept { return finest_n_; }
    double horizon() const noexcept { return horizon_; }
    bool diverged() const noexcept { return diverged_; }

    /// Value at finest index i, start_index <= i <= finest_n.
    std::span<const double> at_index(std::size_t i) const;
    /// Value at a lattice-aligned time t >= s.
    std::vector<double> at(double t) const;
    std::span<const double> terminal() const { return at_index(finest_n_); }

private:
    std::size_t dim_;
    std::size_t start_index_;
    std::size_t finest_n_;
    double horizon_;
    std::vector<double> values_;
    bool diverged_ = false;
};

/// Euler-Maruyama over a grid partition from (s, x): for every finest time
/// t in (s, T] with anchor a = max(s, round_down(t)),
///   X_t = X_a + mu(X_a)(t - a) + sigma(X_a)(W_t - W_a),
/// where W_t - W_a is summed left to right over the fine increments. With
/// s = 0 and a uniform partition of n cells the values at kT/n are the
/// classical Euler iterates.
///
/// The partition must be a grid (not the identity) aligned to the lattice;
/// s must be a lattice time. Non-finite values mark the path diverged.
DiscretePath euler_path(const CoefficientModel& model, const Partition& partition, double s,
                        std::span<const double> x, const BrownianLattice& lattice);

/// Closed-form solution from (s, x) on the same lattice. Throws ExactUnavailable.
DiscretePath exact_path(const CoefficientModel& model, double s, std::span<const double> x,
                        const BrownianLattice& lattice);

/// X^{delta,x}_{s,.} for delta in S or delta = identity. For the identity the
/// exact solution is used, or, when the model has none, Euler on the finest
/// lattice grid as a proxy.
DiscretePath process_path(const CoefficientModel& model, const Partition& partition, double s,
                          std::span<const double> x, const BrownianLattice& lattice);

struct StartPoint {
    double s = 0.0;
    std::vector<double> x;
};

/// Values at time t of process_path for every (partition, start) pair, all
/// driven by one lattice. Row r = partition, column c = start.
class EndpointMatrix {
public:
    EndpointMatrix(std::size_t rows, std::size_t cols, std::size_t dim)
        : rows_(rows), cols_(cols), dim_(dim), data_(rows * cols * dim, 0.0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t dim() const noexcept { return dim_; }
    std::span<const double> at(std::size_t r, std::size_t c) const {
        return std::span<const double>(data_).subspan((r * cols_ + c) * dim_, dim_);
    }
    std::span<double> at(std::size_t r, std::size_t c) {
        return std::span<double>(data_).subspan((r * cols_ + c) * dim_, dim_);
    }

private:
    std::size_t rows_, cols_, dim_;
    std::vector<double> data_;
};

EndpointMatrix coupled_endpoints(const CoefficientModel& model, std::span<const Partition> partitions,
                                 std::span<const StartPoint> starts, const BrownianLattice& lattice, double t);

} // namespace holderem
