#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "holderem/grids.hpp"

namespace holderem {

/// Philox4x32-10 block function (Salmon et al.), the counter-based generator
/// behind every Gaussian in this library.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Standard normal number `index` of the stream keyed by (seed, stream).
///
/// Pairs of normals come from one Philox block via the basic Box-Muller
/// transform: block words (w0,w1) and (w2,w3) form two 64-bit integers a, b;
/// u1 = ((a >> 11) + 1) * 2^-53 in (0, 1], u2 = (b >> 11) * 2^-53 in [0, 1);
/// even indices get sqrt(-2 ln u1) cos(2 pi u2), odd ones the sine.
/// This variant is frozen: changing it changes every reproduced number.
double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept;

/// Uniform number `index` in (0, 1) of the stream keyed by (seed, stream).
/// Drawn from a differently keyed Philox stream than the Gaussians.
double uniform_open01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept;

/// Brownian increments of an m-dimensional path on the uniform finest grid
/// of [0, T] with finest_n cells. Fully determined by
/// (seed, path_index, finest_n, T, m); every coarser grid and every starting
/// point reuses the same increments, which is what couples them.
class BrownianLattice {
public:
    static BrownianLattice sample(std::uint64_t seed, std::uint64_t path_index, std::size_t finest_n,
                                  double horizon, std::size_t dim);

    std::size_t finest_n() const noexcept { return finest_n_; }
    std::size_t dim() const noexcept { return dim_; }
    double horizon() const noexcept { return horizon_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t path_index() const noexcept { return path_index_; }

    /// Time of finest index i. All library code derives times from this.
    double time(std::size_t i) const noexcept {
        return horizon_ * static_cast<double>(i) / static_cast<double>(finest_n_);
    }
    /// Finest index of t; throws AlignmentError when t is off the grid.
    std::size_t index_of(double t) const;

    /// Increments flattened cell-major: cell k occupies [k*m, (k+1)*m).
    std::span<const double> increments() const noexcept { return increments_; }
    std::span<const double> increment(std::size_t k) const {
        return std::span<const double>(increments_).subspan(k * dim_, dim_);
    }

    /// W at finest index i (prefix sum in ascending time; W_0 = 0).
    std::span<const double> value_at_index(std::size_t i) const {
        return std::span<const double>(values_).subspan(i * dim_, dim_);
    }
    std::vector<double> value_at(double t) const;

    /// Finest indices of the points of p; throws AlignmentError if any point
    /// is off the finest grid or p has a different horizon.
    std::vector<std::size_t> align(const Partition& p) const;

    /// Increments over the cells of p, each the left-to-right sum of the fine
    /// increments it spans (starting from 0.0), flattened cell-major.
    std::vector<double> coarsen(const Partition& p) const;

private:
    BrownianLattice() = default;

    std::uint64_t seed_ = 0;
    std::uint64_t path_index_ = 0;
    std::size_t finest_n_ = 0;
    std::size_t dim_ = 0;
    double horizon_ = 0.0;
    std::vector<double> increments_;
    std::vector<double> values_;
};

} // namespace holderem
