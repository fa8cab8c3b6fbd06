#include "holderem/brownian.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "holderem/errors.hpp"

namespace holderem {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t prod = static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b);
    hi = static_cast<std::uint32_t>(prod >> 32);
    lo = static_cast<std::uint32_t>(prod);
}

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

// Relative tolerance for matching a real time against a grid time.
constexpr double kAlignTol = 1e-12;

std::pair<double, double> normal_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t pair) noexcept {
    const auto block = philox4x32(
        {static_cast<std::uint32_t>(pair), static_cast<std::uint32_t>(pair >> 32),
         static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)},
        {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
    const std::uint64_t a = (static_cast<std::uint64_t>(block[1]) << 32) | block[0];
    const std::uint64_t b = (static_cast<std::uint64_t>(block[3]) << 32) | block[2];
    const double u1 = static_cast<double>((a >> 11) + 1) * kTwoPow53Inv;
    const double u2 = static_cast<double>(b >> 11) * kTwoPow53Inv;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

} // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

double standard_normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
    const auto [even, odd] = normal_pair(seed, stream, index >> 1);
    return (index & 1u) == 0 ? even : odd;
}

double uniform_open01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) noexcept {
    // Counter layout (index_lo, index_hi ^ tag, stream_lo, stream_hi) with a
    // key derived from the seed by a fixed odd multiplier.
    const std::uint64_t tagged = index ^ 0x5A5A5A5A00000000ull;
    const std::uint64_t key = seed * 0x9E3779B97F4A7C15ull + 1;
    const auto block = philox4x32(
        {static_cast<std::uint32_t>(tagged), static_cast<std::uint32_t>(tagged >> 32),
         static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)},
        {static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)});
    const std::uint64_t a = (static_cast<std::uint64_t>(block[1]) << 32) | block[0];
    return (static_cast<double>(a >> 11) + 0.5) * kTwoPow53Inv;
}

BrownianLattice BrownianLattice::sample(std::uint64_t seed, std::uint64_t path_index, std::size_t finest_n,
                                        double horizon, std::size_t dim) {
    if (finest_n == 0) throw InvalidArgument("lattice needs finest_n >= 1");
    if (dim == 0) throw InvalidArgument("lattice needs dimension m >= 1");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw InvalidArgument("lattice needs T > 0");

    BrownianLattice lat;
    lat.seed_ = seed;
    lat.path_index_ = path_index;
    lat.finest_n_ = finest_n;
    lat.dim_ = dim;
    lat.horizon_ = horizon;

    const std::size_t count = finest_n * dim;
    const double scale = std::sqrt(horizon / static_cast<double>(finest_n));
    lat.increments_.resize(count);
    for (std::size_t g = 0; g < count; g += 2) {
        const auto [even, odd] = normal_pair(seed, path_index, g >> 1);
        lat.increments_[g] = scale * even;
        if (g + 1 < count) lat.increments_[g + 1] = scale * odd;
    }

    lat.values_.assign((finest_n + 1) * dim, 0.0);
    for (std::size_t k = 0; k < finest_n; ++k) {
        for (std::size_t c = 0; c < dim; ++c) {
            lat.values_[(k + 1) * dim + c] = lat.values_[k * dim + c] + lat.increments_[k * dim + c];
        }
    }
    return lat;
}

std::size_t BrownianLattice::index_of(double t) const {
    if (!(t >= 0.0 && t <= horizon_)) {
        throw AlignmentError("time " + std::to_string(t) + " outside [0, T]");
    }
    const double scaled = t * static_cast<double>(finest_n_) / horizon_;
    const double rounded = std::nearbyint(scaled);
    if (std::abs(time(static_cast<std::size_t>(rounded)) - t) > kAlignTol * horizon_) {
        throw AlignmentError("time " + std::to_string(t) + " is not on the finest grid of " +
                             std::to_string(finest_n_) + " cells");
    }
    return static_cast<std::size_t>(rounded);
}

std::vector<double> BrownianLattice::value_at(double t) const {
    const auto v = value_at_index(index_of(t));
    return {v.begin(), v.end()};
}

std::vector<std::size_t> BrownianLattice::align(const Partition& p) const {
    if (p.is_identity()) throw AlignmentError("the identity partition has no grid points");
    if (std::abs(p.horizon() - horizon_) > kAlignTol * horizon_) {
        throw AlignmentError("partition horizon differs from the lattice horizon");
    }
    std::vector<std::size_t> idx;
    idx.reserve(p.points().size());
    for (double t : p.points()) idx.push_back(index_of(std::min(t, horizon_)));
    return idx;
}

std::vector<double> BrownianLattice::coarsen(const Partition& p) const {
    const auto idx = align(p);
    std::vector<double> out((idx.size() - 1) * dim_, 0.0);
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
        for (std::size_t c = 0; c < dim_; ++c) {
            double acc = 0.0;
            for (std::size_t j = idx[k]; j < idx[k + 1]; ++j) acc += increments_[j * dim_ + c];
            out[k * dim_ + c] = acc;
        }
    }
    return out;
}

} // namespace holderem
