#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "holderem/bounds.hpp"
#include "holderem/grids.hpp"
#include "holderem/models.hpp"

namespace holderem {

/// Monte Carlo estimate (E|Z|^p)^{1/p} with a delta-method standard error.
struct ErrorStat {
    double estimate = 0.0;
    double raw_moment = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
    double p = 2.0;
    std::optional<double> bound;
    /// Estimate divided by the statistic's normalizer, when it has one.
    std::optional<double> quotient;
    /// Diverged samples skipped under DivergencePolicy::drop.
    std::size_t dropped = 0;
};

enum class DivergencePolicy { abort, drop };

struct McOptions {
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    double horizon = 1.0;
    /// Finest lattice cells; 0 picks n for models with a closed form and 16 n otherwise.
    std::size_t finest_n = 0;
    DivergencePolicy divergence = DivergencePolicy::abort;
};

/// Statistic from per-path norms |Z_i| in path order. Non-finite norms abort
/// (EstimationError) or are dropped, per policy.
ErrorStat lp_from_norms(std::span<const double> norms, double p, DivergencePolicy policy = DivergencePolicy::abort);

/// Z_i = sampler(seed, i) for i in [0, num_paths).
using PathSampler = std::function<std::vector<double>(std::uint64_t seed, std::uint64_t path_index)>;

ErrorStat lp_moment(const PathSampler& sampler, double p, std::size_t num_paths, std::uint64_t seed,
                    std::size_t threads = 1, DivergencePolicy policy = DivergencePolicy::abort);

/// (E|X^x_t - Y^{n,x}_t|^p)^{1/p} with X exact (or the finest-grid Euler
/// proxy) and Y Euler on the uniform n-cell grid, both on one lattice per
/// path. Quotient: estimate / (1 + |x|). t defaults to the horizon.
ErrorStat two_point_stat(const CoefficientModel& model, std::size_t n, std::span<const double> x, double p,
                         std::size_t num_paths, const McOptions& opts, std::optional<double> t = std::nullopt);

/// (E|(X^x_t - Y^{n,x}_t) - (X^y_t - Y^{n,y}_t)|^p)^{1/p}, all four paths on
/// one lattice. Quotient: estimate / (|x - y| (1 + |x| + |y|)); x = y with
/// normalize set throws InvalidArgument.
ErrorStat four_point_stat(const CoefficientModel& model, std::size_t n, std::span<const double> x,
                          std::span<const double> y, double p, std::size_t num_paths, const McOptions& opts,
                          std::optional<double> t = std::nullopt, bool normalize = true);

// ---------------------------------------------------------------------------
// Hoelder sweep

/// Grid of base points and the rule for their partners:
///   s~ = max(0, s - s_shift), t~ = min(T, t + t_shift),
///   x~ = x + x_shift, y = x + y_shift, y~ = x~ + y_shift (componentwise).
/// n = 0 stands for the identity partition.
struct HolderSweepConfig {
    std::vector<double> s_values{0.0, 0.25, 0.5};
    std::vector<double> t_values{0.5, 0.75, 1.0};
    std::vector<std::vector<double>> x_values{{-0.5}, {0.5}, {1.0}};
    std::vector<std::size_t> n_values{16, 128, 1024};
    double s_shift = 0.125;
    double t_shift = 0.125;
    double x_shift = 0.1;
    double y_shift = 0.05;
    double horizon = 1.0;
    std::size_t finest_n = 1024;
};

/// One statistic with its bound. Items:
///   "i"     E V(X^{delta,x}_{s,t})              (p = 1 mean, bound_moment)
///   "ii"    |X^delta_{s,t} - X^iota_{s,t}|_p
///   "iii"   |X^{delta,x}_{s,t} - X^{delta,x~}_{s~,t~}|_p
///   "iv"    |(X^x_{s,t~} - X^x_{s,t}) - (X^{x~}_{s,t~} - X^{x~}_{s,t})|_p
///   "v"     |(X^{iota,x} - X^{delta,y}) - (X^{iota,x~} - X^{delta,y~})|_{p/2} at (s, t)
///   "vi"    |(X^{iota,x}_{s,t} - X^{iota,x~}_{s~,t~}) - (X^{delta,x}_{s,t} - X^{delta,x~}_{s~,t~})|_{p/2}
struct HolderRow {
    std::string item;
    double s = 0.0, s_tilde = 0.0, t = 0.0, t_tilde = 0.0;
    std::vector<double> x, x_tilde, y, y_tilde;
    std::size_t n = 0;
    double mesh = 0.0;
    ErrorStat stat;

    /// estimate <= bound + k * std_error
    bool dominated(double k = 3.0) const;
};

struct HolderSweepResult {
    std::vector<HolderRow> rows;
    std::vector<std::string> notices;
};

HolderSweepResult holder_sweep(const CoefficientModel& model, const HolderSweepConfig& config, double p,
                               std::size_t num_paths, const McOptions& opts);

// ---------------------------------------------------------------------------
// Monte Carlo Euler functional and its quadrature oracle

using Functional = std::function<double(std::span<const double>)>;

/// (1/n) sum_i f(Y^{n,i,x}_T) over n Euler paths with n steps; path i uses path_index i.
double mc_euler_functional(const CoefficientModel& model, const Functional& f, std::size_t n,
                           std::span<const double> x, const McOptions& opts);

/// Nodes x_i and weights w_i with sum_i w_i g(x_i) ~ int g(x) e^{-x^2} dx.
struct HermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
HermiteRule gauss_hermite_rule(std::size_t n);

struct QuadratureResult {
    double value = 0.0;
    std::size_t nodes = 0;
    double change = 0.0; // |value(nodes) - value(nodes / 2)|
};

/// E f(X^x_t) for a scalar model with a closed form, by Gauss-Hermite
/// quadrature in the Brownian increment. Doubles the node count from
/// max(16, nodes) until successive values differ by less than 1e-10;
/// past 512 nodes throws QuadratureError.
QuadratureResult gauss_hermite_mean(const CoefficientModel& model, const Functional& f, double x, double t,
                                    std::size_t nodes = 16);

struct LipschitzQuotientResult {
    /// estimate: L^p norm over replications of the centered coupled
    /// difference of averages; quotient: sqrt(n) estimate / (|x-y| (1+|x|+|y|)).
    ErrorStat stat;
    QuadratureResult mean_x;
    QuadratureResult mean_y;
};

/// Replication r uses path indices r n .. r n + n - 1 for both start points.
LipschitzQuotientResult lipschitz_quotient_mc(const CoefficientModel& model, const Functional& f, std::size_t n,
                                              double x, double y, double p, std::size_t replications,
                                              const McOptions& opts);

// ---------------------------------------------------------------------------
// Rates

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_l2 = 0.0;
    std::vector<std::pair<double, double>> points;
};

/// Least squares on (log n_i, log e_i). Needs two distinct n and e_i > 0.
RateFit fit_rate(std::span<const std::pair<double, double>> points);

struct RatePoint {
    double n = 0.0;
    double value = 0.0;
    double std_error = 0.0;
};

/// fit_rate over the points with value >= min_snr * std_error.
RateFit fit_rate_filtered(std::span<const RatePoint> points, double min_snr = 10.0);

} // namespace holderem
