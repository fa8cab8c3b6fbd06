#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "holderem/grids.hpp"
#include "holderem/models.hpp"

namespace holderem {

/// Constants entering the explicit strong-error bounds. b may be +infinity;
/// every b-product uses 0 * inf = 0 and returns +inf when the other factor is
/// positive.
struct BoundParams {
    double horizon = 1.0;
    double c = 0.0;
    double c_bar = 0.0;
    double b = 0.0;
    double p = 2.0;
    LyapunovSpec lyapunov;

    double v(std::span<const double> x) const { return lyapunov.value(x); }
};

/// Parameters for a model with its default Lyapunov function at order p.
BoundParams bound_params(const CoefficientModel& model, double p, double horizon);

/// E[V(X_{s,t})] <= e^{1.5 c_bar (t - s)} V(x).
double bound_moment(const BoundParams& bp, std::span<const double> x, double s, double t);

/// ||X^delta_{s,t} - X^iota_{s,t}||_p for a partition of the given mesh.
double bound_strong_error(const BoundParams& bp, std::span<const double> x, double s, double t, double mesh);

/// ||X^{delta,x}_{s,t} - X^{delta,x~}_{s~,t~}||_p.
double bound_time_space(const BoundParams& bp, std::span<const double> x, std::span<const double> x_tilde, double s,
                        double s_tilde, double t, double t_tilde);

/// ||(X^{x}_{s,t~} - X^{x}_{s,t}) - (X^{x~}_{s,t~} - X^{x~}_{s,t})||_p.
double bound_spatial_time(const BoundParams& bp, std::span<const double> x, std::span<const double> x_tilde, double t,
                          double t_tilde);

/// ||(X^{iota,x} - X^{delta,y}) - (X^{iota,x~} - X^{delta,y~})||_{p/2} at (s, t). Needs p >= 4.
double bound_four_point(const BoundParams& bp, std::span<const double> x, std::span<const double> x_tilde,
                        std::span<const double> y, std::span<const double> y_tilde, double s, double t, double mesh);

/// ||(X^{iota,x}_{s,t} - X^{iota,x~}_{s~,t~}) - (X^{delta,x}_{s,t} - X^{delta,x~}_{s~,t~})||_{p/2}. Needs p >= 4.
double bound_full(const BoundParams& bp, std::span<const double> x, std::span<const double> x_tilde, double s,
                  double s_tilde, double t, double t_tilde, double mesh);

// ---------------------------------------------------------------------------
// Numeric verifiers

struct GronwallReport {
    double premise_residual = 0.0; // max_i x_i - (a + integral), may be negative
    double min_slack = 0.0;         // min_i bound_i - x_i
    std::size_t worst_index = 0;    // argmin of the slack
    std::size_t violations = 0;     // slack < -tolerance
    bool holds() const noexcept { return violations == 0; }
};

/// Checks x(t) <= a e^{c (t - t0)} for samples x_i = x(t0 + i h).
///
/// The premise x(t) <= a + int_{t0}^t c x(delta(s)) ds is verified first with
/// a Riemann sum on the sample grid: cell [t_j, t_{j+1}) contributes
/// c x(t_j) h for the identity (left sum) and c x(delta(t_{j+1})) h for a grid
/// delta, which is exact for the piecewise-constant integrand. `delta` lives
/// on [0, t_N - t0]; grid points must be sample times. A premise excess above
/// premise_tolerance throws PremiseError naming the time.
GronwallReport gronwall_check(std::span<const double> samples, double t0, double h, const Partition& delta, double a,
                              double c, double premise_tolerance, double tolerance);

/// L^p form: premise x(t) <= a(t) + (int |c x(delta(s))|^p ds)^{1/p};
/// conclusion x(t) <= 2^{1-1/p} sup_{[t0,t]} a * exp(2^{p-1} c^p (t - t0) / p).
GronwallReport gronwall_lp_check(std::span<const double> samples, std::span<const double> a_samples, double t0,
                                 double h, const Partition& delta, double c, double p, double premise_tolerance,
                                 double tolerance);

struct LyapunovReport {
    std::size_t samples = 0;
    std::size_t first_violations = 0;
    std::size_t second_violations = 0;
    double max_first_ratio = 0.0;  // |DV(x)(y)| / bound
    double max_second_ratio = 0.0; // |D^2V(x)(y,z)| / bound
    double max_first_fd_error = 0.0;
    double max_second_fd_error = 0.0;
};

/// Checks the two derivative growth bounds at every (x_i, y_i, z_i) and
/// validates the derivative evaluators against central differences with
/// step 1e-4 max(1, |x|) along the direction. FD errors are relative to
/// max(|exact|, bound).
LyapunovReport lyapunov_check(const LyapunovSpec& spec, std::span<const std::vector<double>> xs,
                              std::span<const std::vector<double>> ys, std::span<const std::vector<double>> zs);

/// Quadruple (v1, v2, w1, w2) for the second-order difference inequality
///   |(f(v1)-f(w1)) - (f(v2)-f(w2))| <= L1 |(v1-w1)-(v2-w2)|
///                                      + L2/2 (|v1-w1| + |v2-w2|) |w1-w2|
/// with L1 = sup |Df|, L2 = sup |D^2 f|. The mean-value argument pairs the
/// L2 term with |v1-w1| + |v2-w2|; pairing it with |v1-v2| + |w1-w2| fails
/// already for f = sin (see the unit tests). The lhs is reduced by the
/// rounding allowance of models.hpp before comparing.
struct DifferenceQuadruple {
    std::vector<double> v1, v2, w1, w2;
};

struct SecondOrderReport {
    std::size_t samples = 0;
    std::size_t violations = 0;
    double max_ratio = 0.0;
};

SecondOrderReport second_order_check(const VectorField& f, std::size_t out_dim, double sup_first, double sup_second,
                                     std::span<const DifferenceQuadruple> quadruples, double tolerance = 1e-9);

} // namespace holderem
