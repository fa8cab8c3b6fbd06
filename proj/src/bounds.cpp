#include "holderem/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "holderem/errors.hpp"

namespace holderem {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm(std::span<const double> v) {
    double acc = 0.0;
    for (double e : v) acc += e * e;
    return std::sqrt(acc);
}

double diff_norm(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc);
}

double second_diff_norm(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                        std::span<const double> d) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double v = (a[i] - b[i]) - (c[i] - d[i]);
        acc += v * v;
    }
    return std::sqrt(acc);
}

// coef * rest with 0 * inf = 0.
double product(double coef, double rest) {
    if (rest == 0.0 || coef == 0.0) return 0.0;
    return coef * rest;
}

void check_times(const BoundParams& bp, double s, double t, const char* what) {
    if (!(s >= 0.0 && s <= t && t <= bp.horizon)) {
        throw InvalidArgument(std::string(what) + ": need 0 <= s <= t <= T");
    }
}

void require_order_four(const BoundParams& bp, const char* what) {
    if (!(bp.p >= 4.0)) throw InvalidArgument(std::string(what) + " needs p >= 4");
}

// [sqrt(T) + p]
double k_factor(const BoundParams& bp) { return std::sqrt(bp.horizon) + bp.p; }

// e^{c^2 [sqrt(T)+p]^2 T}
double gronwall_factor(const BoundParams& bp, double multiple) {
    const double k = k_factor(bp);
    return std::exp(multiple * bp.c * bp.c * k * k * bp.horizon);
}

} // namespace

BoundParams bound_params(const CoefficientModel& model, double p, double horizon) {
    if (!(horizon > 0.0)) throw InvalidArgument("bound parameters need T > 0");
    BoundParams bp;
    bp.horizon = horizon;
    bp.lyapunov = default_lyapunov(model, p);
    bp.c = model.lipschitz_c;
    bp.c_bar = bp.lyapunov.c_bar;
    bp.b = model.second_order_b;
    bp.p = p;
    return bp;
}

double bound_moment(const BoundParams& bp, std::span<const double> x, double s, double t) {
    check_times(bp, s, t, "bound_moment");
    return std::exp(1.5 * bp.c_bar * (t - s)) * bp.v(x);
}

double bound_strong_error(const BoundParams& bp, std::span<const double> x, double s, double t, double mesh) {
    check_times(bp, s, t, "bound_strong_error");
    if (!(mesh >= 0.0)) throw InvalidArgument("mesh must be >= 0");
    const double k = k_factor(bp);
    return std::numbers::sqrt2 * bp.c * k * k * gronwall_factor(bp, 1.0) *
           std::pow(std::exp(1.5 * bp.c_bar * bp.horizon) * bp.v(x), 1.0 / bp.p) * std::sqrt(t - s) *
           std::sqrt(mesh);
}

double bound_time_space(const BoundParams& bp, std::span<const double> x, std::span<const double> x_tilde, double s,
                        double s_tilde, double t, double t_tilde) {
    check_times(bp, s, t, "bound_time_space");
    check_times(bp, s_tilde, t_tilde, "bound_time_space");
    const double e1 = gronwall_factor(bp, 1.0);
    const double spatial = std::numbers::sqrt2 * diff_norm(x, x_tilde) * e1;
    const double v_mean = 0.5 * (std::pow(bp.v(x), 1.0 / bp.p) + std::pow(bp.v(x_tilde), 1.0 / bp.p));
    const double temporal = 5.0 * e1 * k_factor(bp) * std::exp(1.5 * bp.c_bar * bp.horizon / bp.p) * v_mean *
                            (std::sqrt(std::abs(s - s_tilde)) + std::sqrt(std::abs(t - t_tilde)));
    return spatial + temporal;
}

double bound_spatial_time(const BoundParams& bp, std::span<const double> x, std::span<const double> x_tilde, double t,
                          double t_tilde) {
    if (!(t >= 0.0 && t <= bp.horizon && t_tilde >= 0.0 && t_tilde <= bp.horizon)) {
        throw InvalidArgument("bound_spatial_time: times must lie in [0, T]");
    }
    return bp.c * k_factor(bp) * std::numbers::sqrt2 * gronwall_factor(bp, 1.0) * diff_norm(x, x_tilde) *
           std::sqrt(std::abs(t - t_tilde));
}

double bound_four_point(const BoundParams& bp, std::span<const double> x, std::span<const double> x_tilde,
                        std::span<const double> y, std::span<const double> y_tilde, double s, double t, double mesh) {
    require_order_four(bp, "bound_four_point");
    check_times(bp, s, t, "bound_four_point");
    if (!(mesh >= 0.0)) throw InvalidArgument("mesh must be >= 0");
    const double k = k_factor(bp);
    const double e3 = gronwall_factor(bp, 3.0);
    const double dx = diff_norm(x, x_tilde);
    const double first = std::numbers::sqrt2 * gronwall_factor(bp, 1.0) * second_diff_norm(x, y, x_tilde, y_tilde);

    const double v_mean = 0.5 * (std::pow(bp.v(x), 1.0 / bp.p) + std::pow(bp.v(x_tilde), 1.0 / bp.p));
    const double coef2 = 2.0 * std::numbers::sqrt2 * (bp.c * bp.c + product(bp.b, bp.c) + bp.b);
    const double rest2 =
        std::pow(k, 4) * e3 * std::exp(1.5 * bp.c_bar * bp.horizon / bp.p) * v_mean * std::sqrt(mesh) * dx *
        std::sqrt(t - s);
    const double second = product(coef2, rest2);

    const double rest3 =
        k * e3 * 0.5 * (diff_norm(x, y) + diff_norm(x_tilde, y_tilde)) * dx * std::sqrt(t - s);
    const double third = product(2.0 * std::numbers::sqrt2 * bp.b, rest3);
    return first + second + third;
}

double bound_full(const BoundParams& bp, std::span<const double> x, std::span<const double> x_tilde, double s,
                  double s_tilde, double t, double t_tilde, double mesh) {
    require_order_four(bp, "bound_full");
    check_times(bp, s, t, "bound_full");
    check_times(bp, s_tilde, t_tilde, "bound_full");
    if (!(mesh >= 0.0)) throw InvalidArgument("mesh must be >= 0");
    const double k = k_factor(bp);
    const double v_mean = 0.5 * (std::pow(bp.v(x), 2.0 / bp.p) + std::pow(bp.v(x_tilde), 2.0 / bp.p));
    const double bracket =
        std::sqrt(std::abs(s - s_tilde)) + std::sqrt(std::abs(t - t_tilde)) + diff_norm(x, x_tilde);
    const double rest = std::pow(k, 6) * gronwall_factor(bp, 5.0) * std::exp(4.5 * bp.c_bar * bp.horizon / bp.p) *
                        v_mean * bracket * std::sqrt(mesh);
    return product(31.0 * (bp.b + bp.c) * (bp.c + 1.0), rest);
}

// ---------------------------------------------------------------------------

namespace {

// Sample index whose value x(delta(s)) integrates over cell [t_j, t_{j+1}).
std::size_t integrand_index(const Partition& delta, std::size_t j, double h) {
    if (delta.is_identity()) return j;
    const double right = std::min(h * static_cast<double>(j + 1), delta.horizon());
    const double anchor = delta.round_down(right);
    return static_cast<std::size_t>(std::nearbyint(anchor / h));
}

void check_grid(std::span<const double> samples, double h, const Partition& delta) {
    if (samples.size() < 2) throw InvalidArgument("Gronwall check needs at least two samples");
    if (!(h > 0.0)) throw InvalidArgument("Gronwall check needs h > 0");
    const double span_len = h * static_cast<double>(samples.size() - 1);
    if (std::abs(delta.horizon() - span_len) > 1e-9 * std::max(1.0, span_len)) {
        throw InvalidArgument("round-down map horizon must equal the sampled interval length");
    }
    for (double v : samples) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("Gronwall samples must be finite and >= 0");
    }
}

void check_premise(double residual, std::size_t index, double t0, double h, double tolerance) {
    if (residual > tolerance) {
        const double t = t0 + h * static_cast<double>(index);
        throw PremiseError("Gronwall premise violated by " + std::to_string(residual) + " at t = " + std::to_string(t), t);
    }
}

} // namespace

GronwallReport gronwall_check(std::span<const double> samples, double t0, double h, const Partition& delta, double a,
                              double c, double premise_tolerance, double tolerance) {
    check_grid(samples, h, delta);
    if (!(a >= 0.0 && c >= 0.0)) throw InvalidArgument("Gronwall check needs a, c >= 0");

    GronwallReport report;
    report.premise_residual = -kInf;
    std::size_t premise_index = 0;
    double integral = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i > 0) integral += c * samples[integrand_index(delta, i - 1, h)] * h;
        const double residual = samples[i] - (a + integral);
        if (residual > report.premise_residual) {
            report.premise_residual = residual;
            premise_index = i;
        }
    }
    check_premise(report.premise_residual, premise_index, t0, h, premise_tolerance);

    report.min_slack = kInf;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double t = t0 + h * static_cast<double>(i);
        const double slack = a * std::exp(c * (t - t0)) - samples[i];
        if (slack < report.min_slack) {
            report.min_slack = slack;
            report.worst_index = i;
        }
        if (slack < -tolerance) ++report.violations;
    }
    return report;
}

GronwallReport gronwall_lp_check(std::span<const double> samples, std::span<const double> a_samples, double t0,
                                 double h, const Partition& delta, double c, double p, double premise_tolerance,
                                 double tolerance) {
    check_grid(samples, h, delta);
    if (a_samples.size() != samples.size()) throw InvalidArgument("a(t) must be sampled on the same grid as x(t)");
    if (!(c >= 0.0 && p >= 1.0)) throw InvalidArgument("Gronwall L^p check needs c >= 0 and p >= 1");

    GronwallReport report;
    report.premise_residual = -kInf;
    std::size_t premise_index = 0;
    double integral = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i > 0) integral += std::pow(std::abs(c * samples[integrand_index(delta, i - 1, h)]), p) * h;
        const double residual = samples[i] - (a_samples[i] + std::pow(integral, 1.0 / p));
        if (residual > report.premise_residual) {
            report.premise_residual = residual;
            premise_index = i;
        }
    }
    check_premise(report.premise_residual, premise_index, t0, h, premise_tolerance);

    report.min_slack = kInf;
    double a_sup = 0.0;
    const double prefactor = std::pow(2.0, 1.0 - 1.0 / p);
    const double rate = std::pow(2.0, p - 1.0) * std::pow(c, p) / p;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        a_sup = std::max(a_sup, a_samples[i]);
        const double t = t0 + h * static_cast<double>(i);
        const double slack = prefactor * a_sup * std::exp(rate * (t - t0)) - samples[i];
        if (slack < report.min_slack) {
            report.min_slack = slack;
            report.worst_index = i;
        }
        if (slack < -tolerance) ++report.violations;
    }
    return report;
}

LyapunovReport lyapunov_check(const LyapunovSpec& spec, std::span<const std::vector<double>> xs,
                              std::span<const std::vector<double>> ys, std::span<const std::vector<double>> zs) {
    if (xs.size() != ys.size() || xs.size() != zs.size()) {
        throw InvalidArgument("lyapunov_check needs equally many points and directions");
    }
    constexpr double kRelTol = 1e-12;
    const double q = spec.exponent;
    LyapunovReport report;
    report.samples = xs.size();
    std::vector<double> fwd, bwd;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& x = xs[i];
        const auto& y = ys[i];
        const auto& z = zs[i];
        const double v = spec.value(x);

        const double d1 = spec.first_derivative(x, y);
        const double bound1 = spec.first_constant() * std::pow(v, (2.0 * q - 1.0) / (2.0 * q)) * norm(y);
        const double d2 = spec.second_derivative(x, y, z);
        const double bound2 = spec.second_constant() * std::pow(v, (q - 1.0) / q) * norm(y) * norm(z);

        if (std::abs(d1) > bound1 * (1.0 + kRelTol)) ++report.first_violations;
        if (std::abs(d2) > bound2 * (1.0 + kRelTol)) ++report.second_violations;
        if (bound1 > 0.0) report.max_first_ratio = std::max(report.max_first_ratio, std::abs(d1) / bound1);
        if (bound2 > 0.0) report.max_second_ratio = std::max(report.max_second_ratio, std::abs(d2) / bound2);

        const double xnorm = std::max(1.0, norm(x));
        fwd.assign(x.size(), 0.0);
        bwd.assign(x.size(), 0.0);
        if (norm(y) > 0.0) {
            const double h = 1e-4 * xnorm / norm(y);
            for (std::size_t k = 0; k < x.size(); ++k) {
                fwd[k] = x[k] + h * y[k];
                bwd[k] = x[k] - h * y[k];
            }
            const double fd1 = (spec.value(fwd) - spec.value(bwd)) / (2.0 * h);
            const double denom = std::max(std::abs(d1), bound1);
            if (denom > 0.0) report.max_first_fd_error = std::max(report.max_first_fd_error, std::abs(fd1 - d1) / denom);
        }
        if (norm(z) > 0.0 && norm(y) > 0.0) {
            const double h = 1e-4 * xnorm / norm(z);
            for (std::size_t k = 0; k < x.size(); ++k) {
                fwd[k] = x[k] + h * z[k];
                bwd[k] = x[k] - h * z[k];
            }
            const double fd2 = (spec.first_derivative(fwd, y) - spec.first_derivative(bwd, y)) / (2.0 * h);
            const double denom = std::max(std::abs(d2), bound2);
            if (denom > 0.0) {
                report.max_second_fd_error = std::max(report.max_second_fd_error, std::abs(fd2 - d2) / denom);
            }
        }
    }
    return report;
}

SecondOrderReport second_order_check(const VectorField& f, std::size_t out_dim, double sup_first, double sup_second,
                                     std::span<const DifferenceQuadruple> quadruples, double tolerance) {
    SecondOrderReport report;
    report.samples = quadruples.size();
    std::vector<double> fv1(out_dim), fv2(out_dim), fw1(out_dim), fw2(out_dim);
    for (const auto& q : quadruples) {
        f(q.v1, fv1);
        f(q.v2, fv2);
        f(q.w1, fw1);
        f(q.w2, fw2);
        const double lhs = second_diff_norm(fv1, fw1, fv2, fw2) - rounding_allowance(fv1, fw1, fv2, fw2) -
                           sup_first * rounding_allowance(q.v1, q.w1, q.v2, q.w2);
        const double rhs = sup_first * second_diff_norm(q.v1, q.w1, q.v2, q.w2) +
                           0.5 * sup_second * (diff_norm(q.v1, q.w1) + diff_norm(q.v2, q.w2)) * diff_norm(q.w1, q.w2);
        double ratio = 0.0;
        if (lhs > 0.0 && std::isfinite(rhs)) ratio = rhs > 0.0 ? lhs / rhs : kInf;
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (ratio > 1.0 + tolerance) ++report.violations;
    }
    return report;
}

} // namespace holderem
