#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace holderem {

/// x -> out, with out sized d (drift) or d*m row-major (diffusion).
using VectorField = std::function<void(std::span<const double>, std::span<double>)>;

enum class ExactKind { none, arctan_tan, gbm, constant };

/// Drift mu: R^d -> R^d and diffusion sigma: R^d -> R^{d x m}, together with
/// the constants of the second-order condition
///
///   max_{zeta in {mu, sigma}} |(zeta(x)-zeta(y)) - (zeta(x~)-zeta(y~))|
///     <= c |(x-y) - (x~-y~)| + b (|x-y| + |x~-y~|)/2 |x-x~|
///
/// (Frobenius norm for sigma). b may be +infinity.
struct CoefficientModel {
    std::string name;
    std::size_t d = 1;
    std::size_t m = 1;
    VectorField drift;
    VectorField diffusion;
    double lipschitz_c = 0.0;
    double second_order_b = 0.0;
    ExactKind exact_kind = ExactKind::none;
    /// gbm: (lambda, xi); constant: (mu0, sigma0).
    std::vector<double> params;

    bool has_exact() const noexcept { return exact_kind != ExactKind::none; }

    std::vector<double> mu(std::span<const double> x) const;
    std::vector<double> sigma(std::span<const double> x) const;
};

CoefficientModel arctan_tan_model();
CoefficientModel gbm_model(double lambda, double xi);
/// mu = mu0 * (1,...,1), sigma = sigma0 * I_d (so m = d).
CoefficientModel constant_model(double mu0, double sigma0, std::size_t dim = 1);

/// Catalog lookup: "arctan_tan", "gbm" (lambda, xi; defaults 0.05, 0.2),
/// "constant" (mu0, sigma0; defaults 0.3, 0.7).
CoefficientModel builtin(std::string_view name, std::span<const double> params = {});

/// Sup of |f'| and |f''| over [lo, hi], by central differences on a dense grid.
struct DerivativeSups {
    double first = 0.0;
    double second = 0.0;
};
DerivativeSups derivative_sups(const std::function<double(double)>& f, double lo, double hi,
                               std::size_t points = 200001);

/// Constants (c, b) for a scalar C^2 coefficient pair from derivative sups:
/// c = max sup|f'|, b = 2 max sup|f''|, each raised by 1e-6 relative since
/// grid and difference estimates of a sup err low.
std::pair<double, double> second_order_constants(const DerivativeSups& drift, const DerivativeSups& diffusion);

/// Scalar model from two coefficient expressions in x (see expr.hpp).
/// c and b come from a grid search over [search_lo, search_hi].
CoefficientModel expression_model(const std::string& mu_source, const std::string& sigma_source,
                                  double search_lo = -10.0, double search_hi = 10.0);

/// Pathwise exact solution started at x, after elapsed time dt with Brownian
/// increment dw (size m) over that time. Throws ExactUnavailable.
void exact_solution(const CoefficientModel& model, std::span<const double> x, double dt,
                    std::span<const double> dw, std::span<double> out);

/// tan(x) clamped to |tan| <= 1e12, used by the arctan/tan closed form.
double clamped_tan(double x) noexcept;

/// Warning text when a start point is too close to a pole of tan.
std::optional<std::string> start_point_warning(const CoefficientModel& model, std::span<const double> x);

/// V(x) = (base + scale^2 |x|^2)^exponent and its first two directional
/// derivatives, with the growth constants
///   |DV(x)(y)|      <= 2 q s V(x)^{(2q-1)/(2q)} |y|
///   |D^2V(x)(y,z)|  <= 2 q (2q-1) s^2 V(x)^{(q-1)/q} |y||z|
/// for q = exponent, s = scale.
struct LyapunovSpec {
    double exponent = 1.0;
    double base = 1.0;
    double scale = 1.0;
    /// Moment order p the function was built for (V^{1/p} bounds the coefficients).
    double moment_order = 2.0;
    /// max{2pc, 4p^2c^2}, the constant for the drift/diffusion generator bound.
    double c_bar = 0.0;

    double value(std::span<const double> x) const;
    double first_derivative(std::span<const double> x, std::span<const double> y) const;
    double second_derivative(std::span<const double> x, std::span<const double> y,
                             std::span<const double> z) const;
    double first_constant() const noexcept { return 2.0 * exponent * scale; }
    double second_constant() const noexcept {
        return 2.0 * exponent * (2.0 * exponent - 1.0) * scale * scale;
    }
};

/// V(x) = 2^p (1 + (|mu(0)| + |sigma(0)|)^2 + c^2 |x|^2)^{p/2}, i.e. the
/// generic form with exponent p/2, base 4(1 + (|mu(0)|+|sigma(0)|)^2), scale 2c.
LyapunovSpec default_lyapunov(const CoefficientModel& model, double p);

/// One quadruple (x, y, x~, y~) for the second-order condition.
struct Quadruple {
    std::vector<double> x, y, x_tilde, y_tilde;
};

using QuadrupleSampler = std::function<Quadruple(std::uint64_t trial)>;

/// Mixed-scale random quadruples: x uniform in [lo, hi]^d, the other points
/// perturbed at scales 10^{-3}..1, sometimes with y~ - x~ close to y - x.
QuadrupleSampler default_quadruple_sampler(std::size_t d, double lo, double hi, std::uint64_t seed);

struct ConditionReport {
    double max_ratio = 0.0;
    Quadruple worst;
    std::size_t trials = 0;
    std::size_t violations = 0;
};

/// Floating-point slack for a computed second difference (a - b) - (c - d):
/// 16 eps (|a| + |b| + |c| + |d|), which covers the evaluation and
/// subtraction rounding of the four values.
double rounding_allowance(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                          std::span<const double> d);

/// lhs / rhs of the second-order condition for one quadruple, with the
/// rounding allowances of both sides taken off lhs first (0 when nothing
/// is left, +inf when rhs = 0 but lhs is not covered by rounding).
double condition_ratio(const CoefficientModel& model, const Quadruple& q);

ConditionReport verify_condition(const CoefficientModel& model, const QuadrupleSampler& sampler,
                                 std::size_t trials, double tolerance = 1e-9);

} // namespace holderem
