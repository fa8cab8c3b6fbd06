#include "holderem/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "holderem/brownian.hpp"
#include "holderem/errors.hpp"
#include "holderem/expr.hpp"

namespace holderem {

namespace {

// sup |d^2/dx^2 (-sin x cos^3 x)|, attained near x = 2.7082546.
constexpr double kArctanTanDriftCurvature = 2.735815104064221;

constexpr double kTanClamp = 1e12;
constexpr double kPoleMargin = 1e-6;

double norm2(std::span<const double> v) {
    double acc = 0.0;
    for (double e : v) acc += e * e;
    return std::sqrt(acc);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double diff_norm(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc);
}

// |(a-b) - (c-d)|
double second_diff_norm(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                        std::span<const double> d) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double v = (a[i] - b[i]) - (c[i] - d[i]);
        acc += v * v;
    }
    return std::sqrt(acc);
}

// b * rest with 0 * inf = 0.
double times_b(double b, double rest) { return rest == 0.0 ? 0.0 : b * rest; }

} // namespace

double rounding_allowance(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                          std::span<const double> d) {
    constexpr double kUnits = 16.0 * std::numeric_limits<double>::epsilon();
    return kUnits * (norm2(a) + norm2(b) + norm2(c) + norm2(d));
}


std::vector<double> CoefficientModel::mu(std::span<const double> x) const {
    std::vector<double> out(d);
    drift(x, out);
    return out;
}

std::vector<double> CoefficientModel::sigma(std::span<const double> x) const {
    std::vector<double> out(d * m);
    diffusion(x, out);
    return out;
}

CoefficientModel arctan_tan_model() {
    CoefficientModel model;
    model.name = "arctan_tan";
    model.drift = [](std::span<const double> x, std::span<double> out) {
        const double c = std::cos(x[0]);
        out[0] = -std::sin(x[0]) * (c * c * c);
    };
    model.diffusion = [](std::span<const double> x, std::span<double> out) {
        const double c = std::cos(x[0]);
        out[0] = c * c;
    };
    // sup|mu'| = sup|sigma'| = 1; sup|mu''| ~ 2.7358 > sup|sigma''| = 2.
    model.lipschitz_c = 1.0;
    model.second_order_b = 2.0 * kArctanTanDriftCurvature;
    model.exact_kind = ExactKind::arctan_tan;
    return model;
}

CoefficientModel gbm_model(double lambda, double xi) {
    CoefficientModel model;
    model.name = "gbm";
    model.drift = [lambda](std::span<const double> x, std::span<double> out) { out[0] = lambda * x[0]; };
    model.diffusion = [xi](std::span<const double> x, std::span<double> out) { out[0] = xi * x[0]; };
    // Linear coefficients: the difference of differences is exactly linear.
    model.lipschitz_c = std::max(std::abs(lambda), std::abs(xi));
    model.second_order_b = 0.0;
    model.exact_kind = ExactKind::gbm;
    model.params = {lambda, xi};
    return model;
}

CoefficientModel constant_model(double mu0, double sigma0, std::size_t dim) {
    if (dim == 0) throw InvalidArgument("constant model needs dimension >= 1");
    CoefficientModel model;
    model.name = "constant";
    model.d = dim;
    model.m = dim;
    model.drift = [mu0](std::span<const double>, std::span<double> out) { std::fill(out.begin(), out.end(), mu0); };
    model.diffusion = [sigma0, dim](std::span<const double>, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t i = 0; i < dim; ++i) out[i * dim + i] = sigma0;
    };
    model.lipschitz_c = 0.0;
    model.second_order_b = 0.0;
    model.exact_kind = ExactKind::constant;
    model.params = {mu0, sigma0};
    return model;
}

CoefficientModel builtin(std::string_view name, std::span<const double> params) {
    auto param = [&](std::size_t i, double fallback) { return i < params.size() ? params[i] : fallback; };
    if (name == "arctan_tan") {
        if (!params.empty()) throw InvalidArgument("arctan_tan takes no parameters");
        return arctan_tan_model();
    }
    if (name == "gbm") {
        if (params.size() > 2) throw InvalidArgument("gbm takes (lambda, xi)");
        return gbm_model(param(0, 0.05), param(1, 0.2));
    }
    if (name == "constant") {
        if (params.size() > 2) throw InvalidArgument("constant takes (mu0, sigma0)");
        return constant_model(param(0, 0.3), param(1, 0.7));
    }
    throw InvalidArgument("unknown builtin model '" + std::string(name) + "'");
}

DerivativeSups derivative_sups(const std::function<double(double)>& f, double lo, double hi, std::size_t points) {
    if (!(hi > lo) || points < 2) throw InvalidArgument("derivative_sups needs hi > lo and >= 2 points");
    DerivativeSups sups;
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double x = lo + step * static_cast<double>(i);
        const double h1 = 1e-5 * std::max(1.0, std::abs(x));
        const double h2 = 1e-3 * std::max(1.0, std::abs(x));
        const double d1 = (f(x + h1) - f(x - h1)) / (2.0 * h1);
        const double d2 = (f(x + h2) - 2.0 * f(x) + f(x - h2)) / (h2 * h2);
        if (!std::isfinite(d1) || !std::isfinite(d2)) {
            throw EvalError("coefficient derivative not finite near x = " + std::to_string(x));
        }
        sups.first = std::max(sups.first, std::abs(d1));
        sups.second = std::max(sups.second, std::abs(d2));
    }
    return sups;
}

std::pair<double, double> second_order_constants(const DerivativeSups& drift, const DerivativeSups& diffusion) {
    constexpr double kMargin = 1.0 + 1e-6;
    const double c = kMargin * std::max(drift.first, diffusion.first);
    const double b = kMargin * 2.0 * std::max(drift.second, diffusion.second);
    return {c, b};
}

CoefficientModel expression_model(const std::string& mu_source, const std::string& sigma_source, double search_lo,
                                  double search_hi) {
    const Expr mu = parse(mu_source);
    const Expr sigma = parse(sigma_source);
    CoefficientModel model;
    model.name = "expr";
    model.drift = [mu](std::span<const double> x, std::span<double> out) { out[0] = mu.evaluate(x[0]); };
    model.diffusion = [sigma](std::span<const double> x, std::span<double> out) { out[0] = sigma.evaluate(x[0]); };
    const auto mu_sups = derivative_sups([&](double x) { return mu.evaluate(x); }, search_lo, search_hi);
    const auto sigma_sups = derivative_sups([&](double x) { return sigma.evaluate(x); }, search_lo, search_hi);
    std::tie(model.lipschitz_c, model.second_order_b) = second_order_constants(mu_sups, sigma_sups);
    model.exact_kind = ExactKind::none;
    return model;
}

double clamped_tan(double x) noexcept { return std::clamp(std::tan(x), -kTanClamp, kTanClamp); }

void exact_solution(const CoefficientModel& model, std::span<const double> x, double dt, std::span<const double> dw,
                    std::span<double> out) {
    switch (model.exact_kind) {
    case ExactKind::arctan_tan: out[0] = std::atan(dw[0] + clamped_tan(x[0])); return;
    case ExactKind::gbm: {
        const double lambda = model.params[0];
        const double xi = model.params[1];
        out[0] = x[0] * std::exp((lambda - 0.5 * xi * xi) * dt + xi * dw[0]);
        return;
    }
    case ExactKind::constant: {
        const double mu0 = model.params[0];
        const double sigma0 = model.params[1];
        for (std::size_t i = 0; i < model.d; ++i) out[i] = x[i] + mu0 * dt + sigma0 * dw[i];
        return;
    }
    case ExactKind::none: break;
    }
    throw ExactUnavailable("model '" + model.name + "' has no closed-form solution");
}

std::optional<std::string> start_point_warning(const CoefficientModel& model, std::span<const double> x) {
    if (model.exact_kind != ExactKind::arctan_tan) return std::nullopt;
    const double k = std::nearbyint(x[0] / std::numbers::pi);
    const double offset = std::abs(x[0] - k * std::numbers::pi);
    if (offset < std::numbers::pi / 2 - kPoleMargin) return std::nullopt;
    return "start point " + std::to_string(x[0]) + " is within 1e-6 of a pole of tan; tan is clamped to 1e12";
}

double LyapunovSpec::value(std::span<const double> x) const {
    const double r = base + scale * scale * dot(x, x);
    return std::pow(r, exponent);
}

double LyapunovSpec::first_derivative(std::span<const double> x, std::span<const double> y) const {
    const double r = base + scale * scale * dot(x, x);
    return exponent * std::pow(r, exponent - 1.0) * 2.0 * scale * scale * dot(x, y);
}

double LyapunovSpec::second_derivative(std::span<const double> x, std::span<const double> y,
                                       std::span<const double> z) const {
    const double s2 = scale * scale;
    const double r = base + s2 * dot(x, x);
    const double cross = exponent * (exponent - 1.0) * std::pow(r, exponent - 2.0) * 4.0 * s2 * s2 * dot(x, y) * dot(x, z);
    const double diag = 2.0 * exponent * s2 * std::pow(r, exponent - 1.0) * dot(y, z);
    return cross + diag;
}

LyapunovSpec default_lyapunov(const CoefficientModel& model, double p) {
    if (!(p >= 2.0)) throw InvalidArgument("default Lyapunov function needs p >= 2");
    const std::vector<double> origin(model.d, 0.0);
    const double a = norm2(model.mu(origin)) + norm2(model.sigma(origin));
    const double c = model.lipschitz_c;
    LyapunovSpec spec;
    spec.exponent = p / 2.0;
    spec.base = 4.0 * (1.0 + a * a);
    spec.scale = 2.0 * c;
    spec.moment_order = p;
    spec.c_bar = std::max(2.0 * p * c, 4.0 * p * p * c * c);
    return spec;
}

QuadrupleSampler default_quadruple_sampler(std::size_t d, double lo, double hi, std::uint64_t seed) {
    return [=](std::uint64_t trial) {
        std::uint64_t draw = 0;
        auto u = [&] { return uniform_open01(seed, trial, draw++); };
        auto g = [&] { return standard_normal(seed, trial, draw++); };
        const double scale = std::pow(10.0, -3.0 + 3.0 * u());
        const double mode = u();
        const double eps = mode < 0.25 ? 0.0 : (mode < 0.5 ? 0.01 : (mode < 0.75 ? 0.1 : 1.0));
        Quadruple q;
        q.x.resize(d);
        q.y.resize(d);
        q.x_tilde.resize(d);
        q.y_tilde.resize(d);
        for (std::size_t i = 0; i < d; ++i) {
            q.x[i] = lo + (hi - lo) * u();
            q.y[i] = q.x[i] + scale * g();
            q.x_tilde[i] = q.x[i] + scale * g();
            q.y_tilde[i] = q.x_tilde[i] + (q.y[i] - q.x[i]) + eps * scale * g();
        }
        return q;
    };
}

double condition_ratio(const CoefficientModel& model, const Quadruple& q) {
    const auto mx = model.mu(q.x), my = model.mu(q.y), mxt = model.mu(q.x_tilde), myt = model.mu(q.y_tilde);
    const auto sx = model.sigma(q.x), sy = model.sigma(q.y), sxt = model.sigma(q.x_tilde),
               syt = model.sigma(q.y_tilde);
    const double lhs = std::max(second_diff_norm(mx, my, mxt, myt) - rounding_allowance(mx, my, mxt, myt),
                                second_diff_norm(sx, sy, sxt, syt) - rounding_allowance(sx, sy, sxt, syt)) -
                       model.lipschitz_c * rounding_allowance(q.x, q.y, q.x_tilde, q.y_tilde);
    const double rhs = model.lipschitz_c * second_diff_norm(q.x, q.y, q.x_tilde, q.y_tilde) +
                       times_b(model.second_order_b,
                               0.5 * (diff_norm(q.x, q.y) + diff_norm(q.x_tilde, q.y_tilde)) * diff_norm(q.x, q.x_tilde));
    if (lhs <= 0.0) return 0.0;
    if (rhs == 0.0) return std::numeric_limits<double>::infinity();
    return lhs / rhs;
}

ConditionReport verify_condition(const CoefficientModel& model, const QuadrupleSampler& sampler, std::size_t trials,
                                 double tolerance) {
    if (trials == 0) throw InvalidArgument("verify_condition needs trials >= 1");
    ConditionReport report;
    report.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        Quadruple q = sampler(t);
        const double r = condition_ratio(model, q);
        if (r > 1.0 + tolerance) ++report.violations;
        if (r > report.max_ratio || t == 0) {
            report.max_ratio = r;
            report.worst = std::move(q);
        }
    }
    return report;
}

} // namespace holderem
