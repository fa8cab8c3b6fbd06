#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "holderem/errors.hpp"
#include "holderem/models.hpp"

using namespace holderem;

namespace {

double norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (double e : v) acc += e * e;
    return std::sqrt(acc);
}

// Analytic derivatives of the arctan/tan coefficients.
double mu1(double x) {
    const double s = std::sin(x), c = std::cos(x);
    return -c * c * c * c + 3.0 * s * s * c * c;
}
double mu2(double x) {
    const double s = std::sin(x), c = std::cos(x);
    return 10.0 * s * c * c * c - 6.0 * s * s * s * c;
}
double sigma1(double x) { return -std::sin(2.0 * x); }
double sigma2(double x) { return -2.0 * std::cos(2.0 * x); }

struct Sups {
    double mu1 = 0, mu2 = 0, sigma1 = 0, sigma2 = 0;
};

// Dense grid over one period [-pi/2, pi/2]; the coefficients are pi-periodic.
Sups arctan_sups() {
    Sups s;
    const std::size_t n = 2000001;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -std::numbers::pi / 2 + std::numbers::pi * static_cast<double>(i) / (n - 1);
        s.mu1 = std::max(s.mu1, std::abs(mu1(x)));
        s.mu2 = std::max(s.mu2, std::abs(mu2(x)));
        s.sigma1 = std::max(s.sigma1, std::abs(sigma1(x)));
        s.sigma2 = std::max(s.sigma2, std::abs(sigma2(x)));
    }
    return s;
}

} // namespace

TEST_CASE("builtin coefficients at the origin") {
    const auto m = builtin("arctan_tan");
    const std::vector<double> zero{0.0};
    CHECK(m.mu(zero)[0] == 0.0);
    CHECK(m.sigma(zero)[0] == 1.0);
    CHECK(m.has_exact());
    CHECK_THROWS_AS(builtin("nope"), InvalidArgument);
}

TEST_CASE("degenerate constant model stays at x") {
    const auto m = constant_model(0.0, 0.0);
    const std::vector<double> x{0.7}, dw{1.3};
    std::vector<double> out(1);
    exact_solution(m, x, 0.5, dw, out);
    CHECK(out[0] == 0.7);
}

TEST_CASE("gbm closed form without noise") {
    const auto m = gbm_model(0.05, 0.2);
    const std::vector<double> x{1.5}, dw{0.0};
    std::vector<double> out(1);
    for (double t : {0.0, 0.25, 1.0, 3.0}) {
        exact_solution(m, x, t, dw, out);
        CHECK(out[0] == doctest::Approx(1.5 * std::exp(0.03 * t)).epsilon(1e-15));
    }
    const auto quiet = gbm_model(0.4, 0.0);
    exact_solution(quiet, x, 2.0, std::vector<double>{5.0}, out);
    CHECK(out[0] == 1.5 * std::exp(0.8));
}

TEST_CASE("arctan/tan closed form and pole warning") {
    const auto m = arctan_tan_model();
    std::vector<double> out(1);
    for (double x : {-1.2, -0.3, 0.0, 0.9, 1.5}) {
        exact_solution(m, std::vector<double>{x}, 0.0, std::vector<double>{0.0}, out);
        CHECK(out[0] == doctest::Approx(x).epsilon(1e-15));
    }
    CHECK_FALSE(start_point_warning(m, std::vector<double>{1.0}));
    CHECK(start_point_warning(m, std::vector<double>{std::numbers::pi / 2}));
    CHECK(std::abs(clamped_tan(std::numbers::pi / 2)) <= 1e12);
}

TEST_CASE("default Lyapunov function values") {
    const auto arctan = arctan_tan_model();
    const auto v2 = default_lyapunov(arctan, 2.0);
    CHECK(v2.value(std::vector<double>{0.0}) == doctest::Approx(8.0).epsilon(1e-15));

    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(0.0, 3.0);
    for (const auto& model : {arctan, gbm_model(0.05, 0.2), constant_model(0.3, 0.7, 3)}) {
        for (double p : {2.0, 3.0, 4.0}) {
            const auto spec = default_lyapunov(model, p);
            const std::vector<double> origin(model.d, 0.0);
            const double a = norm(model.mu(origin)) + norm(model.sigma(origin));
            CHECK(spec.value(origin) == doctest::Approx(std::pow(2.0, p) * std::pow(1.0 + a * a, p / 2.0)));
            CHECK(spec.value(origin) >= std::pow(2.0, p));
            for (int i = 0; i < 100; ++i) {
                std::vector<double> x(model.d);
                for (double& e : x) e = gauss(rng);
                CHECK(a + model.lipschitz_c * norm(x) <= std::pow(spec.value(x), 1.0 / p));
            }
        }
    }
    CHECK_THROWS_AS(default_lyapunov(arctan, 1.5), InvalidArgument);
}

TEST_CASE("second-order condition holds for gbm over random quadruples") {
    const auto m = gbm_model(0.05, 0.2);
    const auto report = verify_condition(m, default_quadruple_sampler(1, -5.0, 5.0, 17), 10000);
    CHECK(report.trials == 10000);
    CHECK(report.violations == 0);
    CHECK(report.max_ratio <= 1.0 + 1e-9);
}

TEST_CASE("degenerate quadruple has ratio 0") {
    const auto m = arctan_tan_model();
    Quadruple q{{0.3}, {0.3}, {-1.1}, {-1.1}};
    CHECK(condition_ratio(m, q) == 0.0);
}

TEST_CASE("arctan/tan constants dominate the grid-searched derivative sups") {
    const Sups s = arctan_sups();
    CHECK(s.mu1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.sigma1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.sigma2 == doctest::Approx(2.0).epsilon(1e-9));
    const auto m = arctan_tan_model();
    const double c = std::max(s.mu1, s.sigma1);
    const double b = 2.0 * std::max(s.mu2, s.sigma2);
    CHECK(m.lipschitz_c >= c * (1.0 - 1e-12));
    CHECK(m.second_order_b >= b * (1.0 - 1e-12));
    CHECK(m.second_order_b <= b * (1.0 + 1e-6));

    CoefficientModel oracle = m;
    oracle.lipschitz_c = c;
    oracle.second_order_b = b;
    const auto report = verify_condition(oracle, default_quadruple_sampler(1, -3.0, 3.0, 23), 10000);
    CHECK(report.violations == 0);
    CHECK(report.max_ratio <= 1.0 + 1e-9);
}

TEST_CASE("derivative_sups matches analytic sups") {
    const auto sin_sups = derivative_sups([](double x) { return std::sin(x); }, -4.0, 4.0);
    CHECK(sin_sups.first == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(sin_sups.second == doctest::Approx(1.0).epsilon(1e-5));
    const auto cube = derivative_sups([](double x) { return x * x * x; }, -1.0, 2.0, 3001);
    CHECK(cube.first == doctest::Approx(12.0).epsilon(1e-8));
    CHECK(cube.second == doctest::Approx(12.0).epsilon(1e-8));
}

TEST_CASE("expression model agrees with the builtin coefficients") {
    const auto e = expression_model("-sin(x)*cos(x)^3", "cos(x)^2", -2.0, 2.0);
    const auto b = arctan_tan_model();
    CHECK(e.name == "expr");
    for (double x : {-1.7, -0.4, 0.0, 0.8, 1.9}) {
        const std::vector<double> v{x};
        CHECK(e.mu(v)[0] == doctest::Approx(b.mu(v)[0]).epsilon(1e-15));
        CHECK(e.sigma(v)[0] == doctest::Approx(b.sigma(v)[0]).epsilon(1e-15));
    }
    CHECK(e.lipschitz_c == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(e.second_order_b >= b.second_order_b * (1.0 - 1e-6));
    const auto report = verify_condition(e, default_quadruple_sampler(1, -2.0, 2.0, 29), 10000);
    CHECK(report.violations == 0);
    CHECK_THROWS_AS(expression_model("log(x)", "1", -1.0, 1.0), EvalError);
    CHECK_THROWS_AS(expression_model("sin(", "1"), ParseError);
}

TEST_CASE("Lyapunov derivative evaluators against Taylor remainder bounds") {
    LyapunovSpec spec;
    spec.exponent = 1.5;
    spec.base = 3.0;
    spec.scale = 0.7;
    std::mt19937_64 rng(9);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < 200; ++i) {
        std::vector<double> x(3), u(3);
        for (double& e : x) e = 2.0 * gauss(rng);
        for (double& e : u) e = gauss(rng);
        const double h = 1e-3;
        std::vector<double> xp(3), xm(3);
        for (int k = 0; k < 3; ++k) {
            xp[k] = x[k] + h * u[k];
            xm[k] = x[k] - h * u[k];
        }
        const double vx = spec.value(x), vp = spec.value(xp), vm = spec.value(xm);
        // Central difference error is h^2/6 |D^3 V| and the second difference
        // h^2/12 |D^4 V|; both are tiny relative to the derivative bounds.
        const double d1 = spec.first_derivative(x, u);
        const double d2 = spec.second_derivative(x, u, u);
        const double n2 = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        const double b1 = spec.first_constant() * std::pow(vx, (2 * spec.exponent - 1) / (2 * spec.exponent)) *
                          std::sqrt(n2);
        const double b2 = spec.second_constant() * std::pow(vx, (spec.exponent - 1) / spec.exponent) * n2;
        CHECK(std::abs((vp - vm) / (2 * h) - d1) <= 1e-5 * b1);
        CHECK(std::abs((vp - 2 * vx + vm) / (h * h) - d2) <= 1e-4 * b2);
        CHECK(std::abs(d1) <= b1 * (1 + 1e-12));
        CHECK(std::abs(d2) <= b2 * (1 + 1e-12));
    }
}
