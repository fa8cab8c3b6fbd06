#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "holderem/brownian.hpp"
#include "holderem/errors.hpp"
#include "holderem/estimators.hpp"
#include "holderem/euler.hpp"
#include "holderem/models.hpp"

using namespace holderem;

TEST_CASE("Euler is exact for constant coefficients") {
    const auto m = constant_model(0.3, 0.7);
    const auto lat = BrownianLattice::sample(4, 2, 256, 1.0, 1);
    const std::vector<double> x{0.4};
    for (std::size_t n : {1, 2, 16, 256}) {
        const auto p = Partition::uniform(n, 1.0);
        for (double s : {0.0, 0.25}) {
            const auto path = euler_path(m, p, s, x, lat);
            const auto exact = exact_path(m, s, x, lat);
            const std::size_t start = lat.index_of(s);
            for (std::size_t i = start; i <= 256; ++i) {
                const double w = lat.value_at_index(i)[0] - lat.value_at_index(start)[0];
                const double oracle = 0.4 + 0.3 * (lat.time(i) - s) + 0.7 * w;
                CHECK(std::abs(path.at_index(i)[0] - oracle) <= 1e-12);
                CHECK(std::abs(exact.at_index(i)[0] - oracle) <= 1e-12);
            }
        }
    }
}

TEST_CASE("zero dynamics keep the start point") {
    const auto m = constant_model(0.0, 0.0, 2);
    const auto lat = BrownianLattice::sample(1, 0, 64, 2.0, 2);
    const std::vector<double> x{1.25, -3.0};
    const auto path = euler_path(m, Partition::uniform(8, 2.0), 0.0, x, lat);
    for (std::size_t i = 0; i <= 64; ++i) {
        CHECK(path.at_index(i)[0] == 1.25);
        CHECK(path.at_index(i)[1] == -3.0);
    }
}

TEST_CASE("coarse-grid values equal the classical Euler recursion bitwise") {
    const auto models = {arctan_tan_model(), gbm_model(0.05, 0.2)};
    for (const auto& m : models) {
        const auto lat = BrownianLattice::sample(21, 5, 1024, 1.0, 1);
        for (std::size_t n : {1, 4, 32, 1024}) {
            const auto p = Partition::uniform(n, 1.0);
            const auto path = euler_path(m, p, 0.0, std::vector<double>{1.0}, lat);
            const auto dw = lat.coarsen(p);
            double y = 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double dt = p.point(k + 1) - p.point(k);
                const std::vector<double> state{y};
                y = y + m.mu(state)[0] * dt + (0.0 + m.sigma(state)[0] * dw[k]);
                CHECK(path.at(p.point(k + 1))[0] == y);
            }
        }
    }
}

TEST_CASE("restarting at a grid point continues the path bitwise") {
    const auto m = arctan_tan_model();
    const auto lat = BrownianLattice::sample(8, 1, 512, 1.0, 1);
    const auto p = Partition::uniform(16, 1.0);
    const auto full = euler_path(m, p, 0.0, std::vector<double>{0.5}, lat);
    for (double s : {0.25, 0.5, 0.9375}) {
        const auto v = full.at(s);
        const auto restarted = euler_path(m, p, s, v, lat);
        for (std::size_t i = lat.index_of(s); i <= 512; ++i) CHECK(restarted.at_index(i)[0] == full.at_index(i)[0]);
    }
}

TEST_CASE("exact path starts at x and gbm without noise is deterministic") {
    const auto lat = BrownianLattice::sample(3, 0, 128, 1.0, 1);
    const auto a = exact_path(arctan_tan_model(), 0.0, std::vector<double>{0.8}, lat);
    CHECK(a.at(0.0)[0] == doctest::Approx(0.8).epsilon(1e-15));
    const auto g = exact_path(gbm_model(0.1, 0.0), 0.0, std::vector<double>{2.0}, lat);
    for (std::size_t i = 0; i <= 128; ++i) CHECK(g.at_index(i)[0] == 2.0 * std::exp(0.1 * lat.time(i)));
    CoefficientModel none = arctan_tan_model();
    none.exact_kind = ExactKind::none;
    CHECK_THROWS_AS(exact_path(none, 0.0, std::vector<double>{0.0}, lat), ExactUnavailable);
}

TEST_CASE("partition and start time alignment errors") {
    const auto m = arctan_tan_model();
    const auto lat = BrownianLattice::sample(3, 0, 16, 1.0, 1);
    const std::vector<double> x{0.0};
    CHECK_THROWS_AS(euler_path(m, Partition::uniform(3, 1.0), 0.0, x, lat), AlignmentError);
    CHECK_THROWS_AS(euler_path(m, Partition::uniform(4, 1.0), 0.1, x, lat), AlignmentError);
    CHECK_THROWS_AS(euler_path(m, Partition::identity(1.0), 0.0, x, lat), InvalidArgument);
}

TEST_CASE("non-finite values mark the path diverged") {
    CoefficientModel m = constant_model(0.0, 1.0);
    m.exact_kind = ExactKind::none;
    m.drift = [](std::span<const double> x, std::span<double> out) { out[0] = x[0] > 0.5 ? std::numeric_limits<double>::infinity() : 0.0; };
    const auto lat = BrownianLattice::sample(3, 0, 16, 1.0, 1);
    const auto path = euler_path(m, Partition::uniform(16, 1.0), 0.0, std::vector<double>{1.0}, lat);
    CHECK(path.diverged());
    const auto fine = euler_path(constant_model(0.0, 1.0), Partition::uniform(16, 1.0), 0.0, std::vector<double>{1.0}, lat);
    CHECK_FALSE(fine.diverged());
}

TEST_CASE("coupled endpoints") {
    const auto m = arctan_tan_model();
    const auto lat = BrownianLattice::sample(12, 7, 256, 1.0, 1);
    const std::vector<Partition> one{Partition::uniform(8, 1.0)};
    const std::vector<StartPoint> same{{0.0, {0.4}}, {0.0, {0.4}}};
    const auto e = coupled_endpoints(m, one, same, lat, 1.0);
    CHECK(e.at(0, 0)[0] == e.at(0, 1)[0]);

    const std::vector<Partition> two{Partition::uniform(8, 1.0), Partition::uniform(8, 1.0)};
    const std::vector<StartPoint> xy{{0.0, {0.4}}, {0.0, {0.9}}};
    const auto f = coupled_endpoints(m, two, xy, lat, 0.75);
    const double px = euler_path(m, Partition::uniform(8, 1.0), 0.0, std::vector<double>{0.4}, lat).at(0.75)[0];
    const double py = euler_path(m, Partition::uniform(8, 1.0), 0.0, std::vector<double>{0.9}, lat).at(0.75)[0];
    CHECK(f.at(0, 0)[0] - f.at(0, 1)[0] == px - py);
    CHECK(f.at(1, 0)[0] - f.at(1, 1)[0] == px - py);

    const auto c = constant_model(0.3, 0.7);
    const std::vector<Partition> grids{Partition::identity(1.0), Partition::uniform(4, 1.0)};
    const std::vector<StartPoint> starts{{0.0, {1.0}}, {0.0, {1.3}}};
    const auto g = coupled_endpoints(c, grids, starts, lat, 1.0);
    const double four = (g.at(0, 0)[0] - g.at(1, 0)[0]) - (g.at(0, 1)[0] - g.at(1, 1)[0]);
    CHECK(std::abs(four) <= 1e-12);
    CHECK_THROWS_AS(coupled_endpoints(m, one, std::vector<StartPoint>{{0.5, {0.0}}}, lat, 0.25), InvalidArgument);
}

TEST_CASE("arctan/tan Euler on the finest grid against the closed form") {
    const auto m = arctan_tan_model();
    const std::vector<double> x{1.0};
    // Calibrate C from e_n sqrt(n) on coarser grids, then check n = 2^16.
    double c = 0.0;
    McOptions opts;
    opts.seed = 99;
    for (std::size_t n : {16, 64, 256, 1024}) {
        const auto st = two_point_stat(m, n, x, 2.0, 1000, opts);
        c = std::max(c, st.estimate * std::sqrt(static_cast<double>(n)));
    }
    const std::size_t fine = std::size_t{1} << 16;
    std::vector<double> norms;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const auto lat = BrownianLattice::sample(7, i, fine, 1.0, 1);
        const double y = euler_path(m, Partition::uniform(fine, 1.0), 0.0, x, lat).terminal()[0];
        const double exact = std::atan(lat.value_at_index(fine)[0] + std::tan(1.0));
        norms.push_back(std::abs(y - exact));
    }
    const auto st = lp_from_norms(norms, 2.0);
    CHECK(st.estimate <= c * std::ldexp(1.0, -8) + 3.0 * st.std_error);
    CHECK(st.estimate > 0.0);
}
